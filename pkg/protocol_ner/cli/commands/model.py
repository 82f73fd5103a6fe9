"""
Tagger commands: train, tag.
"""

from pathlib import Path
from typing import Optional
import logging

import click

from ...core.errors import SplitError
from ...corpus.conll import write_conll
from ...corpus.io import corpus_conll_sentences, load_corpus, with_predictions
from ...corpus.split import SplitSpec
from ...tagger import load_model, predict, save_model, train as train_tagger
from ...utils.jsonio import load_json
from ..context import CliContext, pass_cli
from .corpus import input_format_option

logger = logging.getLogger(__name__)


@click.command("train")
@click.argument("corpus_path", type=click.Path(exists=True, path_type=Path))
@click.option("--model", "model_path", type=click.Path(dir_okay=False, path_type=Path), help="Model file to write.")
@click.option(
    "--split",
    "split_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Split JSON; train on its train side, stop early on its validation side.",
)
@click.option(
    "--validation",
    "validation_path",
    type=click.Path(exists=True, path_type=Path),
    help="Separate validation corpus for early stopping.",
)
@click.option("--max-epochs", type=int, default=None)
@click.option("--patience", type=int, default=None)
@click.option("--window", type=int, default=None)
@click.option("--enforce-bio/--no-enforce-bio", default=None)
@input_format_option
@pass_cli
def train(
    state: CliContext,
    corpus_path: Path,
    model_path: Optional[Path],
    split_path: Optional[Path],
    validation_path: Optional[Path],
    max_epochs: Optional[int],
    patience: Optional[int],
    window: Optional[int],
    enforce_bio: Optional[bool],
    input_format: str,
):
    """Train a tagger on CORPUS_PATH and save it as JSON."""
    model_path = state.output_path(model_path)
    if model_path is None:
        raise click.UsageError("give --model or the global --out")
    config = state.configure(
        "tagger",
        max_epochs=max_epochs,
        patience=patience,
        window=window,
        enforce_bio=enforce_bio,
        seed=state.seed,
    )
    corpus = load_corpus(corpus_path, input_format, config.alignment)
    validation = None
    if split_path is not None:
        try:
            spec = SplitSpec.from_dict(load_json(split_path))
        except ValueError as e:
            raise SplitError(f"{split_path}: not a JSON split file: {e}") from e
        validation = corpus.subset(spec.validation_ids)
        corpus = corpus.subset(spec.train_ids)
    elif validation_path is not None:
        validation = load_corpus(validation_path, input_format, config.alignment)

    model = train_tagger(corpus, config.tagger, validation=validation)
    save_model(model, model_path)
    history = model.history
    best = max((record.validation_f1 for record in history), default=0.0)
    click.echo(f"trained {len(history)} epochs, best validation F1 {best:.4f}, model at {model_path}", err=True)


@click.command("tag")
@click.argument("model_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument("corpus_path", type=click.Path(exists=True, path_type=Path))
@click.option("--output", type=click.Path(path_type=Path), help="CoNLL file to write (default: stdout).")
@input_format_option
@pass_cli
def tag(state: CliContext, model_path: Path, corpus_path: Path, output: Optional[Path], input_format: str):
    """Tag every sentence of CORPUS_PATH with the model at MODEL_PATH."""
    model = load_model(model_path)
    corpus = load_corpus(corpus_path, input_format, state.config.alignment)
    tagged = with_predictions(corpus, predict(model, corpus))
    text = write_conll(corpus_conll_sentences(tagged))
    output = state.output_path(output)
    if output is None:
        click.echo(text, nl=False)
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    with open(output, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    logger.info(f"tagged {len(tagged.all_sentences())} sentences into {output}")


COMMANDS = [train, tag]
