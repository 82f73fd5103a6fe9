"""
Ensemble and scoring commands: merge, eval, pipeline.
"""

from pathlib import Path
from typing import Optional, Tuple
import logging

import click

from ...core.pipeline import run_pipeline
from ...corpus.conll import read_conll_file
from ...corpus.io import FORMATS, detect_format, load_corpus, project_predictions
from ...ensemble import check_aligned, get_registry, merge_files
from ...eval import MatchCriterion, MatchStrategy, score_corpora, token_confusions
from ...eval.scoring import reports_to_dict
from ...report import render_confusions, render_pipeline, render_scores
from ...tagscheme import LabelAlphabet
from ..context import CliContext, pass_cli
from .corpus import input_format_option

logger = logging.getLogger(__name__)


def _label_alphabet(labels: str) -> LabelAlphabet:
    names = [name.strip() for name in labels.split(",") if name.strip()]
    if not names:
        raise click.BadParameter("no labels given", param_hint="--labels")
    return LabelAlphabet.closed(f"B-{name}" for name in names)


@click.command("merge")
@click.argument("predictions", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--method", required=True, help="Merge method: majv, sle or a plugin name.")
@click.option("--output", type=click.Path(dir_okay=False, path_type=Path), help="Merged CoNLL file.")
@click.option("--sidecar", type=click.Path(dir_okay=False, path_type=Path), help="Per-sentence JSON (default: OUTPUT with .json).")
@click.option(
    "--gold",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="CoNLL file the predictions must align with.",
)
@click.option(
    "--labels",
    help="Comma-separated entity labels fixing the tag set (default: tags seen in the inputs).",
)
@pass_cli
def merge(
    state: CliContext,
    predictions: Tuple[Path, ...],
    method: str,
    output: Optional[Path],
    sidecar: Optional[Path],
    gold: Optional[Path],
    labels: Optional[str],
):
    """Merge the CoNLL PREDICTIONS of several taggers into one."""
    output = state.output_path(output)
    if output is None:
        raise click.UsageError("give --output or the global --out")
    merger = get_registry().get_merger(method)
    if gold is not None:
        check_aligned([read_conll_file(gold)] + [read_conll_file(p) for p in predictions])
    alphabet = _label_alphabet(labels) if labels is not None else None
    result = merge_files(list(predictions), merger, output, sidecar, alphabet)
    click.echo(
        f"merged {len(predictions)} files with {result.method}: "
        f"{len(result.sentences)} sentences, {result.repairs} BIO repairs",
        err=True,
    )


@click.command("eval")
@click.argument("gold_path", type=click.Path(exists=True, path_type=Path))
@click.argument("pred_path", type=click.Path(exists=True, path_type=Path))
@click.option(
    "--criterion",
    type=click.Choice(["exact", "partial", "both"]),
    default="both",
    show_default=True,
)
@click.option(
    "--matching",
    type=click.Choice([s.value for s in MatchStrategy]),
    default=MatchStrategy.GREEDY.value,
    show_default=True,
    help="One-to-one matching strategy.",
)
@click.option("--confusions", "top_k", type=click.IntRange(min=1), default=None, help="Add the top-K token confusions.")
@click.option("--gold-format", type=click.Choice(FORMATS), default="auto", show_default=True)
@click.option("--pred-format", type=click.Choice(FORMATS), default="auto", show_default=True)
@pass_cli
def evaluate(
    state: CliContext,
    gold_path: Path,
    pred_path: Path,
    criterion: str,
    matching: str,
    top_k: Optional[int],
    gold_format: str,
    pred_format: str,
):
    """Score PRED_PATH against GOLD_PATH at span level."""
    alignment = state.config.alignment
    gold_format = detect_format(gold_path) if gold_format == "auto" else gold_format
    pred_format = detect_format(pred_path) if pred_format == "auto" else pred_format
    gold = load_corpus(gold_path, gold_format, alignment)
    predicted = load_corpus(pred_path, pred_format, alignment)
    if gold_format != pred_format or set(gold.doc_ids) != set(predicted.doc_ids):
        predicted = project_predictions(gold, predicted)

    criteria = [MatchCriterion.EXACT, MatchCriterion.PARTIAL]
    if criterion != "both":
        criteria = [MatchCriterion(criterion)]
    reports = score_corpora(predicted, gold, criteria, MatchStrategy(matching))
    data = {"scores": reports_to_dict(reports), "matching": matching}

    table = None
    if top_k is not None:
        gold_tags = [list(s.tags) for s in gold.iter_sentences()]
        pred_tags = [list(s.tags) for s in predicted.iter_sentences(gold.doc_ids)]
        table = token_confusions(pred_tags, gold_tags)
        data["confusions"] = table.to_dict(top_k)

    def text() -> str:
        rendered = render_scores(reports)
        if table is not None:
            rendered += "\n" + render_confusions(table, top_k)
        return rendered

    state.emit(data, text, state.output_path(None))


@click.command("pipeline")
@click.argument("train_path", type=click.Path(exists=True, path_type=Path))
@click.argument("test_path", type=click.Path(exists=True, path_type=Path))
@click.option("--n-models", type=int, default=None, help="Number of base models (default 11).")
@click.option("--fraction", type=float, default=None, help="Training share of every split.")
@click.option("--methods", default=None, help="Comma-separated merge methods (default majv,sle).")
@click.option("--max-workers", type=int, default=None, help="Models trained in parallel.")
@click.option("--max-epochs", type=int, default=None)
@click.option("--patience", type=int, default=None)
@input_format_option
@pass_cli
def pipeline(
    state: CliContext,
    train_path: Path,
    test_path: Path,
    n_models: Optional[int],
    fraction: Optional[float],
    methods: Optional[str],
    max_workers: Optional[int],
    max_epochs: Optional[int],
    patience: Optional[int],
    input_format: str,
):
    """Split, train, tag, merge and score; artifacts go to the global --out."""
    if state.out is None:
        raise click.UsageError("pipeline needs the global --out directory")
    state.configure("tagger", max_epochs=max_epochs, patience=patience)
    config = state.configure(
        "pipeline",
        n_models=n_models,
        train_fraction=fraction,
        methods=methods,
        max_workers=max_workers,
        seed_base=state.seed,
    )
    train_corpus = load_corpus(train_path, input_format, config.alignment)
    test_corpus = load_corpus(test_path, input_format, config.alignment)
    report = run_pipeline(train_corpus, test_corpus, state.out, config.pipeline, config.tagger)
    state.emit(report, lambda: render_pipeline(report))


COMMANDS = [merge, evaluate, pipeline]
