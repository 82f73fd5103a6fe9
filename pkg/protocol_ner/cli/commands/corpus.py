"""
Corpus commands: convert, stats, split, synth.
"""

from pathlib import Path
from typing import Optional, Tuple
import logging

import click

from ...corpus.io import (
    FORMATS,
    detect_format,
    load_corpus,
    read_standoff_corpus,
    write_corpus_conll,
    write_corpus_standoff,
)
from ...corpus.split import generate_splits
from ...corpus.stats import corpus_stats
from ...corpus.synthetic import separable_sentences, write_synthetic_corpus
from ...corpus.conll import write_conll_file
from ...report import render_stats
from ..context import CliContext, pass_cli

logger = logging.getLogger(__name__)

input_format_option = click.option(
    "--input-format",
    type=click.Choice(FORMATS),
    default="auto",
    show_default=True,
    help="Layout of the input corpus.",
)


def alignment_options(func):
    func = click.option("--snap/--no-snap", default=None, help="Snap mention boundaries to tokens.")(func)
    func = click.option(
        "--allow-overlap/--no-allow-overlap", default=None, help="Keep overlapping mentions."
    )(func)
    return func


@click.command("convert")
@click.argument("source", type=click.Path(exists=True, path_type=Path))
@click.argument("target", type=click.Path(path_type=Path))
@click.option("--to", "target_format", type=click.Choice(["conll", "standoff"]), required=True)
@click.option(
    "--text-dir",
    type=click.Path(exists=True, file_okay=False, path_type=Path),
    help="Original .txt files to anchor CoNLL tokens on.",
)
@input_format_option
@alignment_options
@pass_cli
def convert(
    state: CliContext,
    source: Path,
    target: Path,
    target_format: str,
    text_dir: Optional[Path],
    input_format: str,
    snap: Optional[bool],
    allow_overlap: Optional[bool],
):
    """Convert SOURCE between CoNLL and standoff, writing TARGET.

    A TARGET ending in .conll receives a single CoNLL file; otherwise a
    directory is written.
    """
    config = state.configure("alignment", snap=snap, allow_overlap=allow_overlap)
    fmt = detect_format(source) if input_format == "auto" else input_format
    if fmt == "standoff" and target_format == "standoff":
        corpus = read_standoff_corpus(source, config.alignment, tag=False)
    else:
        corpus = load_corpus(source, fmt, config.alignment, text_dir=text_dir)
    if target_format == "conll":
        write_corpus_conll(corpus, target)
    else:
        write_corpus_standoff(corpus, target)
    logger.info(f"converted {len(corpus)} documents from {fmt} to {target_format}")


@click.command("stats")
@click.argument("corpus_path", type=click.Path(exists=True, path_type=Path))
@click.option(
    "--reference",
    "references",
    multiple=True,
    type=click.Path(exists=True, path_type=Path),
    help="Corpus defining the known vocabulary; repeat for a union.",
)
@input_format_option
@pass_cli
def stats(state: CliContext, corpus_path: Path, references: Tuple[Path, ...], input_format: str):
    """Entity, sentence and vocabulary statistics of CORPUS_PATH."""
    alignment = state.config.alignment
    corpus = load_corpus(corpus_path, input_format, alignment)
    reference = [load_corpus(path, input_format, alignment) for path in references] or None
    report = corpus_stats(corpus, reference)
    state.emit(report.to_dict(), lambda: render_stats(report), state.output_path(None))


@click.command("split")
@click.argument("corpus_path", type=click.Path(exists=True, path_type=Path))
@click.option("--fraction", type=float, default=None, help="Training share (default: pipeline.train_fraction).")
@click.option("--count", type=click.IntRange(min=1), default=1, show_default=True, help="Number of splits.")
@input_format_option
@pass_cli
def split(state: CliContext, corpus_path: Path, fraction: Optional[float], count: int, input_format: str):
    """Seeded train/validation split(s) of the documents in CORPUS_PATH.

    Split i uses seed --seed + i (0-based). With --out and --count > 1,
    --out is a directory receiving split_XX.json files.
    """
    config = state.configure("pipeline", train_fraction=fraction)
    corpus = load_corpus(corpus_path, input_format, config.alignment)
    base = state.seed if state.seed is not None else config.pipeline.seed_base
    splits, collisions = generate_splits(
        corpus.doc_ids, [base + i for i in range(count)], config.pipeline.train_fraction
    )
    if count == 1:
        state.emit(splits[0].to_dict(), path=state.out)
        return
    if state.out is not None:
        for i, spec in enumerate(splits, start=1):
            state.emit(spec.to_dict(), path=state.out / f"split_{i:02d}.json")
        return
    state.emit(
        {
            "splits": [spec.to_dict() for spec in splits],
            "collisions": [list(pair) for pair in collisions],
        }
    )


@click.command("synth")
@click.argument("target", type=click.Path(path_type=Path))
@click.option("--docs", type=click.IntRange(min=1), default=20, show_default=True, help="Protocols to generate.")
@click.option(
    "--separable",
    type=click.IntRange(min=1),
    default=None,
    help="Instead write this many separable CoNLL sentences to TARGET.",
)
@pass_cli
def synth(state: CliContext, target: Path, docs: int, separable: Optional[int]):
    """Generate a synthetic corpus at TARGET."""
    seed = state.seed if state.seed is not None else 0
    if separable is not None:
        write_conll_file(target, separable_sentences(separable, seed))
        logger.info(f"wrote {separable} separable sentences to {target}")
        return
    write_synthetic_corpus(target, docs, seed)


COMMANDS = [convert, stats, split, synth]
