"""
Protocol NER - Ensemble Pipeline

For i = 1..n_models: split the training corpus with seed seed_base + i,
train a tagger on the training side (early stopping on the validation
side) and tag the test corpus. The first n predictions are then merged
with every requested method for n = 3, 5, 7, ... up to n_models, and
every individual and merged prediction is scored under both criteria.

Artifacts written under the output directory::

    splits/split_XX.json        models/model_XX.json
    predictions/model_XX.conll  merged/<method>_nXX.conll (+ .json sidecar)
    report.json
"""

from concurrent.futures import ProcessPoolExecutor, as_completed
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union
import logging
import statistics

from ..config.manager import PipelineSettings
from ..corpus.conll import ConllSentence, write_conll_file
from ..corpus.io import with_predictions
from ..corpus.models import AnnotatedCorpus
from ..corpus.split import SplitSpec, generate_splits
from ..ensemble import PredictionSet, check_support, get_merger, merge_corpus
from ..eval import MatchCriterion, ScoreReport, score_corpora
from ..tagger import TaggerModel, TrainConfig, predict, save_model, train
from ..tagscheme import LabelAlphabet, is_valid_bio
from ..utils.jsonio import dump_json
from .errors import InvariantViolation, PipelineStageError, ProtocolNerError

logger = logging.getLogger(__name__)

CRITERIA = (MatchCriterion.EXACT, MatchCriterion.PARTIAL)


@dataclass
class ModelRun:
    index: int
    split: SplitSpec
    model: TaggerModel
    predictions: List[List[str]]
    scores: Dict[str, ScoreReport] = field(default_factory=dict)


def ensemble_sizes(n_models: int) -> List[int]:
    """Odd sizes 3, 5, ... up to n_models, plus n_models itself."""
    if n_models < 3:
        return [n_models]
    sizes = list(range(3, n_models + 1, 2))
    if sizes[-1] != n_models:
        sizes.append(n_models)
    return sizes


def _micro(reports: Dict[str, ScoreReport]) -> Dict[str, Dict[str, float]]:
    return {
        name: {
            "precision": report.micro.precision,
            "recall": report.micro.recall,
            "f1": report.micro.f1,
            "macro_f1": report.macro_f1,
        }
        for name, report in reports.items()
    }


def _train_and_tag(
    index: int,
    split: SplitSpec,
    train_corpus: AnnotatedCorpus,
    test_corpus: AnnotatedCorpus,
    train_config: TrainConfig,
) -> Tuple[int, TaggerModel, List[List[str]]]:
    model = train(
        train_corpus.subset(split.train_ids),
        train_config,
        validation=train_corpus.subset(split.validation_ids),
    )
    return index, model, predict(model, test_corpus)


@contextmanager
def _stage(name: str) -> Iterator[None]:
    """Wrap toolkit errors raised inside a stage with the stage name."""
    logger.info(f"pipeline stage: {name}")
    try:
        yield
    except PipelineStageError:
        raise
    except ProtocolNerError as e:
        raise PipelineStageError(name, e) from e


def _conll(corpus: AnnotatedCorpus, tags: Sequence[Sequence[str]]) -> List[ConllSentence]:
    return [list(zip(s.surfaces, t)) for s, t in zip(corpus.iter_sentences(), tags)]


def run_pipeline(
    train_corpus: AnnotatedCorpus,
    test_corpus: AnnotatedCorpus,
    out_dir: Union[str, Path],
    settings: Optional[PipelineSettings] = None,
    train_config: Optional[TrainConfig] = None,
) -> Dict[str, Any]:
    """
    Run split, train, tag, merge and eval end to end.

    Args:
        train_corpus: Tagged corpus the splits are drawn from.
        test_corpus: Tagged corpus every model is evaluated on.
        out_dir: Artifact directory.
        settings: Pipeline settings.
        train_config: Tagger settings shared by every model.

    Returns:
        The report also written to ``report.json``.

    Raises:
        PipelineStageError: Wrapping the first failure with its stage name.
    """
    settings = settings or PipelineSettings()
    train_config = train_config or TrainConfig()
    out_dir = Path(out_dir)
    n_models = settings.n_models

    with _stage("split"):
        seeds = [settings.seed_base + i for i in range(1, n_models + 1)]
        splits, collisions = generate_splits(train_corpus.doc_ids, seeds, settings.train_fraction)
        for i, split in enumerate(splits, start=1):
            dump_json(split.to_dict(), out_dir / "splits" / f"split_{i:02d}.json")

    with _stage("train"):
        results: Dict[int, Tuple[TaggerModel, List[List[str]]]] = {}
        jobs = [(i, split, train_corpus, test_corpus, train_config) for i, split in enumerate(splits, start=1)]
        if settings.max_workers > 1:
            with ProcessPoolExecutor(max_workers=settings.max_workers) as executor:
                futures = [executor.submit(_train_and_tag, *job) for job in jobs]
                for future in as_completed(futures):
                    index, model, predictions = future.result()
                    results[index] = (model, predictions)
        else:
            for job in jobs:
                index, model, predictions = _train_and_tag(*job)
                results[index] = (model, predictions)
                logger.info(f"model {index}/{n_models} trained ({len(model.history)} epochs)")

    runs: List[ModelRun] = []
    with _stage("tag"):
        for i, split in enumerate(splits, start=1):
            model, predictions = results[i]
            save_model(model, out_dir / "models" / f"model_{i:02d}.json")
            write_conll_file(out_dir / "predictions" / f"model_{i:02d}.conll", _conll(test_corpus, predictions))
            runs.append(ModelRun(i, split, model, predictions))

    with _stage("eval"):
        for run in runs:
            run.scores = score_corpora(with_predictions(test_corpus, run.predictions), test_corpus, CRITERIA)

    rows = []
    with _stage("merge"):
        conll_predictions = [_conll(test_corpus, run.predictions) for run in runs]
        alphabet = LabelAlphabet(tag for run in runs for seq in run.predictions for tag in seq)
        for n in ensemble_sizes(n_models):
            row: Dict[str, Any] = {"n": n, "methods": {}}
            for method in settings.methods:
                merger = get_merger(method)
                output = merge_corpus(conll_predictions[:n], merger, alphabet)
                _check_merged(runs[:n], output.merged, method, alphabet)
                name = f"{method}_n{n:02d}"
                write_conll_file(out_dir / "merged" / f"{name}.conll", output.sentences)
                dump_json(output.sidecar(), out_dir / "merged" / f"{name}.json")
                scores = score_corpora(with_predictions(test_corpus, output.tags), test_corpus, CRITERIA)
                row["methods"][merger.info.display_name] = dict(_micro(scores), repairs=output.repairs)
            rows.append(row)

    report = {
        "settings": asdict(settings),
        "tagger": asdict(train_config),
        "split_collisions": [list(pair) for pair in collisions],
        "individual": [
            {
                "model": run.index,
                "seed": run.split.seed,
                "train_docs": len(run.split.train_ids),
                "validation_docs": len(run.split.validation_ids),
                "epochs": len(run.model.history),
                "best_validation_f1": max((r.validation_f1 for r in run.model.history), default=0.0),
                "scores": _micro(run.scores),
            }
            for run in runs
        ],
        "individual_summary": {
            criterion.value: _summary([run.scores[criterion.value].micro.f1 for run in runs])
            for criterion in CRITERIA
        },
        "rows": rows,
    }
    dump_json(report, out_dir / "report.json")
    logger.info(f"pipeline report written to {out_dir / 'report.json'}")
    return report


def _summary(values: List[float]) -> Dict[str, float]:
    return {"mean": statistics.fmean(values), "min": min(values), "max": max(values)}


def _check_merged(runs: Sequence[ModelRun], merged, method: str, alphabet: LabelAlphabet) -> None:
    """
    Raises:
        InvariantViolation: If a merged sentence is not valid BIO, or an SLE
            merge uses a label or transition no model produced.
    """
    for index, result in enumerate(merged):
        if not is_valid_bio(result.tags):
            raise InvariantViolation(f"{method}: merged sentence {index} is not valid BIO")
        if method == "sle":
            pred = PredictionSet([run.predictions[index] for run in runs], alphabet, index)
            if not check_support(pred, result):
                raise InvariantViolation(f"sle: sentence {index} leaves the support of its inputs")
