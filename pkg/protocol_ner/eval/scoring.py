"""
Protocol NER - Span Scoring

Precision, recall and F1 per label, pooled (micro) and averaged (macro)
over the labels present in gold or predictions. Any zero denominator
yields 0.
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Sequence, Tuple
import logging

from ..core.errors import ScoringError
from ..corpus.models import AnnotatedCorpus, EntityMention
from .matching import MatchCriterion, MatchStrategy, match_entities

logger = logging.getLogger(__name__)


def prf(tp: int, n_predicted: int, n_gold: int) -> Tuple[float, float, float]:
    precision = tp / n_predicted if n_predicted else 0.0
    recall = tp / n_gold if n_gold else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return precision, recall, f1


@dataclass
class LabelScore:
    label: str
    tp: int
    predicted: int
    gold: int
    precision: float = 0.0
    recall: float = 0.0
    f1: float = 0.0

    @classmethod
    def from_counts(cls, label: str, tp: int, predicted: int, gold: int) -> "LabelScore":
        return cls(label, tp, predicted, gold, *prf(tp, predicted, gold))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "tp": self.tp,
            "predicted": self.predicted,
            "gold": self.gold,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
        }


@dataclass
class ScoreReport:
    criterion: MatchCriterion
    per_label: Dict[str, LabelScore] = field(default_factory=dict)
    micro: LabelScore = field(default_factory=lambda: LabelScore.from_counts("micro", 0, 0, 0))
    macro_precision: float = 0.0
    macro_recall: float = 0.0
    macro_f1: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "criterion": self.criterion.value,
            "per_label": {label: s.to_dict() for label, s in sorted(self.per_label.items())},
            "micro": self.micro.to_dict(),
            "macro": {
                "precision": self.macro_precision,
                "recall": self.macro_recall,
                "f1": self.macro_f1,
            },
        }


def score(
    predicted: Mapping[str, Sequence[EntityMention]],
    gold: Mapping[str, Sequence[EntityMention]],
    criterion: MatchCriterion,
    strategy: MatchStrategy = MatchStrategy.GREEDY,
) -> ScoreReport:
    """
    Score predicted mentions against gold, document by document.

    Args:
        predicted: Mentions per document id.
        gold: Mentions per document id; must cover the same ids.
        criterion: EXACT or PARTIAL.
        strategy: Matching strategy.

    Raises:
        ScoringError: If the document id sets differ or a list overlaps.
    """
    if set(predicted) != set(gold):
        only_pred = sorted(set(predicted) - set(gold))
        only_gold = sorted(set(gold) - set(predicted))
        raise ScoringError(
            f"document ids differ: only predicted {only_pred[:5]}, only gold {only_gold[:5]}"
        )

    tp: Counter = Counter()
    n_pred: Counter = Counter(m.label for mentions in predicted.values() for m in mentions)
    n_gold: Counter = Counter(m.label for mentions in gold.values() for m in mentions)
    for doc_id in sorted(gold):
        for p, _ in match_entities(predicted[doc_id], gold[doc_id], criterion, strategy):
            tp[p.label] += 1

    labels = sorted(set(n_pred) | set(n_gold))
    report = ScoreReport(criterion)
    for label in labels:
        report.per_label[label] = LabelScore.from_counts(label, tp[label], n_pred[label], n_gold[label])
    report.micro = LabelScore.from_counts(
        "micro", sum(tp.values()), sum(n_pred.values()), sum(n_gold.values())
    )
    if labels:
        scores = list(report.per_label.values())
        report.macro_precision = sum(s.precision for s in scores) / len(scores)
        report.macro_recall = sum(s.recall for s in scores) / len(scores)
        report.macro_f1 = sum(s.f1 for s in scores) / len(scores)
    return report


def score_corpora(
    predicted: AnnotatedCorpus,
    gold: AnnotatedCorpus,
    criteria: Iterable[MatchCriterion] = (MatchCriterion.EXACT, MatchCriterion.PARTIAL),
    strategy: MatchStrategy = MatchStrategy.GREEDY,
) -> Dict[str, ScoreReport]:
    """ScoreReports keyed by criterion name."""
    return {
        criterion.value: score(predicted.mentions, gold.mentions, criterion, strategy)
        for criterion in criteria
    }


def exact_micro_f1(predicted: Sequence[Sequence[EntityMention]], gold: Sequence[Sequence[EntityMention]]) -> float:
    """Micro F1 of exact matches over parallel lists of per-sentence mentions."""
    tp = n_pred = n_gold = 0
    for p, g in zip(predicted, gold):
        tp += len({m.sort_key for m in p} & {m.sort_key for m in g})
        n_pred += len(p)
        n_gold += len(g)
    return prf(tp, n_pred, n_gold)[2]


def reports_to_dict(reports: Mapping[str, ScoreReport]) -> Dict[str, Any]:
    return {name: report.to_dict() for name, report in reports.items()}


def summary_rows(report: ScoreReport) -> List[Tuple[str, LabelScore]]:
    """Per-label rows followed by the micro row, for table rendering."""
    return [(label, s) for label, s in sorted(report.per_label.items())] + [("micro", report.micro)]
