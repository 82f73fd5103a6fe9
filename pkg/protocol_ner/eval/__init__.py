"""
protocol_ner.eval - Span-level scoring and token confusions.
"""

from .confusion import ConfusionTable, token_confusions
from .matching import MatchCriterion, MatchStrategy, match_entities
from .scoring import LabelScore, ScoreReport, exact_micro_f1, prf, score, score_corpora

__all__ = [
    "ConfusionTable",
    "LabelScore",
    "MatchCriterion",
    "MatchStrategy",
    "ScoreReport",
    "exact_micro_f1",
    "match_entities",
    "prf",
    "score",
    "score_corpora",
    "token_confusions",
]
