"""
Protocol NER - Entity Matching

Predicted and gold mentions are paired one-to-one. A pair is admissible
when the labels agree and the spans satisfy the criterion: identical
offsets for EXACT, any character overlap for PARTIAL.
"""

from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.errors import ScoringError
from ..corpus.models import EntityMention, find_overlaps

MatchedPair = Tuple[EntityMention, EntityMention]


class MatchCriterion(Enum):
    EXACT = "exact"
    PARTIAL = "partial"

    def accepts(self, predicted: EntityMention, gold: EntityMention) -> bool:
        if predicted.label != gold.label:
            return False
        if self is MatchCriterion.EXACT:
            return predicted.start == gold.start and predicted.end == gold.end
        return predicted.overlaps(gold)


class MatchStrategy(Enum):
    """GREEDY walks predictions in canonical order; MAXIMUM maximizes pair count."""

    GREEDY = "greedy"
    MAXIMUM = "maximum"


def _check_disjoint(mentions: Sequence[EntityMention], side: str) -> None:
    overlaps = find_overlaps(mentions)
    if overlaps:
        first, second = overlaps[0]
        raise ScoringError(
            f"{side} mentions overlap: {first.label} {first.start}..{first.end} "
            f"and {second.label} {second.start}..{second.end}"
        )


def _greedy(
    predicted: List[EntityMention],
    gold: List[EntityMention],
    criterion: MatchCriterion,
) -> List[MatchedPair]:
    used = [False] * len(gold)
    pairs = []
    for p in predicted:
        chosen: Optional[int] = None
        for i, g in enumerate(gold):
            if used[i] or not criterion.accepts(p, g):
                continue
            if g.start == p.start and g.end == p.end:
                chosen = i
                break
            if chosen is None:
                chosen = i
        if chosen is not None:
            used[chosen] = True
            pairs.append((p, gold[chosen]))
    return pairs


def _maximum(
    predicted: List[EntityMention],
    gold: List[EntityMention],
    criterion: MatchCriterion,
) -> List[MatchedPair]:
    """Augmenting-path bipartite matching over admissible pairs."""
    edges = [[i for i, g in enumerate(gold) if criterion.accepts(p, g)] for p in predicted]
    owner: Dict[int, int] = {}

    def augment(p: int, seen: set) -> bool:
        for g in edges[p]:
            if g in seen:
                continue
            seen.add(g)
            if g not in owner or augment(owner[g], seen):
                owner[g] = p
                return True
        return False

    for p in range(len(predicted)):
        augment(p, set())
    return sorted(
        ((predicted[p], gold[g]) for g, p in owner.items()),
        key=lambda pair: pair[0].sort_key,
    )


def match_entities(
    predicted: Sequence[EntityMention],
    gold: Sequence[EntityMention],
    criterion: MatchCriterion,
    strategy: MatchStrategy = MatchStrategy.GREEDY,
) -> List[MatchedPair]:
    """
    Pair predicted with gold mentions of one document.

    Greedy matching visits predictions by (start, end, label) and takes the
    identical-span gold mention if one is free, otherwise the earliest free
    admissible one. The result never depends on input order.

    Raises:
        ScoringError: If either list contains overlapping mentions.
    """
    _check_disjoint(predicted, "predicted")
    _check_disjoint(gold, "gold")
    ordered_predicted = sorted(predicted, key=lambda m: m.sort_key)
    ordered_gold = sorted(gold, key=lambda m: m.sort_key)
    if strategy is MatchStrategy.MAXIMUM:
        return _maximum(ordered_predicted, ordered_gold, criterion)
    return _greedy(ordered_predicted, ordered_gold, criterion)
