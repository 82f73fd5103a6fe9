"""
Protocol NER - Exhaustive Merge Oracle

Scores every sequence over the alphabet with the SLE objective. Only
useful for checking sle_merge on small inputs.
"""

import itertools
from typing import Tuple

from ..core.errors import OracleGuardError
from ..tagscheme import count_repairs, repair_bio
from .base import MergedPrediction, MergeMethod, PredictionSet
from .counts import build_counts
from .sle import log_score

MAX_CANDIDATES = 10 ** 6


def brute_force_merge(pred: PredictionSet, limit: int = MAX_CANDIDATES) -> MergedPrediction:
    """
    Enumerate all |alphabet|^L sequences and keep the best.

    Among equal products the winner has the smallest last index, then the
    smallest second-to-last, and so on, which is the order in which the
    dynamic program resolves ties.

    Raises:
        OracleGuardError: If there are more than limit candidates.
    """
    size = len(pred.alphabet)
    if size ** pred.length > limit:
        raise OracleGuardError(f"{size}^{pred.length} candidate sequences exceed the limit of {limit}")
    counts = build_counts(pred)
    unigrams = counts.unigrams.tolist()
    transitions = counts.transitions.tolist()

    def key(path: Tuple[int, ...]):
        product = 1
        for k, i in enumerate(path):
            product *= unigrams[k][i]
            if k:
                product *= transitions[k - 1][path[k - 1]][i]
        return product, tuple(-i for i in reversed(path))

    best = max(itertools.product(range(size), repeat=pred.length), key=key)
    raw = pred.alphabet.decode(best)
    tags = repair_bio(raw)
    return MergedPrediction(tags, log_score(counts, best), MergeMethod.SLE, raw, count_repairs(raw, tags))
