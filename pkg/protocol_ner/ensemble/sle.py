"""
Protocol NER - Structured Learning Ensembling

The merged sequence y maximizes

    prod_{k<L} T^k(y_k, y_{k+1}) * prod_{k<=L} U^k(y_k)

over the position-wise counts of the N input sequences, with no smoothing:
a label or transition no model produced zeroes the product. The dynamic
program multiplies exact integers so that ties are real ties; at every
backpointer and for the final state the lowest alphabet index wins. The
reported score is the log of the product.
"""

import math
from typing import List, Sequence, Tuple

from ..core.errors import InvariantViolation
from ..tagscheme import count_repairs, repair_bio
from .base import BaseMerger, MergedPrediction, MergeMethod, MergerInfo, PredictionSet
from .counts import TransitionCounts, build_counts


def log_score(counts: TransitionCounts, path: Sequence[int]) -> float:
    """sum log T + sum log U of path; -inf when any factor is zero."""
    factors = [counts.unigram(k, i) for k, i in enumerate(path)]
    factors += [counts.transition(k, path[k], path[k + 1]) for k in range(len(path) - 1)]
    if any(f == 0 for f in factors):
        return float("-inf")
    return float(sum(math.log(f) for f in factors))


def sle_decode(counts: TransitionCounts) -> Tuple[List[int], int]:
    """Argmax path and its product; ([], 1) for an empty sentence."""
    length = counts.length
    if length == 0:
        return [], 1
    size = counts.unigrams.shape[1]
    unigrams = counts.unigrams.tolist()
    transitions = counts.transitions.tolist()

    delta = list(unigrams[0])
    backpointers: List[List[int]] = []
    for k in range(1, length):
        step = transitions[k - 1]
        pointers = []
        new_delta = []
        for j in range(size):
            best_i, best = 0, delta[0] * step[0][j]
            for i in range(1, size):
                value = delta[i] * step[i][j]
                if value > best:
                    best_i, best = i, value
            pointers.append(best_i)
            new_delta.append(best * unigrams[k][j])
        backpointers.append(pointers)
        delta = new_delta

    best_j = max(range(size), key=lambda j: (delta[j], -j))
    path = [best_j]
    for pointers in reversed(backpointers):
        path.append(pointers[path[-1]])
    path.reverse()
    return path, delta[best_j]


def sle_merge(pred: PredictionSet) -> MergedPrediction:
    counts = build_counts(pred)
    path, product = sle_decode(counts)
    if product <= 0:
        raise InvariantViolation("SLE found no sequence supported by every count")
    raw = pred.alphabet.decode(path)
    tags = repair_bio(raw)
    return MergedPrediction(tags, log_score(counts, path), MergeMethod.SLE, raw, count_repairs(raw, tags))


def check_support(pred: PredictionSet, merged: MergedPrediction) -> bool:
    """True if the pre-repair SLE output only uses labels and transitions seen in pred."""
    return build_counts(pred).supports(pred.alphabet.encode(merged.raw_tags))


class SleMerger(BaseMerger):
    @property
    def info(self) -> MergerInfo:
        return MergerInfo("sle", "SLE", "Position-wise transition counts decoded with Viterbi")

    def merge(self, pred: PredictionSet) -> MergedPrediction:
        return sle_merge(pred)
