"""
Protocol NER - Position-wise Transition Counts

For N aligned sequences of length L over alphabet S:

    unigrams[k, i]       models emitting tag i at position k      (L, S)
    transitions[k, i, j] models emitting (i, j) at (k, k + 1)     (L - 1, S, S)

Every unigram row and every transition matrix sums to N.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .base import PredictionSet


@dataclass
class TransitionCounts:
    transitions: np.ndarray
    unigrams: np.ndarray
    n_models: int

    @property
    def length(self) -> int:
        return self.unigrams.shape[0]

    def unigram(self, k: int, i: int) -> int:
        return int(self.unigrams[k, i])

    def transition(self, k: int, i: int, j: int) -> int:
        return int(self.transitions[k, i, j])

    def supports(self, path: Sequence[int]) -> bool:
        """True if every label and transition of path was produced by some model."""
        if any(self.unigrams[k, i] < 1 for k, i in enumerate(path)):
            return False
        return all(self.transitions[k, path[k], path[k + 1]] >= 1 for k in range(len(path) - 1))


def build_counts(pred: PredictionSet) -> TransitionCounts:
    size = len(pred.alphabet)
    length = pred.length
    paths = np.array(pred.encoded, dtype=np.int64).reshape(pred.n_models, length)
    unigrams = np.zeros((length, size), dtype=np.int64)
    transitions = np.zeros((max(length - 1, 0), size, size), dtype=np.int64)
    positions = np.arange(length)
    for path in paths:
        np.add.at(unigrams, (positions, path), 1)
        if length > 1:
            np.add.at(transitions, (positions[:-1], path[:-1], path[1:]), 1)
    return TransitionCounts(transitions, unigrams, pred.n_models)
