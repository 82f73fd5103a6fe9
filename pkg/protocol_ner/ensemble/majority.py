"""
Protocol NER - Majority Voting

Each position takes the tag with the most votes; ties go to the tag that
comes first in the alphabet.
"""

import math

import numpy as np

from ..tagscheme import count_repairs, repair_bio
from .base import BaseMerger, MergedPrediction, MergeMethod, MergerInfo, PredictionSet
from .counts import build_counts


def majority_vote(pred: PredictionSet) -> MergedPrediction:
    counts = build_counts(pred)
    # argmax returns the first maximum, i.e. the lowest alphabet index
    winners = [int(i) for i in np.argmax(counts.unigrams, axis=1)] if pred.length else []
    score = sum(math.log(counts.unigram(k, i)) for k, i in enumerate(winners))
    raw = pred.alphabet.decode(winners)
    tags = repair_bio(raw)
    return MergedPrediction(tags, score, MergeMethod.MAJORITY_VOTE, raw, count_repairs(raw, tags))


class MajorityVoteMerger(BaseMerger):
    @property
    def info(self) -> MergerInfo:
        return MergerInfo("majv", "MajV", "Position-wise majority vote")

    def merge(self, pred: PredictionSet) -> MergedPrediction:
        return majority_vote(pred)
