"""
protocol_ner.ensemble - Merging the predictions of several taggers.
"""

from .base import (
    BaseMerger,
    MergedPrediction,
    MergeMethod,
    MergerInfo,
    MergerNotFoundError,
    PredictionSet,
)
from .corpus import MergeOutput, check_aligned, merge_corpus, merge_files
from .counts import TransitionCounts, build_counts
from .majority import MajorityVoteMerger, majority_vote
from .oracle import brute_force_merge
from .registry import MergerRegistry, get_merger, get_registry
from .sle import SleMerger, check_support, log_score, sle_merge

__all__ = [
    "BaseMerger",
    "MajorityVoteMerger",
    "MergeMethod",
    "MergeOutput",
    "MergedPrediction",
    "MergerInfo",
    "MergerNotFoundError",
    "MergerRegistry",
    "PredictionSet",
    "SleMerger",
    "TransitionCounts",
    "brute_force_merge",
    "build_counts",
    "check_aligned",
    "check_support",
    "get_merger",
    "get_registry",
    "log_score",
    "majority_vote",
    "merge_corpus",
    "merge_files",
    "sle_merge",
]
