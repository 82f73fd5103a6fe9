"""
protocol_ner.tagger - Feature-based linear-chain tagger with Viterbi decoding.
"""

from .features import FeatureExtractor
from .model import (
    MODEL_FORMAT_VERSION,
    EpochRecord,
    TaggerModel,
    load_model,
    save_model,
    sequence_score,
    viterbi,
    viterbi_decode,
)
from .trainer import TrainConfig, evaluate_f1, predict, train

__all__ = [
    "EpochRecord",
    "FeatureExtractor",
    "MODEL_FORMAT_VERSION",
    "TaggerModel",
    "TrainConfig",
    "evaluate_f1",
    "load_model",
    "predict",
    "save_model",
    "sequence_score",
    "train",
    "viterbi",
    "viterbi_decode",
]
