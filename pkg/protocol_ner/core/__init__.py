"""
protocol_ner.core - Error hierarchy and the end-to-end ensemble pipeline.
"""

from .errors import (
    AlignmentError,
    ConllParseError,
    ConllWriteError,
    InvalidBioError,
    InvariantViolation,
    LengthMismatchError,
    MergeAlignmentError,
    ModelFormatError,
    OffsetError,
    OracleGuardError,
    OverlapError,
    PipelineStageError,
    ProtocolNerError,
    ScoringError,
    SplitError,
    StandoffParseError,
    TagParseError,
    TrainingError,
)

__all__ = [
    "AlignmentError",
    "ConllParseError",
    "ConllWriteError",
    "InvalidBioError",
    "InvariantViolation",
    "LengthMismatchError",
    "MergeAlignmentError",
    "ModelFormatError",
    "OffsetError",
    "OracleGuardError",
    "OverlapError",
    "PipelineStageError",
    "ProtocolNerError",
    "ScoringError",
    "SplitError",
    "StandoffParseError",
    "TagParseError",
    "TrainingError",
]
