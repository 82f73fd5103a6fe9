"""
Protocol NER - Error Definitions

Every failure raised by the toolkit derives from ProtocolNerError. The
exit_code attribute is what the CLI returns when the error escapes a
command: 2 for data and parse problems, 3 for internal invariant
violations.
"""

from typing import Optional


class ProtocolNerError(Exception):
    """Base class for all toolkit errors."""

    exit_code: int = 2


class ConllParseError(ProtocolNerError):
    """Raised when a CoNLL line cannot be read."""

    def __init__(self, message: str, line_number: int, source: Optional[str] = None):
        self.line_number = line_number
        self.source = source
        where = f"{source}:{line_number}" if source else f"line {line_number}"
        super().__init__(f"{where}: {message}")


class ConllWriteError(ProtocolNerError):
    """Raised when a sentence cannot be represented in CoNLL."""

    pass


class StandoffParseError(ProtocolNerError):
    """Raised for malformed or inconsistent standoff annotations."""

    def __init__(
        self,
        message: str,
        line_number: Optional[int] = None,
        annotation_id: Optional[str] = None,
        source: Optional[str] = None,
    ):
        self.line_number = line_number
        self.annotation_id = annotation_id
        self.source = source
        parts = [p for p in (source, f"line {line_number}" if line_number else None) if p]
        if annotation_id:
            parts.append(annotation_id)
        prefix = ":".join(parts)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class OffsetError(ProtocolNerError):
    """Raised when a mention does not fit its document text."""

    pass


class OverlapError(ProtocolNerError):
    """Raised when mentions of one document overlap."""

    pass


class AlignmentError(ProtocolNerError):
    """Raised when a mention cannot be mapped onto token boundaries."""

    pass


class TagParseError(ProtocolNerError):
    """Raised for tag strings outside the BIO textual form."""

    pass


class InvalidBioError(ProtocolNerError):
    """Raised when an operation needs a valid BIO sequence."""

    pass


class LengthMismatchError(ProtocolNerError):
    """Raised when aligned sequences differ in length."""

    pass


class SplitError(ProtocolNerError):
    """Raised for split requests that cannot be satisfied."""

    pass


class TrainingError(ProtocolNerError):
    """Raised when the tagger cannot be trained."""

    pass


class ModelFormatError(ProtocolNerError):
    """Raised when a serialized model cannot be read."""

    pass


class MergeAlignmentError(ProtocolNerError):
    """Raised when prediction files do not line up."""

    def __init__(self, message: str, sentence_index: Optional[int] = None):
        self.sentence_index = sentence_index
        if sentence_index is not None:
            message = f"sentence {sentence_index}: {message}"
        super().__init__(message)


class OracleGuardError(ProtocolNerError):
    """Raised when exhaustive enumeration would be too large."""

    pass


class ScoringError(ProtocolNerError):
    """Raised when predicted and gold collections cannot be compared."""

    pass


class InvariantViolation(ProtocolNerError):
    """Raised when an internal guarantee does not hold."""

    exit_code = 3


class PipelineStageError(ProtocolNerError):
    """Wraps a failure with the name of the pipeline stage it came from."""

    def __init__(self, stage: str, cause: BaseException):
        self.stage = stage
        self.cause = cause
        self.exit_code = getattr(cause, "exit_code", 3)
        super().__init__(f"stage '{stage}' failed: {cause}")
