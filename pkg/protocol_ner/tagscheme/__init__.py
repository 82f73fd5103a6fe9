"""
protocol_ner.tagscheme - BIO parsing, validation, repair and span conversion.
"""

from .tags import (
    OUTSIDE,
    BioViolation,
    LabelAlphabet,
    Tag,
    TagKind,
    TagSequence,
    count_repairs,
    is_continuation,
    is_valid_bio,
    parse_tag,
    repair_bio,
    spans_from_tags,
    tags_from_spans,
    validate_bio,
)

__all__ = [
    "OUTSIDE",
    "BioViolation",
    "LabelAlphabet",
    "Tag",
    "TagKind",
    "TagSequence",
    "count_repairs",
    "is_continuation",
    "is_valid_bio",
    "parse_tag",
    "repair_bio",
    "spans_from_tags",
    "tags_from_spans",
    "validate_bio",
]
