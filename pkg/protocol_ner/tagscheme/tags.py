"""
Protocol NER - BIO Tag Algebra

Tags travel through the toolkit as their textual form ("O", "B-Reagent",
"I-Reagent"); parse_tag gives the structured view when one is needed.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple
import logging

from ..core.errors import InvalidBioError, LengthMismatchError, TagParseError
from ..corpus.alignment import align_mentions_to_tags
from ..corpus.models import EntityMention, Token

logger = logging.getLogger(__name__)

OUTSIDE = "O"

TagSequence = Sequence[str]


class TagKind(Enum):
    """Position of a token relative to an entity."""

    O = "O"
    B = "B"
    I = "I"


@dataclass(frozen=True)
class Tag:
    kind: TagKind
    label: Optional[str] = None

    def __str__(self) -> str:
        if self.kind is TagKind.O:
            return OUTSIDE
        return f"{self.kind.value}-{self.label}"


@lru_cache(maxsize=4096)
def parse_tag(text: str) -> Tag:
    """
    Parse "O", "B-<label>" or "I-<label>".

    Raises:
        TagParseError: For any other form, e.g. "B-", "X-Foo" or "Action".
    """
    if text == OUTSIDE:
        return Tag(TagKind.O)
    prefix, sep, label = text.partition("-")
    if not sep or prefix not in ("B", "I") or not label or label.strip() != label:
        raise TagParseError(f"malformed tag: {text!r}")
    return Tag(TagKind(prefix), label)


def is_continuation(previous: Optional[str], tag: str) -> bool:
    """True if tag may follow previous (None = sentence start)."""
    parsed = parse_tag(tag)
    if parsed.kind is not TagKind.I:
        return True
    if previous is None:
        return False
    before = parse_tag(previous)
    return before.kind is not TagKind.O and before.label == parsed.label


class BioViolation(NamedTuple):
    position: int
    description: str


def validate_bio(seq: TagSequence) -> List[BioViolation]:
    """List every illegal I tag; empty iff the sequence is valid BIO."""
    violations = []
    previous: Optional[str] = None
    for position, tag in enumerate(seq):
        if not is_continuation(previous, tag):
            if previous is None or parse_tag(previous).kind is TagKind.O:
                violations.append(BioViolation(position, "I without B"))
            else:
                violations.append(BioViolation(position, "label switch inside I"))
        previous = tag
    return violations


def is_valid_bio(seq: TagSequence) -> bool:
    return not validate_bio(seq)


def repair_bio(seq: TagSequence) -> List[str]:
    """Turn every illegal I-X into B-X; valid sequences come back unchanged."""
    repaired: List[str] = []
    previous: Optional[str] = None
    for tag in seq:
        if not is_continuation(previous, tag):
            tag = f"B-{parse_tag(tag).label}"
        repaired.append(tag)
        previous = tag
    return repaired


def count_repairs(before: TagSequence, after: TagSequence) -> int:
    return sum(1 for a, b in zip(before, after) if a != b)


def _surface_between(tokens: Sequence[Token], first: int, last: int, text: Optional[str]) -> str:
    start, end = tokens[first].start, tokens[last].end
    if text is not None:
        return text[start:end]
    parts = [tokens[first].surface]
    for i in range(first + 1, last + 1):
        parts.append(" " * (tokens[i].start - tokens[i - 1].end))
        parts.append(tokens[i].surface)
    return "".join(parts)


def spans_from_tags(
    seq: TagSequence,
    tokens: Sequence[Token],
    text: Optional[str] = None,
) -> List[EntityMention]:
    """
    Collapse maximal B-X I-X* runs into mentions.

    Args:
        seq: Valid BIO tags, one per token.
        tokens: Tokens carrying character offsets.
        text: Document text for surfaces; without it, gaps between tokens
            are rendered as spaces.

    Raises:
        InvalidBioError: If seq is not valid BIO (repair first).
        LengthMismatchError: If seq and tokens differ in length.
    """
    if len(seq) != len(tokens):
        raise LengthMismatchError(f"{len(seq)} tags for {len(tokens)} tokens")
    violations = validate_bio(seq)
    if violations:
        position, description = violations[0]
        raise InvalidBioError(f"position {position}: {description}")

    mentions = []
    first: Optional[int] = None
    label: Optional[str] = None
    for i, tag in enumerate(list(seq) + [OUTSIDE]):
        parsed = parse_tag(tag)
        if first is not None and parsed.kind is not TagKind.I:
            surface = _surface_between(tokens, first, i - 1, text)
            mentions.append(EntityMention(label, tokens[first].start, tokens[i - 1].end, surface))
            first = None
        if parsed.kind is TagKind.B:
            first, label = i, parsed.label
    return mentions


def tags_from_spans(mentions: Iterable[EntityMention], tokens: Sequence[Token]) -> List[str]:
    """
    Inverse of spans_from_tags for token-aligned, non-overlapping mentions.

    Raises:
        AlignmentError / OverlapError: For mentions that are not token
            aligned or that overlap.
    """
    if not tokens:
        return []
    # single-sentence view: sentence indices are irrelevant here
    flat = [Token(t.surface, t.start, t.end, 0) for t in tokens]
    return align_mentions_to_tags(flat, list(mentions)).get(0, [OUTSIDE] * len(flat))


class LabelAlphabet:
    """
    The ordered tag set Σ.

    Always contains "O"; ordering is the lexicographic sort of the textual
    forms, fixed at construction. Index order is the tie-break order used
    by voting and every dynamic program.
    """

    def __init__(self, tags: Iterable[str]):
        unique = set(tags)
        unique.add(OUTSIDE)
        for tag in unique:
            parse_tag(tag)
        self._tags: Tuple[str, ...] = tuple(sorted(unique))
        self._index: Dict[str, int] = {tag: i for i, tag in enumerate(self._tags)}

    @classmethod
    def from_sequences(cls, sequences: Iterable[TagSequence]) -> "LabelAlphabet":
        return cls(tag for seq in sequences for tag in seq)

    @classmethod
    def closed(cls, tags: Iterable[str]) -> "LabelAlphabet":
        """Alphabet that holds both B-X and I-X for every label seen."""
        labels = {parse_tag(t).label for t in tags if t != OUTSIDE}
        return cls([f"{k}-{label}" for label in labels for k in ("B", "I")])

    @property
    def tags(self) -> Tuple[str, ...]:
        return self._tags

    @property
    def labels(self) -> List[str]:
        return sorted({parse_tag(t).label for t in self._tags if t != OUTSIDE})

    def index(self, tag: str) -> int:
        try:
            return self._index[tag]
        except KeyError:
            raise TagParseError(f"tag {tag!r} not in alphabet") from None

    def encode(self, seq: TagSequence) -> List[int]:
        return [self.index(tag) for tag in seq]

    def decode(self, indices: Iterable[int]) -> List[str]:
        return [self._tags[int(i)] for i in indices]

    def __contains__(self, tag: object) -> bool:
        return tag in self._index

    def __len__(self) -> int:
        return len(self._tags)

    def __iter__(self):
        return iter(self._tags)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LabelAlphabet) and self._tags == other._tags

    def __hash__(self) -> int:
        return hash(self._tags)

    def __repr__(self) -> str:
        return f"LabelAlphabet({list(self._tags)})"
