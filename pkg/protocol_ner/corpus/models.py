"""
Protocol NER - Corpus Data Model

Documents, mentions, tokens and the corpus container that ties them
together. All character offsets count Unicode code points, are 0-based,
start-inclusive and end-exclusive.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple
import logging

from ..core.errors import OffsetError, OverlapError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EntityMention:
    """A typed character span within a document."""

    label: str
    start: int
    end: int
    surface: str

    def __post_init__(self):
        if not self.label:
            raise OffsetError("mention label must be non-empty")
        if self.start < 0 or self.end <= self.start:
            raise OffsetError(
                f"invalid mention offsets {self.start}..{self.end} for {self.label}"
            )

    def check_text(self, text: str) -> None:
        """Raise OffsetError unless the mention fits text exactly."""
        if self.end > len(text):
            raise OffsetError(
                f"mention {self.label} {self.start}..{self.end} exceeds text length {len(text)}"
            )
        if text[self.start : self.end] != self.surface:
            raise OffsetError(
                f"mention {self.label} {self.start}..{self.end}: surface "
                f"{self.surface!r} != text {text[self.start:self.end]!r}"
            )

    def overlaps(self, other: "EntityMention") -> bool:
        return max(self.start, other.start) < min(self.end, other.end)

    @property
    def sort_key(self) -> Tuple[int, int, str]:
        return (self.start, self.end, self.label)

    @classmethod
    def from_text(cls, text: str, label: str, start: int, end: int) -> "EntityMention":
        """Build a mention whose surface is sliced from text."""
        mention = cls(label, start, end, text[start:end])
        mention.check_text(text)
        return mention


@dataclass(frozen=True)
class Token:
    """A token of a document; sentence_index is the protocol step index."""

    surface: str
    start: int
    end: int
    sentence_index: int = 0


@dataclass(frozen=True)
class ProtocolDocument:
    """
    A protocol: one step per line, the first line being its title.

    steps holds (start, end) offsets of every line, newline excluded. A
    trailing newline does not open an extra step.
    """

    id: str
    text: str
    title: str
    steps: Tuple[Tuple[int, int], ...]

    @classmethod
    def from_text(cls, doc_id: str, text: str) -> "ProtocolDocument":
        steps: List[Tuple[int, int]] = []
        start = 0
        while start < len(text):
            newline = text.find("\n", start)
            end = len(text) if newline == -1 else newline
            line_end = end - 1 if end > start and text[end - 1] == "\r" else end
            steps.append((start, line_end))
            start = end + 1
        title = text[steps[0][0] : steps[0][1]] if steps else ""
        return cls(id=doc_id, text=text, title=title, steps=tuple(steps))

    def step_text(self, index: int) -> str:
        start, end = self.steps[index]
        return self.text[start:end]


@dataclass(frozen=True)
class Sentence:
    """A tokenized protocol step with one tag per token."""

    doc_id: str
    index: int
    tokens: Tuple[Token, ...]
    tags: Tuple[str, ...]

    @property
    def surfaces(self) -> List[str]:
        return [t.surface for t in self.tokens]

    def __len__(self) -> int:
        return len(self.tokens)

    def with_tags(self, tags: Sequence[str]) -> "Sentence":
        return Sentence(self.doc_id, self.index, self.tokens, tuple(tags))


def find_overlaps(mentions: Iterable[EntityMention]) -> List[Tuple[EntityMention, EntityMention]]:
    """Return every pair of overlapping mentions, in canonical order."""
    ordered = sorted(mentions, key=lambda m: m.sort_key)
    pairs = []
    for i, first in enumerate(ordered):
        for second in ordered[i + 1 :]:
            if second.start >= first.end:
                break
            pairs.append((first, second))
    return pairs


@dataclass
class AnnotatedCorpus:
    """
    Documents with their mentions and, once aligned, their tagged sentences.

    Mentions of one document may not overlap unless allow_overlap is set;
    overlapping mentions can still be stored and written back as standoff
    but cannot be converted to BIO tags.
    """

    documents: Dict[str, ProtocolDocument] = field(default_factory=dict)
    mentions: Dict[str, List[EntityMention]] = field(default_factory=dict)
    sentences: Dict[str, List[Sentence]] = field(default_factory=dict)
    allow_overlap: bool = False

    def add_document(
        self,
        document: ProtocolDocument,
        mentions: Sequence[EntityMention] = (),
        sentences: Optional[Sequence[Sentence]] = None,
    ) -> None:
        if document.id in self.documents:
            raise OffsetError(f"duplicate document id: {document.id}")
        for mention in mentions:
            mention.check_text(document.text)
        overlaps = find_overlaps(mentions)
        if overlaps:
            first, second = overlaps[0]
            message = (
                f"{document.id}: overlapping mentions {first.label} {first.start}..{first.end} "
                f"and {second.label} {second.start}..{second.end}"
            )
            if not self.allow_overlap:
                raise OverlapError(message)
            logger.warning(f"{message} (kept, {len(overlaps)} overlapping pairs)")
        self.documents[document.id] = document
        self.mentions[document.id] = list(mentions)
        if sentences is not None:
            self.sentences[document.id] = list(sentences)

    @property
    def doc_ids(self) -> List[str]:
        return list(self.documents)

    @property
    def is_tagged(self) -> bool:
        return all(doc_id in self.sentences for doc_id in self.documents)

    def iter_sentences(self, doc_ids: Optional[Iterable[str]] = None) -> Iterator[Sentence]:
        for doc_id in self.doc_ids if doc_ids is None else doc_ids:
            yield from self.sentences.get(doc_id, [])

    def all_sentences(self) -> List[Sentence]:
        return list(self.iter_sentences())

    def subset(self, doc_ids: Iterable[str]) -> "AnnotatedCorpus":
        """A corpus restricted to doc_ids, in this corpus' document order."""
        wanted = set(doc_ids)
        missing = wanted - set(self.documents)
        if missing:
            raise OffsetError(f"unknown document ids: {sorted(missing)}")
        sub = AnnotatedCorpus(allow_overlap=self.allow_overlap)
        for doc_id, document in self.documents.items():
            if doc_id in wanted:
                sub.documents[doc_id] = document
                sub.mentions[doc_id] = list(self.mentions.get(doc_id, []))
                if doc_id in self.sentences:
                    sub.sentences[doc_id] = list(self.sentences[doc_id])
        return sub

    def __len__(self) -> int:
        return len(self.documents)
