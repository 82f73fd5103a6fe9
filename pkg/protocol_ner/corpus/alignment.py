"""
Protocol NER - Mention/Token Alignment

Maps character-offset mentions onto BIO tags over tokens, one tag
sequence per protocol step.
"""

import bisect
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple
import logging

from ..core.errors import AlignmentError, OverlapError
from .models import AnnotatedCorpus, EntityMention, ProtocolDocument, Sentence, Token, find_overlaps
from .tokenizer import tokenize

logger = logging.getLogger(__name__)


@dataclass
class AlignmentConfig:
    """How to treat mentions that do not fit token boundaries."""

    snap: bool = False
    allow_overlap: bool = False


def _group_by_sentence(tokens: Sequence[Token]) -> Dict[int, List[Token]]:
    groups: Dict[int, List[Token]] = {}
    for token in tokens:
        groups.setdefault(token.sentence_index, []).append(token)
    return groups


def align_mention(
    tokens: Sequence[Token],
    mention: EntityMention,
    snap: bool = False,
) -> Tuple[int, int]:
    """
    Locate the token range [first, last] covered by mention.

    Raises:
        AlignmentError: If the mention covers no token, crosses a sentence,
            or has a boundary inside a token while snap is off.
    """
    starts = [t.start for t in tokens]
    first = bisect.bisect_right(starts, mention.start) - 1
    if first < 0 or tokens[first].end <= mention.start:
        first += 1
    last = bisect.bisect_left(starts, mention.end) - 1
    if first >= len(tokens) or last < first:
        raise AlignmentError(
            f"mention {mention.label} {mention.start}..{mention.end} covers no token"
        )
    if tokens[first].sentence_index != tokens[last].sentence_index:
        raise AlignmentError(
            f"mention {mention.label} {mention.start}..{mention.end} crosses a line break"
        )
    if tokens[first].start != mention.start or tokens[last].end != mention.end:
        message = (
            f"mention {mention.label} {mention.start}..{mention.end} {mention.surface!r} "
            f"does not coincide with token boundaries"
        )
        if not snap:
            raise AlignmentError(message)
        logger.warning(
            f"{message}; snapped to {tokens[first].start}..{tokens[last].end}"
        )
    return first, last


def align_mentions_to_tags(
    tokens: Sequence[Token],
    mentions: Sequence[EntityMention],
    snap: bool = False,
) -> Dict[int, List[str]]:
    """
    Convert mentions into BIO tags per sentence.

    Args:
        tokens: Output of tokenize for one document.
        mentions: Non-overlapping mentions of that document.
        snap: Expand boundaries that fall inside a token instead of failing.

    Returns:
        Mapping sentence_index -> tag list aligned with that sentence's tokens.

    Raises:
        OverlapError: For overlapping mentions.
        AlignmentError: See align_mention.
    """
    overlaps = find_overlaps(mentions)
    if overlaps:
        first, second = overlaps[0]
        raise OverlapError(
            f"overlapping mentions {first.start}..{first.end} and {second.start}..{second.end} "
            f"cannot be encoded as BIO"
        )
    tags = ["O"] * len(tokens)
    for mention in sorted(mentions, key=lambda m: m.sort_key):
        first, last = align_mention(tokens, mention, snap=snap)
        if any(tag != "O" for tag in tags[first : last + 1]):
            raise OverlapError(
                f"mention {mention.label} {mention.start}..{mention.end} overlaps another after snapping"
            )
        tags[first] = f"B-{mention.label}"
        for i in range(first + 1, last + 1):
            tags[i] = f"I-{mention.label}"

    result: Dict[int, List[str]] = {}
    for index, token in enumerate(tokens):
        result.setdefault(token.sentence_index, []).append(tags[index])
    return result


def build_sentences(
    document: ProtocolDocument,
    mentions: Sequence[EntityMention],
    snap: bool = False,
) -> List[Sentence]:
    """Tokenize a document and tag every non-empty step."""
    tokens = tokenize(document)
    tags = align_mentions_to_tags(tokens, mentions, snap=snap)
    return [
        Sentence(document.id, index, tuple(group), tuple(tags[index]))
        for index, group in sorted(_group_by_sentence(tokens).items())
    ]


def tag_corpus(corpus: AnnotatedCorpus, config: Optional[AlignmentConfig] = None) -> AnnotatedCorpus:
    """Populate corpus.sentences for every document; returns the corpus."""
    config = config or AlignmentConfig()
    for doc_id, document in corpus.documents.items():
        try:
            corpus.sentences[doc_id] = build_sentences(
                document, corpus.mentions.get(doc_id, []), snap=config.snap
            )
        except (AlignmentError, OverlapError) as e:
            raise type(e)(f"{doc_id}: {e}") from e
    return corpus
