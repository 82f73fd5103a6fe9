"""
Protocol NER - Tokenizer

Deterministic rule, applied per protocol step (line):

1. split on whitespace;
2. every symbol character (Unicode category S*, e.g. ``°``, ``+``, ``=``)
   becomes its own token wherever it occurs;
3. punctuation characters (category P*) at the start or end of a piece
   are peeled off one character per token.

Interior punctuation is kept, so ``3.68`` and ``5-10`` stay whole while
``37°C.`` becomes ``37`` ``°`` ``C`` ``.``.
"""

import re
import unicodedata
from typing import List, Tuple

from .models import ProtocolDocument, Token

_CHUNK_RE = re.compile(r"\S+")


def _is_symbol(char: str) -> bool:
    return unicodedata.category(char).startswith("S")


def _is_punct(char: str) -> bool:
    return unicodedata.category(char).startswith("P")


def _split_chunk(chunk: str, offset: int) -> List[Tuple[int, int]]:
    """Token (start, end) offsets for one whitespace-free chunk."""
    pieces: List[Tuple[int, int]] = []
    piece_start = 0
    for i, char in enumerate(chunk):
        if _is_symbol(char):
            if i > piece_start:
                pieces.append((piece_start, i))
            pieces.append((i, i + 1))
            piece_start = i + 1
    if piece_start < len(chunk):
        pieces.append((piece_start, len(chunk)))

    spans: List[Tuple[int, int]] = []
    for start, end in pieces:
        leading = []
        while start < end and _is_punct(chunk[start]):
            leading.append((start, start + 1))
            start += 1
        trailing = []
        while end > start and _is_punct(chunk[end - 1]):
            trailing.append((end - 1, end))
            end -= 1
        spans.extend(leading)
        if start < end:
            spans.append((start, end))
        spans.extend(reversed(trailing))
    return [(offset + s, offset + e) for s, e in spans]


def tokenize_text(text: str, offset: int = 0, sentence_index: int = 0) -> List[Token]:
    """Tokenize a single line; offsets are shifted by offset."""
    tokens = []
    for match in _CHUNK_RE.finditer(text):
        for start, end in _split_chunk(match.group(), offset + match.start()):
            tokens.append(Token(text[start - offset : end - offset], start, end, sentence_index))
    return tokens


def tokenize(document: ProtocolDocument) -> List[Token]:
    """
    Tokenize every step of a document.

    Token offsets index document.text and sentence_index is the step index,
    so one sentence never crosses a line break.
    """
    tokens: List[Token] = []
    for index, (start, end) in enumerate(document.steps):
        tokens.extend(tokenize_text(document.text[start:end], start, index))
    return tokens
