"""
Protocol NER - CoNLL Format

One token per line as ``<word>\\t<tag>``; a blank line ends a sentence.
Files are UTF-8. CRLF endings are accepted on read, LF is always written.
"""

import io
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple
import logging

from ..core.errors import ConllParseError, ConllWriteError

logger = logging.getLogger(__name__)

ConllSentence = List[Tuple[str, str]]


def parse_conll(stream: Iterable[str], source: Optional[str] = None) -> List[ConllSentence]:
    """
    Read CoNLL sentences.

    Args:
        stream: Text stream or any iterable of lines.
        source: Name used in error messages.

    Returns:
        List of sentences, each a list of (surface, tag) pairs.

    Raises:
        ConllParseError: If a non-blank line does not hold exactly one TAB.
    """
    sentences: List[ConllSentence] = []
    current: ConllSentence = []

    for line_number, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip() and "\t" not in line:
            if current:
                sentences.append(current)
                current = []
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise ConllParseError(
                f"expected '<word>\\t<tag>', found {len(fields) - 1} TAB separators",
                line_number,
                source,
            )
        surface, tag = fields
        if not surface.strip() or not tag.strip():
            raise ConllParseError("empty word or tag column", line_number, source)
        current.append((surface, tag))

    if current:
        sentences.append(current)
    return sentences


def write_conll(sentences: Sequence[Sequence[Tuple[str, str]]]) -> str:
    """
    Render sentences in CoNLL form, the exact inverse of parse_conll.

    Raises:
        ConllWriteError: For empty sentences or columns holding TAB/newline.
    """
    blocks = []
    for index, sentence in enumerate(sentences):
        if not sentence:
            raise ConllWriteError(f"sentence {index} is empty")
        lines = []
        for surface, tag in sentence:
            for column, value in (("word", surface), ("tag", tag)):
                if not value or value.strip() != value or any(c in value for c in "\t\n\r"):
                    raise ConllWriteError(
                        f"sentence {index}: {column} {value!r} cannot be written as CoNLL"
                    )
            lines.append(f"{surface}\t{tag}\n")
        blocks.append("".join(lines))
    return "\n".join(blocks)


def read_conll_file(path) -> List[ConllSentence]:
    data = Path(path).read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        line_number = data.count(b"\n", 0, e.start) + 1
        raise ConllParseError(f"not valid UTF-8 (byte offset {e.start})", line_number, str(path)) from e
    return parse_conll(io.StringIO(text, newline=""), source=str(path))


def write_conll_file(path, sentences: Sequence[Sequence[Tuple[str, str]]]) -> None:
    text = write_conll(sentences)
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
