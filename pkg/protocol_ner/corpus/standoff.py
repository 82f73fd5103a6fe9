"""
Protocol NER - Standoff Format

A protocol is a ``<id>.txt`` / ``<id>.ann`` pair sharing a base name.
Entity annotations are text-bound lines::

    T1<TAB>Action 0 3<TAB>Put

Offsets index the UTF-8 decoded text by code point. Relation, event,
attribute and note lines are skipped; only entities are read.
"""

import re
from pathlib import Path
from typing import Iterable, List, Sequence, Tuple, Union
import logging

from ..core.errors import OffsetError, OverlapError, StandoffParseError
from .models import EntityMention, ProtocolDocument, find_overlaps

logger = logging.getLogger(__name__)

TEXTBOUND_RE = re.compile(r"^(T\d+)\t(\S+) (\d+) (\d+)\t(.*)$")
DISCONTINUOUS_RE = re.compile(r"^T\d+\t\S+ \d+ \d+(;\d+ \d+)+\t")


def _read_stream(stream: Union[str, Iterable[str]]) -> str:
    if isinstance(stream, str):
        return stream
    if hasattr(stream, "read"):
        return stream.read()
    return "".join(stream)


def parse_standoff(
    txt: Union[str, Iterable[str]],
    ann: Union[str, Iterable[str]],
    doc_id: str,
) -> Tuple[ProtocolDocument, List[EntityMention]]:
    """
    Parse a text/annotation pair.

    Args:
        txt: Protocol text (stream or string).
        ann: Annotation file content (stream or string).
        doc_id: Base file name without extension.

    Returns:
        (document, mentions) with mentions in file order.

    Raises:
        StandoffParseError: For malformed T-lines, out-of-range offsets or
            surfaces that differ from the text slice.
    """
    text = _read_stream(txt)
    document = ProtocolDocument.from_text(doc_id, text)
    mentions: List[EntityMention] = []
    skipped = 0

    for line_number, raw in enumerate(_read_stream(ann).split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip():
            continue
        if not line.startswith("T"):
            skipped += 1
            continue
        if DISCONTINUOUS_RE.match(line):
            raise StandoffParseError(
                "discontinuous spans are not supported", line_number, source=doc_id
            )
        match = TEXTBOUND_RE.match(line)
        if not match:
            raise StandoffParseError(
                f"malformed text-bound annotation: {line!r}", line_number, source=doc_id
            )
        ann_id, label, start, end, surface = match.groups()
        start, end = int(start), int(end)
        if not 0 <= start < end <= len(text):
            raise StandoffParseError(
                f"offsets {start}..{end} outside text of length {len(text)}",
                line_number,
                ann_id,
                source=doc_id,
            )
        if text[start:end] != surface:
            raise StandoffParseError(
                f"surface {surface!r} does not match text {text[start:end]!r}",
                line_number,
                ann_id,
                source=doc_id,
            )
        mentions.append(EntityMention(label, start, end, surface))

    if skipped:
        logger.warning(f"{doc_id}: skipped {skipped} non-entity annotation lines")
    return document, mentions


def write_standoff(
    document: ProtocolDocument,
    mentions: Sequence[EntityMention],
    allow_overlap: bool = False,
) -> Tuple[str, str]:
    """
    Render a document as (txt, ann) content; ids run T1..Tn in mention order.

    Raises:
        OverlapError: For overlapping mentions unless allow_overlap is set.
        OffsetError: For mentions that do not fit the text or span a newline.
    """
    if not allow_overlap and find_overlaps(mentions):
        first, second = find_overlaps(mentions)[0]
        raise OverlapError(
            f"{document.id}: overlapping mentions {first.start}..{first.end} "
            f"and {second.start}..{second.end}"
        )
    lines = []
    for number, mention in enumerate(mentions, start=1):
        mention.check_text(document.text)
        if "\n" in mention.surface or "\r" in mention.surface:
            raise OffsetError(
                f"{document.id}: mention {mention.start}..{mention.end} spans a line break"
            )
        lines.append(f"T{number}\t{mention.label} {mention.start} {mention.end}\t{mention.surface}\n")
    return document.text, "".join(lines)


def read_utf8_text(path: Path) -> str:
    """Read a UTF-8 file without newline translation."""
    data = Path(path).read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line_number = data.count(b"\n", 0, e.start) + 1
        raise StandoffParseError(
            f"not valid UTF-8 (byte offset {e.start})", line_number=line_number, source=str(path)
        ) from e


def read_standoff_pair(txt_path: Path) -> Tuple[ProtocolDocument, List[EntityMention]]:
    """Read ``<id>.txt`` and its sibling ``<id>.ann`` (missing .ann means no mentions)."""
    txt_path = Path(txt_path)
    ann_path = txt_path.with_suffix(".ann")
    text = read_utf8_text(txt_path)
    ann = ""
    if ann_path.exists():
        ann = read_utf8_text(ann_path)
    else:
        logger.warning(f"{txt_path.stem}: no .ann file, treating as unannotated")
    try:
        return parse_standoff(text, ann, txt_path.stem)
    except StandoffParseError as e:
        raise StandoffParseError(f"{ann_path}: {e}") from e


def write_standoff_pair(
    directory: Path,
    document: ProtocolDocument,
    mentions: Sequence[EntityMention],
    allow_overlap: bool = False,
) -> Tuple[Path, Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    text, ann = write_standoff(document, mentions, allow_overlap=allow_overlap)
    txt_path = directory / f"{document.id}.txt"
    ann_path = directory / f"{document.id}.ann"
    with open(txt_path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    with open(ann_path, "w", encoding="utf-8", newline="") as f:
        f.write(ann)
    return txt_path, ann_path
