"""
Protocol NER - Corpus Loading and Writing

Three on-disk layouts are understood:

- a directory of standoff pairs (``<id>.txt`` + ``<id>.ann``);
- a directory of ``<id>.conll`` files, one protocol per file;
- a single CoNLL file, where every sentence counts as its own document
  (ids ``sent-00000``, ``sent-00001``, ...).

CoNLL input carries no text, so documents are rebuilt with tokens joined
by one space and sentences by a newline. Offsets of CoNLL-derived mentions
refer to that rebuilt text unless an original text is supplied.
"""

from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union
import logging

from ..core.errors import AlignmentError, LengthMismatchError, ProtocolNerError
from ..tagscheme import repair_bio, spans_from_tags, validate_bio
from .alignment import AlignmentConfig, tag_corpus
from .conll import ConllSentence, read_conll_file, write_conll_file
from .models import AnnotatedCorpus, EntityMention, ProtocolDocument, Sentence, Token
from .standoff import read_standoff_pair, read_utf8_text, write_standoff_pair

logger = logging.getLogger(__name__)

FORMATS = ("auto", "conll", "standoff")
CONLL_SUFFIX = ".conll"


def detect_format(path: Union[str, Path]) -> str:
    """Return "standoff" or "conll" for an existing path."""
    path = Path(path)
    if not path.exists():
        raise ProtocolNerError(f"no such file or directory: {path}")
    if path.is_file():
        return "conll"
    if any(path.glob("*.ann")) or any(path.glob("*.txt")):
        return "standoff"
    return "conll"


def _mentions_for(sentences: Sequence[Sentence], text: Optional[str], doc_id: str) -> List[EntityMention]:
    mentions: List[EntityMention] = []
    for sentence in sentences:
        tags = list(sentence.tags)
        if validate_bio(tags):
            logger.warning(f"{doc_id}: sentence {sentence.index} is not valid BIO, repaired for spans")
            tags = repair_bio(tags)
        mentions.extend(spans_from_tags(tags, sentence.tokens, text))
    return mentions


def document_from_conll(doc_id: str, conll_sentences: Sequence[ConllSentence]) -> Tuple[ProtocolDocument, List[Sentence]]:
    """Rebuild a document whose lines are the space-joined sentences."""
    lines: List[str] = []
    sentences: List[Sentence] = []
    offset = 0
    for index, conll_sentence in enumerate(conll_sentences):
        tokens = []
        cursor = offset
        for surface, _ in conll_sentence:
            tokens.append(Token(surface, cursor, cursor + len(surface), index))
            cursor += len(surface) + 1
        line = " ".join(surface for surface, _ in conll_sentence)
        lines.append(line)
        sentences.append(Sentence(doc_id, index, tuple(tokens), tuple(tag for _, tag in conll_sentence)))
        offset += len(line) + 1
    text = "".join(line + "\n" for line in lines)
    return ProtocolDocument.from_text(doc_id, text), sentences


def anchor_conll_document(
    document: ProtocolDocument,
    conll_sentences: Sequence[ConllSentence],
) -> List[Sentence]:
    """
    Place CoNLL tokens on an existing document text.

    Tokens are matched left to right; only whitespace may separate them.

    Raises:
        AlignmentError: If a token surface is not found where expected.
    """
    text = document.text
    step_ends = [end for _, end in document.steps]
    cursor = 0
    sentences = []
    for index, conll_sentence in enumerate(conll_sentences):
        tokens = []
        for surface, _ in conll_sentence:
            while cursor < len(text) and text[cursor].isspace():
                cursor += 1
            if not text.startswith(surface, cursor):
                raise AlignmentError(
                    f"{document.id}: token {surface!r} of sentence {index} not found at offset {cursor}"
                )
            step = next(i for i, end in enumerate(step_ends) if cursor < end)
            tokens.append(Token(surface, cursor, cursor + len(surface), step))
            cursor += len(surface)
        sentences.append(
            Sentence(document.id, index, tuple(tokens), tuple(tag for _, tag in conll_sentence))
        )
    return sentences


def corpus_from_conll_sentences(conll_sentences: Sequence[ConllSentence]) -> AnnotatedCorpus:
    """One document per sentence, ids sent-00000, sent-00001, ..."""
    corpus = AnnotatedCorpus()
    for index, conll_sentence in enumerate(conll_sentences):
        doc_id = f"sent-{index:05d}"
        document, sentences = document_from_conll(doc_id, [conll_sentence])
        corpus.add_document(document, _mentions_for(sentences, document.text, doc_id), sentences)
    return corpus


def read_conll_corpus(
    path: Union[str, Path],
    text_dir: Optional[Union[str, Path]] = None,
) -> AnnotatedCorpus:
    """
    Load a CoNLL file or directory of CoNLL files.

    Args:
        path: File or directory.
        text_dir: Directory of original ``<id>.txt`` files to anchor tokens
            on; only meaningful for a directory of per-protocol files.
    """
    path = Path(path)
    if path.is_file():
        return corpus_from_conll_sentences(read_conll_file(path))

    corpus = AnnotatedCorpus()

    for conll_path in sorted(path.glob(f"*{CONLL_SUFFIX}")):
        doc_id = conll_path.stem
        conll_sentences = read_conll_file(conll_path)
        original = Path(text_dir) / f"{doc_id}.txt" if text_dir else None
        if original is not None and original.exists():
            document = ProtocolDocument.from_text(doc_id, read_utf8_text(original))
            sentences = anchor_conll_document(document, conll_sentences)
            corpus.add_document(document, _mentions_for(sentences, document.text, doc_id), sentences)
        else:
            document, sentences = document_from_conll(doc_id, conll_sentences)
            corpus.add_document(document, _mentions_for(sentences, None, doc_id), sentences)
    return corpus


def read_standoff_corpus(
    path: Union[str, Path],
    config: Optional[AlignmentConfig] = None,
    tag: bool = True,
) -> AnnotatedCorpus:
    """Load every ``*.txt``/``*.ann`` pair of a directory, tokenized and tagged."""
    config = config or AlignmentConfig()
    corpus = AnnotatedCorpus(allow_overlap=config.allow_overlap)
    for txt_path in sorted(Path(path).glob("*.txt")):
        document, mentions = read_standoff_pair(txt_path)
        corpus.add_document(document, mentions)
    if tag:
        tag_corpus(corpus, config)
    return corpus


def load_corpus(
    path: Union[str, Path],
    fmt: str = "auto",
    config: Optional[AlignmentConfig] = None,
    text_dir: Optional[Union[str, Path]] = None,
) -> AnnotatedCorpus:
    """
    Load a tagged corpus from any supported layout.

    Args:
        path: Corpus location.
        fmt: "auto", "conll" or "standoff".
        config: Alignment policy for standoff input.
        text_dir: Original texts for CoNLL input.
    """
    if fmt not in FORMATS:
        raise ProtocolNerError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    if fmt == "auto":
        fmt = detect_format(path)
    logger.debug(f"loading {path} as {fmt}")
    if fmt == "standoff":
        return read_standoff_corpus(path, config)
    return read_conll_corpus(path, text_dir=text_dir)


def corpus_conll_sentences(corpus: AnnotatedCorpus, doc_ids: Optional[Sequence[str]] = None) -> List[ConllSentence]:
    return [
        list(zip(sentence.surfaces, sentence.tags)) for sentence in corpus.iter_sentences(doc_ids)
    ]


def write_corpus_conll(corpus: AnnotatedCorpus, path: Union[str, Path]) -> None:
    """
    Write a corpus as CoNLL.

    A path ending in ``.conll`` receives every sentence in one file;
    otherwise it is a directory receiving one file per protocol.
    """
    path = Path(path)
    if path.suffix == CONLL_SUFFIX:
        path.parent.mkdir(parents=True, exist_ok=True)
        write_conll_file(path, corpus_conll_sentences(corpus))
        return
    path.mkdir(parents=True, exist_ok=True)
    for doc_id in corpus.doc_ids:
        write_conll_file(path / f"{doc_id}{CONLL_SUFFIX}", corpus_conll_sentences(corpus, [doc_id]))


def write_corpus_standoff(corpus: AnnotatedCorpus, directory: Union[str, Path]) -> None:
    for doc_id, document in corpus.documents.items():
        mentions = sorted(corpus.mentions.get(doc_id, []), key=lambda m: m.sort_key)
        write_standoff_pair(Path(directory), document, mentions, allow_overlap=corpus.allow_overlap)


def with_predictions(corpus: AnnotatedCorpus, predictions: Sequence[Sequence[str]]) -> AnnotatedCorpus:
    """
    Copy of corpus whose sentence tags (and mentions) come from predictions.

    predictions holds one tag sequence per sentence, in iter_sentences order.

    Raises:
        LengthMismatchError: If counts of sentences or tokens differ.
    """
    sentences = corpus.all_sentences()
    if len(sentences) != len(predictions):
        raise LengthMismatchError(
            f"{len(predictions)} predicted sentences for {len(sentences)} corpus sentences"
        )
    by_doc: Dict[str, List[Sentence]] = {doc_id: [] for doc_id in corpus.doc_ids}
    for number, (sentence, tags) in enumerate(zip(sentences, predictions)):
        if len(tags) != len(sentence):
            raise LengthMismatchError(
                f"sentence {number}: {len(tags)} tags for {len(sentence)} tokens"
            )
        by_doc[sentence.doc_id].append(sentence.with_tags(tags))

    result = AnnotatedCorpus()
    for doc_id, document in corpus.documents.items():
        result.add_document(document, _mentions_for(by_doc[doc_id], document.text, doc_id), by_doc[doc_id])
    return result


def project_predictions(gold: AnnotatedCorpus, predicted: AnnotatedCorpus) -> AnnotatedCorpus:
    """
    Lay the predicted tags over the gold tokens, sentence by sentence.

    Used when the two corpora come from different layouts, e.g. CoNLL
    predictions for a standoff gold corpus.

    Raises:
        LengthMismatchError: If sentence counts or token surfaces differ.
    """
    gold_sentences = gold.all_sentences()
    predicted_sentences = predicted.all_sentences()
    if len(gold_sentences) != len(predicted_sentences):
        raise LengthMismatchError(
            f"{len(predicted_sentences)} predicted sentences for {len(gold_sentences)} gold sentences"
        )
    for number, (g, p) in enumerate(zip(gold_sentences, predicted_sentences)):
        if g.surfaces != p.surfaces:
            raise LengthMismatchError(f"sentence {number}: predicted tokens differ from gold tokens")
    return with_predictions(gold, [p.tags for p in predicted_sentences])
