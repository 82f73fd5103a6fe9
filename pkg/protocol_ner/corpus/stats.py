"""
Protocol NER - Corpus Statistics

Entity frequencies, protocol/sentence counts and out-of-vocabulary
figures for a tokenized, tagged corpus.
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Optional, Set, Union

from ..tagscheme import OUTSIDE, parse_tag
from .models import AnnotatedCorpus


@dataclass
class StatsReport:
    """
    JSON schema (keys sorted on output)::

        protocols, sentences, tokens, vocabulary: int
        token_counts: {label | "O": int}   tokens per entity type
        entity_counts: {label: int}        mentions per entity type
        reference: null | {vocabulary, oov, in_reference, oov_tokens}
    """

    protocols: int
    sentences: int
    tokens: int
    vocabulary: int
    token_counts: Dict[str, int] = field(default_factory=dict)
    entity_counts: Dict[str, int] = field(default_factory=dict)
    reference_vocabulary: Optional[int] = None
    oov: Optional[int] = None
    in_reference: Optional[int] = None
    oov_tokens: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "protocols": self.protocols,
            "sentences": self.sentences,
            "tokens": self.tokens,
            "vocabulary": self.vocabulary,
            "token_counts": dict(sorted(self.token_counts.items())),
            "entity_counts": dict(sorted(self.entity_counts.items())),
            "reference": None,
        }
        if self.oov is not None:
            data["reference"] = {
                "vocabulary": self.reference_vocabulary,
                "oov": self.oov,
                "in_reference": self.in_reference,
                "oov_tokens": self.oov_tokens,
            }
        return data


def vocabulary_of(corpus: AnnotatedCorpus) -> Set[str]:
    return {token.surface for sentence in corpus.iter_sentences() for token in sentence.tokens}


def corpus_stats(
    corpus: AnnotatedCorpus,
    reference: Optional[Union[AnnotatedCorpus, Iterable[AnnotatedCorpus]]] = None,
) -> StatsReport:
    """
    Summarize a tagged corpus.

    Args:
        corpus: Tokenized and tagged corpus.
        reference: Corpus, or several corpora whose union is used, defining
            the known vocabulary for OOV counts.
    """
    token_counts: Counter = Counter()
    n_sentences = 0
    n_tokens = 0
    for sentence in corpus.iter_sentences():
        n_sentences += 1
        n_tokens += len(sentence)
        for tag in sentence.tags:
            token_counts[OUTSIDE if tag == OUTSIDE else parse_tag(tag).label] += 1

    entity_counts: Counter = Counter(
        mention.label for mentions in corpus.mentions.values() for mention in mentions
    )
    vocab = vocabulary_of(corpus)
    report = StatsReport(
        protocols=len(corpus),
        sentences=n_sentences,
        tokens=n_tokens,
        vocabulary=len(vocab),
        token_counts=dict(token_counts),
        entity_counts=dict(entity_counts),
    )

    if reference is not None:
        references = [reference] if isinstance(reference, AnnotatedCorpus) else list(reference)
        known: Set[str] = set()
        for ref in references:
            known |= vocabulary_of(ref)
        report.reference_vocabulary = len(known)
        report.oov = len(vocab - known)
        report.in_reference = len(vocab & known)
        report.oov_tokens = sum(
            1
            for sentence in corpus.iter_sentences()
            for token in sentence.tokens
            if token.surface not in known
        )
    return report
