"""
protocol_ner.corpus - Protocol documents, annotations and their file formats.

Loading whole corpora (``corpus.io``) and statistics (``corpus.stats``)
depend on the tag scheme and are imported from their modules directly.
"""

from .alignment import AlignmentConfig, align_mentions_to_tags, build_sentences, tag_corpus
from .conll import parse_conll, write_conll
from .models import AnnotatedCorpus, EntityMention, ProtocolDocument, Sentence, Token
from .split import SplitSpec, generate_split, generate_splits
from .standoff import parse_standoff, write_standoff
from .tokenizer import tokenize

__all__ = [
    "AlignmentConfig",
    "AnnotatedCorpus",
    "EntityMention",
    "ProtocolDocument",
    "Sentence",
    "SplitSpec",
    "Token",
    "align_mentions_to_tags",
    "build_sentences",
    "generate_split",
    "generate_splits",
    "parse_conll",
    "parse_standoff",
    "tag_corpus",
    "tokenize",
    "write_conll",
    "write_standoff",
]
