"""
Tests for tokenization and mention/token alignment.
"""

import pytest

from protocol_ner.core.errors import AlignmentError, OverlapError
from protocol_ner.corpus.alignment import AlignmentConfig, align_mentions_to_tags, build_sentences, tag_corpus
from protocol_ner.corpus.models import AnnotatedCorpus, EntityMention, ProtocolDocument
from protocol_ner.corpus.tokenizer import tokenize, tokenize_text


def surfaces(tokens):
    return [t.surface for t in tokens]


class TestTokenizer:
    def test_offsets(self):
        tokens = tokenize_text("Put 3.68 g")
        assert surfaces(tokens) == ["Put", "3.68", "g"]
        assert [(t.start, t.end) for t in tokens] == [(0, 3), (4, 8), (9, 10)]

    def test_empty(self):
        assert tokenize_text("") == []

    def test_symbols_and_trailing_punctuation(self):
        assert surfaces(tokenize_text("37°C.")) == ["37", "°", "C", "."]

    def test_interior_punctuation_kept(self):
        assert surfaces(tokenize_text("5-10 min at 12,000 x g")) == ["5-10", "min", "at", "12,000", "x", "g"]

    def test_edge_punctuation_peeled(self):
        assert surfaces(tokenize_text("(pH 8.0), 70%")) == ["(", "pH", "8.0", ")", ",", "70", "%"]

    def test_tokens_slice_the_text(self):
        text = "Title\nAdd 500 µl of (TE) buffer.\n\nSpin at 4°C."
        document = ProtocolDocument.from_text("d", text)
        tokens = tokenize(document)
        assert all(text[t.start : t.end] == t.surface for t in tokens)
        assert sorted({t.sentence_index for t in tokens}) == [0, 1, 3]
        covered = {i for t in tokens for i in range(t.start, t.end)}
        assert covered == {i for i, c in enumerate(text) if not c.isspace()}


class TestAlignment:
    def setup_method(self):
        self.tokens = tokenize_text("Put 3.68 g")

    def test_single_token_mention(self):
        tags = align_mentions_to_tags(self.tokens, [EntityMention("Action", 0, 3, "Put")])
        assert tags == {0: ["B-Action", "O", "O"]}

    def test_no_mentions(self):
        assert align_mentions_to_tags(self.tokens, []) == {0: ["O", "O", "O"]}

    def test_multi_token_mention(self):
        tags = align_mentions_to_tags(self.tokens, [EntityMention("Amount", 4, 10, "3.68 g")])
        assert tags == {0: ["O", "B-Amount", "I-Amount"]}

    def test_boundary_inside_token(self):
        tokens = tokenize_text("Centrifuge briefly")
        mention = EntityMention("Action", 0, 6, "Centri")
        with pytest.raises(AlignmentError):
            align_mentions_to_tags(tokens, [mention])
        assert align_mentions_to_tags(tokens, [mention], snap=True) == {0: ["B-Action", "O"]}

    def test_overlapping_mentions(self):
        mentions = [EntityMention("Amount", 4, 10, "3.68 g"), EntityMention("Size", 4, 8, "3.68")]
        with pytest.raises(OverlapError):
            align_mentions_to_tags(self.tokens, mentions)

    def test_mention_across_steps(self):
        document = ProtocolDocument.from_text("d", "Add\nbuffer\n")
        with pytest.raises(AlignmentError):
            build_sentences(document, [EntityMention("Reagent", 0, 10, "Add\nbuffer")])

    def test_sentences_per_step(self):
        document = ProtocolDocument.from_text("d", "Add water\nMix gently\n")
        mentions = [
            EntityMention("Action", 0, 3, "Add"),
            EntityMention("Reagent", 4, 9, "water"),
            EntityMention("Action", 10, 13, "Mix"),
        ]
        sentences = build_sentences(document, mentions)
        assert [s.tags for s in sentences] == [("B-Action", "B-Reagent"), ("B-Action", "O")]
        assert [s.index for s in sentences] == [0, 1]

    def test_tag_corpus_names_document(self):
        corpus = AnnotatedCorpus()
        document = ProtocolDocument.from_text("bad_doc", "Centrifuge briefly\n")
        corpus.add_document(document, [EntityMention("Action", 0, 6, "Centri")])
        with pytest.raises(AlignmentError, match="bad_doc"):
            tag_corpus(corpus)
        tag_corpus(corpus, AlignmentConfig(snap=True))
        assert corpus.sentences["bad_doc"][0].tags == ("B-Action", "O")


def test_corpus_rejects_overlaps_unless_allowed():
    document = ProtocolDocument.from_text("d", "lysis buffer")
    mentions = [EntityMention("Reagent", 0, 12, "lysis buffer"), EntityMention("Method", 0, 5, "lysis")]
    with pytest.raises(OverlapError):
        AnnotatedCorpus().add_document(document, mentions)
    corpus = AnnotatedCorpus(allow_overlap=True)
    corpus.add_document(document, mentions)
    assert len(corpus.mentions["d"]) == 2


def test_sample_corpus_shape(sample_corpus):
    assert sample_corpus.doc_ids == ["protocol_001", "protocol_002", "protocol_003"]
    assert sample_corpus.is_tagged
    assert len(sample_corpus.all_sentences()) == 15
    assert sum(len(s) for s in sample_corpus.all_sentences()) == 105
    last = sample_corpus.sentences["protocol_003"][-1]
    assert last.surfaces == ["Wash", "the", "pellet", "with", "70", "%", "ethanol", "."]
    assert last.tags == ("B-Action", "O", "B-Reagent", "O", "B-Reagent", "I-Reagent", "I-Reagent", "O")
