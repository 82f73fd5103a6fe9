"""
Tests for corpus statistics, splits and corpus loading helpers.
"""

import pytest

from protocol_ner.core.errors import LengthMismatchError, SplitError
from protocol_ner.corpus.alignment import tag_corpus
from protocol_ner.corpus.io import (
    corpus_from_conll_sentences,
    load_corpus,
    project_predictions,
    read_conll_corpus,
    with_predictions,
    write_corpus_conll,
)
from protocol_ner.corpus.models import AnnotatedCorpus, EntityMention, ProtocolDocument
from protocol_ner.corpus.split import SplitSpec, generate_split, generate_splits, train_size
from protocol_ner.corpus.stats import corpus_stats

SAMPLE_ENTITY_COUNTS = {
    "Action": 12,
    "Amount": 4,
    "Location": 4,
    "Method": 1,
    "Modifier": 1,
    "Reagent": 11,
    "Speed": 1,
    "Temperature": 2,
    "Time": 4,
}


def toy_corpus():
    corpus = AnnotatedCorpus()
    first = ProtocolDocument.from_text("a", "Add water\nMix gently\n")
    corpus.add_document(
        first,
        [
            EntityMention.from_text(first.text, "Action", 0, 3),
            EntityMention.from_text(first.text, "Reagent", 4, 9),
            EntityMention.from_text(first.text, "Action", 10, 13),
        ],
    )
    second = ProtocolDocument.from_text("b", "Add salt to the new tube\n")
    corpus.add_document(second, [EntityMention.from_text(second.text, "Action", 0, 3)])
    return tag_corpus(corpus)


class TestCorpusStats:
    def test_hand_counted_toy(self):
        report = corpus_stats(toy_corpus())
        assert report.protocols == 2
        assert report.sentences == 3
        assert report.tokens == 10
        assert report.vocabulary == 9
        assert report.token_counts == {"Action": 3, "Reagent": 1, "O": 6}
        assert report.entity_counts == {"Action": 3, "Reagent": 1}
        assert report.to_dict()["reference"] is None

    def test_reference_is_itself(self):
        corpus = toy_corpus()
        report = corpus_stats(corpus, corpus)
        assert report.oov == 0
        assert report.oov_tokens == 0
        assert report.in_reference == report.vocabulary

    def test_oov_against_other_corpus(self):
        corpus = toy_corpus()
        reference = corpus.subset(["b"])
        data = corpus_stats(corpus, [reference]).to_dict()
        assert data["reference"] == {"vocabulary": 6, "oov": 3, "in_reference": 6, "oov_tokens": 3}

    def test_bundled_sample(self, sample_corpus):
        report = corpus_stats(sample_corpus)
        assert report.protocols == 3
        assert report.sentences == 15
        assert report.tokens == 105
        assert report.entity_counts == SAMPLE_ENTITY_COUNTS
        assert sum(report.token_counts.values()) == 105
        assert report.vocabulary == 63
        assert report.token_counts["O"] == 46


class TestSplits:
    ids = [f"doc_{i:02d}" for i in range(10)]

    def test_sizes(self):
        split = generate_split(self.ids, seed=1, train_fraction=0.8)
        assert len(split.train_ids) == 8
        assert len(split.validation_ids) == 2
        assert sorted(split.train_ids + split.validation_ids) == self.ids

    def test_deterministic_and_order_independent(self):
        first = generate_split(self.ids, seed=7, train_fraction=0.8)
        assert generate_split(self.ids, seed=7, train_fraction=0.8) == first
        assert generate_split(list(reversed(self.ids)), seed=7, train_fraction=0.8) == first
        assert first.verify()

    def test_dict_round_trip(self):
        split = generate_split(self.ids, seed=3, train_fraction=0.7)
        assert SplitSpec.from_dict(split.to_dict()) == split

    def test_malformed_split_file(self):
        with pytest.raises(SplitError):
            SplitSpec.from_dict({"seed": 1, "train": ["a"]})
        with pytest.raises(SplitError):
            SplitSpec.from_dict({"seed": 1, "train_fraction": 0.5, "train": ["a"], "validation": ["a"]})

    def test_rounding_halves_up(self):
        assert train_size(5, 0.5) == 3
        assert train_size(10, 0.8) == 8
        assert train_size(3, 0.8) == 2

    @pytest.mark.parametrize("fraction", [0.0, 1.0, -0.2, 1.5])
    def test_fraction_out_of_range(self, fraction):
        with pytest.raises(SplitError):
            generate_split(self.ids, seed=0, train_fraction=fraction)

    def test_empty_side(self):
        with pytest.raises(SplitError):
            generate_split(["a", "b"], seed=0, train_fraction=0.9)

    def test_empty_and_duplicate_ids(self):
        with pytest.raises(SplitError):
            generate_split([], seed=0, train_fraction=0.5)
        with pytest.raises(SplitError):
            generate_split(["a", "a", "b"], seed=0, train_fraction=0.5)

    def test_eleven_seeds(self):
        ids = [f"doc_{i:02d}" for i in range(20)]
        splits, collisions = generate_splits(ids, range(1, 12), 0.8)
        assert len(splits) == 11
        assert [s.seed for s in splits] == list(range(1, 12))
        assert len({s.key() for s in splits}) == 11 - len(collisions)

    def test_collisions_reported(self):
        splits, collisions = generate_splits(["a", "b", "c"], range(10), 0.5)
        assert len({s.key() for s in splits}) <= 3
        assert len(collisions) >= 7


class TestCorpusIo:
    def test_single_conll_file_one_document_per_sentence(self, tmp_path):
        path = tmp_path / "x.conll"
        path.write_text("Add\tB-Action\nwater\tB-Reagent\n\nMix\tB-Action\n", encoding="utf-8")
        corpus = load_corpus(path)
        assert corpus.doc_ids == ["sent-00000", "sent-00001"]
        assert corpus.documents["sent-00000"].text == "Add water\n"
        assert corpus.mentions["sent-00000"] == [
            EntityMention("Action", 0, 3, "Add"),
            EntityMention("Reagent", 4, 9, "water"),
        ]

    def test_conll_directory_anchored_on_text(self, tmp_path, sample_dir, sample_corpus):
        write_corpus_conll(sample_corpus, tmp_path / "conll")
        assert sorted(p.name for p in (tmp_path / "conll").iterdir()) == [
            "protocol_001.conll",
            "protocol_002.conll",
            "protocol_003.conll",
        ]
        anchored = read_conll_corpus(tmp_path / "conll", text_dir=sample_dir)
        assert anchored.documents == sample_corpus.documents
        assert anchored.mentions == sample_corpus.mentions

    def test_with_predictions(self, sample_corpus):
        outside = [["O"] * len(s) for s in sample_corpus.all_sentences()]
        blank = with_predictions(sample_corpus, outside)
        assert all(not m for m in blank.mentions.values())
        with pytest.raises(LengthMismatchError):
            with_predictions(sample_corpus, outside[:-1])

    def test_project_predictions(self, sample_corpus):
        conll = [list(zip(s.surfaces, s.tags)) for s in sample_corpus.all_sentences()]
        projected = project_predictions(sample_corpus, corpus_from_conll_sentences(conll))
        assert projected.mentions == sample_corpus.mentions
        with pytest.raises(LengthMismatchError):
            project_predictions(sample_corpus, corpus_from_conll_sentences(conll[:-1]))
