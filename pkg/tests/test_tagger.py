"""
Tests for features, Viterbi decoding and perceptron training.
"""

import itertools

import numpy as np
import pytest

from protocol_ner.core.errors import LengthMismatchError, ModelFormatError, TrainingError
from protocol_ner.corpus.io import corpus_from_conll_sentences
from protocol_ner.corpus.models import AnnotatedCorpus
from protocol_ner.corpus.synthetic import separable_sentences
from protocol_ner.tagger import (
    FeatureExtractor,
    TaggerModel,
    TrainConfig,
    evaluate_f1,
    load_model,
    predict,
    save_model,
    train,
    viterbi,
    viterbi_decode,
)
from protocol_ner.tagger.features import word_shape
from protocol_ner.tagger.model import path_score
from protocol_ner.tagger.trainer import _Perceptron
from protocol_ner.tagscheme import LabelAlphabet, is_valid_bio
from protocol_ner.utils.jsonio import dump_json

ALPHABET = LabelAlphabet(["B-A", "I-A", "B-B", "I-B"])
VOCAB = ["add", "mix", "water", "tube", "the", "of", "5", "ml"]


def random_model(rng, enforce_bio=True):
    extractor = FeatureExtractor(window=1)
    features = sorted({f for w in VOCAB for f in extractor.token_features([w], 0)})
    features += ["w[-1]=<s>", "w[+1]=</s>"] + [f"w[-1]={w}" for w in VOCAB] + [f"w[+1]={w}" for w in VOCAB]
    index = {name: i for i, name in enumerate(dict.fromkeys(features))}
    return TaggerModel(
        ALPHABET,
        index,
        rng.normal(size=(len(index), len(ALPHABET))),
        rng.normal(size=(len(ALPHABET), len(ALPHABET))),
        window=1,
        enforce_bio=enforce_bio,
    )


class TestFeatures:
    def test_word_shape(self):
        assert word_shape("37°C") == "d°X"
        assert word_shape("Incubate") == "Xx"
        assert word_shape("12,000") == "d,d"

    def test_token_features(self):
        features = FeatureExtractor(window=1).token_features(["Add", "5", "ml"], 1)
        assert "bias" in features
        assert "w=5" in features
        assert "digit" in features
        assert "w[-1]=add" in features
        assert "w[+1]=ml" in features

    def test_sentence_edges(self):
        features = FeatureExtractor(window=2).sentence_features(["Spin"])[0]
        assert {"w[-1]=<s>", "w[-2]=<s>", "w[+1]=</s>", "w[+2]=</s>", "title"} <= set(features)

    def test_deterministic(self):
        extractor = FeatureExtractor()
        sentence = ["Add", "500", "µl", "of", "water", "."]
        assert extractor.sentence_features(sentence) == extractor.sentence_features(sentence)


class TestViterbi:
    def test_hand_set_two_by_two(self):
        emissions = np.array([[1.0, 0.0], [0.0, 2.0]])
        transitions = np.array([[0.0, -5.0], [1.0, 0.0]])
        scores = {
            path: path_score(emissions, transitions, path)
            for path in itertools.product(range(2), repeat=2)
        }
        assert scores == {(0, 0): 1.0, (0, 1): -2.0, (1, 0): 1.0, (1, 1): 2.0}
        assert viterbi(emissions, transitions) == ([1, 1], 2.0)

    def test_ties_go_to_lowest_index(self):
        assert viterbi(np.zeros((3, 4)), np.zeros((4, 4))) == ([0, 0, 0], 0.0)

    def test_empty(self):
        assert viterbi(np.zeros((0, 3)), np.zeros((3, 3))) == ([], 0.0)

    def test_matches_exhaustive_search(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            size = int(rng.integers(2, 6))
            length = int(rng.integers(1, 6))
            emissions = rng.normal(size=(length, size))
            transitions = rng.normal(size=(size, size))
            transitions[rng.random((size, size)) < 0.2] = -np.inf
            start = rng.random(size) < 0.8
            start[0] = True
            path, score = viterbi(emissions, transitions, start)
            best = max(
                path_score(emissions, transitions, p, start)
                for p in itertools.product(range(size), repeat=length)
            )
            assert score == best
            assert path_score(emissions, transitions, path, start) == score


class TestTaggerModel:
    def test_zero_weights_give_first_tag(self):
        model = TaggerModel(ALPHABET, {"bias": 0})
        assert model.decode(["a", "b", "c"]) == ["B-A", "B-A", "B-A"]

    def test_empty_sentence(self):
        assert TaggerModel(ALPHABET, {"bias": 0}).decode([]) == []

    def test_decode_is_argmax_and_valid(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            model = random_model(rng)
            surfaces = [VOCAB[int(i)] for i in rng.integers(len(VOCAB), size=int(rng.integers(1, 5)))]
            decoded = model.decode(surfaces)
            assert is_valid_bio(decoded)
            best = model.sequence_score(surfaces, decoded)
            everything = [
                model.sequence_score(surfaces, list(tags))
                for tags in itertools.product(ALPHABET.tags, repeat=len(surfaces))
            ]
            assert best == max(everything)

    def test_viterbi_decode_is_what_predict_uses(self):
        rng = np.random.default_rng(3)
        model = random_model(rng)
        sentences = separable_corpus(5, seed=3).all_sentences()
        expected = [viterbi_decode(model, s.surfaces) for s in sentences]
        assert expected == [model.decode(s.surfaces) for s in sentences]
        assert predict(model, sentences) == expected

    def test_decode_beats_random_sequences(self):
        rng = np.random.default_rng(2)
        model = random_model(rng, enforce_bio=False)
        surfaces = ["add", "5", "ml", "of", "water", "to", "the", "tube"]
        best = model.sequence_score(surfaces, model.decode(surfaces))
        for _ in range(1000):
            tags = [ALPHABET.tags[int(i)] for i in rng.integers(len(ALPHABET), size=len(surfaces))]
            assert best >= model.sequence_score(surfaces, tags)

    def test_illegal_sequence_scores_minus_infinity(self):
        model = TaggerModel(ALPHABET, {"bias": 0})
        assert model.sequence_score(["a", "b"], ["O", "I-A"]) == float("-inf")
        assert model.sequence_score(["a"], ["I-A"]) == float("-inf")
        with pytest.raises(LengthMismatchError):
            model.sequence_score(["a"], ["O", "O"])

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ModelFormatError):
            TaggerModel(ALPHABET, {"bias": 0}, np.zeros((2, 5)))

    def test_save_and_load(self, tmp_path):
        model = random_model(np.random.default_rng(4))
        save_model(model, tmp_path / "model.json")
        loaded = load_model(tmp_path / "model.json")
        assert loaded.alphabet == model.alphabet
        assert loaded.feature_index == model.feature_index
        np.testing.assert_array_equal(loaded.emission, model.emission)
        np.testing.assert_array_equal(loaded.transition, model.transition)
        assert loaded.decode(["add", "water"]) == model.decode(["add", "water"])

    def test_load_rejects_other_versions(self, tmp_path):
        dump_json({"format_version": 99}, tmp_path / "model.json")
        with pytest.raises(ModelFormatError):
            load_model(tmp_path / "model.json")

    def test_load_rejects_non_json(self, tmp_path):
        (tmp_path / "model.json").write_text("not json", encoding="utf-8")
        with pytest.raises(ModelFormatError):
            load_model(tmp_path / "model.json")


def separable_corpus(n_sentences, seed):
    return corpus_from_conll_sentences(separable_sentences(n_sentences, seed))


class TestTraining:
    def test_separable_corpus(self):
        training = separable_corpus(200, seed=1)
        held_out = separable_corpus(50, seed=2)
        model = train(training, TrainConfig(max_epochs=30, patience=3), validation=held_out)
        assert evaluate_f1(model, training.all_sentences()) >= 0.99
        assert evaluate_f1(model, held_out.all_sentences()) >= 0.90
        assert 1 <= len(model.history) <= 30

    def test_deterministic(self):
        training = separable_corpus(40, seed=3)
        held_out = separable_corpus(10, seed=4)
        config = TrainConfig(max_epochs=4, seed=9)
        first = train(training, config, validation=held_out)
        second = train(training, config, validation=held_out)
        assert first.to_dict() == second.to_dict()

    def test_best_model_is_returned(self):
        training = separable_corpus(30, seed=5)
        held_out = separable_corpus(10, seed=6)
        model = train(training, TrainConfig(max_epochs=8, patience=2), validation=held_out)
        f1s = [record.validation_f1 for record in model.history]
        assert evaluate_f1(model, held_out.all_sentences()) == max(f1s)
        best_epoch = f1s.index(max(f1s)) + 1
        if len(f1s) < 8:
            assert len(f1s) - best_epoch == 2

    def test_predict_on_sample(self, sample_corpus):
        model = train(sample_corpus, TrainConfig(max_epochs=3))
        predictions = predict(model, sample_corpus)
        sentences = sample_corpus.all_sentences()
        assert [len(p) for p in predictions] == [len(s) for s in sentences]
        assert all(is_valid_bio(p) for p in predictions)
        assert set(model.alphabet.labels) == {
            "Action", "Amount", "Location", "Method", "Modifier", "Reagent", "Speed", "Temperature", "Time",
        }

    def test_predict_empty_corpus(self, sample_corpus):
        model = train(sample_corpus, TrainConfig(max_epochs=1))
        assert predict(model, AnnotatedCorpus()) == []

    def test_empty_training_set(self):
        with pytest.raises(TrainingError):
            train(AnnotatedCorpus())

    @pytest.mark.parametrize("values", [{"max_epochs": 0}, {"patience": 0}, {"window": -1}])
    def test_invalid_config(self, values):
        with pytest.raises(TrainingError):
            TrainConfig(**values)


def feature_counts(ids, path, n_features, n_tags):
    emission = np.zeros((n_features, n_tags))
    transition = np.zeros((n_tags, n_tags))
    for k, tag in enumerate(path):
        for row in ids[k]:
            emission[row, tag] += 1
        if k:
            transition[path[k - 1], tag] += 1
    return emission, transition


def perceptron_state(weights):
    return [a.copy() for a in (weights.emission, weights.transition, weights.emission_acc, weights.transition_acc)]


class TestPerceptronUpdates:
    IDS = [np.array([0, 1]), np.array([1, 2, 2]), np.array([3])]

    def make_weights(self):
        weights = _Perceptron(4, 3)
        rng = np.random.default_rng(11)
        weights.emission[:] = rng.normal(size=(4, 3))
        weights.transition[:] = rng.normal(size=(3, 3))
        weights.emission_acc[:] = rng.normal(size=(4, 3))
        weights.transition_acc[:] = rng.normal(size=(3, 3))
        weights.counter = 5
        return weights

    def test_correct_prediction_changes_nothing(self):
        weights = self.make_weights()
        before = perceptron_state(weights)
        weights.update(self.IDS, [0, 1, 2], [0, 1, 2])
        for old, new in zip(before, perceptron_state(weights)):
            np.testing.assert_array_equal(old, new)

    def test_mistake_adds_gold_and_subtracts_predicted(self):
        weights = self.make_weights()
        before = perceptron_state(weights)
        gold, predicted = [0, 1, 2], [2, 0, 2]
        weights.update(self.IDS, gold, predicted)

        gold_emission, gold_transition = feature_counts(self.IDS, gold, 4, 3)
        pred_emission, pred_transition = feature_counts(self.IDS, predicted, 4, 3)
        d_emission = gold_emission - pred_emission
        d_transition = gold_transition - pred_transition
        expected = [d_emission, d_transition, 5 * d_emission, 5 * d_transition]
        for old, new, delta in zip(before, perceptron_state(weights), expected):
            np.testing.assert_allclose(new - old, delta)

    def test_training_without_mistakes_keeps_zero_weights(self):
        corpus = corpus_from_conll_sentences([[("Add", "O"), ("water", "O")], [("Mix", "O")]])
        model = train(corpus, TrainConfig(max_epochs=3, patience=5))
        assert model.alphabet.tags == ("O",)
        assert [record.mistakes for record in model.history] == [0, 0, 0]
        assert not model.emission.any()
        assert not model.transition.any()

    def test_single_mistake_is_one_averaged_update(self):
        surfaces = ["Add", "water"]
        corpus = corpus_from_conll_sentences([list(zip(surfaces, ["B-Action", "O"]))])
        model = train(corpus, TrainConfig(max_epochs=1))
        assert [record.mistakes for record in model.history] == [1]

        alphabet = model.alphabet
        initial = TaggerModel(alphabet, model.feature_index, window=model.window).decode(surfaces)
        ids = model.feature_ids(surfaces)
        n_features, n_tags = len(model.feature_index), len(alphabet)
        gold_emission, gold_transition = feature_counts(ids, alphabet.encode(["B-Action", "O"]), n_features, n_tags)
        pred_emission, pred_transition = feature_counts(ids, alphabet.encode(initial), n_features, n_tags)
        # one update at counter 1, averaged over counter 2
        np.testing.assert_allclose(model.emission, (gold_emission - pred_emission) / 2)
        np.testing.assert_allclose(model.transition, (gold_transition - pred_transition) / 2)
