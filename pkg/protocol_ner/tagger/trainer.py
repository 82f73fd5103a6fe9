"""
Protocol NER - Perceptron Training

Averaged structured perceptron with patience-based early stopping.

Each epoch visits the training sentences in a seeded order, decodes with
the current weights and, only when the decoded tags differ from gold,
adds the gold features/transitions and subtracts the predicted ones.
Averages are maintained lazily (w - u / c). After every epoch the averaged
model is scored on the validation sentences (exact micro-F1 over spans);
the best-scoring one is returned.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Union
import logging

import numpy as np

from ..core.errors import TrainingError
from ..corpus.models import AnnotatedCorpus, Sentence
from ..eval.scoring import exact_micro_f1
from ..tagscheme import LabelAlphabet, repair_bio, spans_from_tags
from .features import FeatureExtractor
from .model import EpochRecord, TaggerModel, viterbi, viterbi_decode

logger = logging.getLogger(__name__)

SentenceSource = Union[AnnotatedCorpus, Sequence[Sentence]]


@dataclass
class TrainConfig:
    window: int = 2
    max_epochs: int = 30
    patience: int = 3
    seed: int = 0
    enforce_bio: bool = True

    def __post_init__(self):
        if self.max_epochs < 1:
            raise TrainingError(f"max_epochs must be >= 1, got {self.max_epochs}")
        if self.patience < 1:
            raise TrainingError(f"patience must be >= 1, got {self.patience}")
        if self.window < 0:
            raise TrainingError(f"window must be >= 0, got {self.window}")


def _sentences(source: SentenceSource) -> List[Sentence]:
    if isinstance(source, AnnotatedCorpus):
        return source.all_sentences()
    return list(source)


def _entities(sentence: Sentence, tags: Sequence[str]):
    return spans_from_tags(repair_bio(tags), sentence.tokens)


def evaluate_f1(model: TaggerModel, sentences: Sequence[Sentence]) -> float:
    """Exact micro-F1 of model predictions on tagged sentences."""
    predicted = [_entities(s, model.decode(s.surfaces)) for s in sentences]
    gold = [_entities(s, s.tags) for s in sentences]
    return exact_micro_f1(predicted, gold)


class _Perceptron:
    """Working weights plus the accumulators needed for averaging."""

    def __init__(self, n_features: int, n_tags: int):
        self.emission = np.zeros((n_features, n_tags))
        self.transition = np.zeros((n_tags, n_tags))
        self.emission_acc = np.zeros((n_features, n_tags))
        self.transition_acc = np.zeros((n_tags, n_tags))
        self.counter = 1

    def update(self, ids: List[np.ndarray], gold: List[int], predicted: List[int]) -> None:
        c = self.counter
        for k, (g, p) in enumerate(zip(gold, predicted)):
            if g != p:
                np.add.at(self.emission, (ids[k], g), 1.0)
                np.add.at(self.emission, (ids[k], p), -1.0)
                np.add.at(self.emission_acc, (ids[k], g), c)
                np.add.at(self.emission_acc, (ids[k], p), -c)
        for k in range(1, len(gold)):
            gold_pair = (gold[k - 1], gold[k])
            pred_pair = (predicted[k - 1], predicted[k])
            if gold_pair != pred_pair:
                self.transition[gold_pair] += 1.0
                self.transition[pred_pair] -= 1.0
                self.transition_acc[gold_pair] += c
                self.transition_acc[pred_pair] -= c

    def averaged(self):
        return (
            self.emission - self.emission_acc / self.counter,
            self.transition - self.transition_acc / self.counter,
        )


def train(
    corpus: SentenceSource,
    config: Optional[TrainConfig] = None,
    validation: Optional[SentenceSource] = None,
) -> TaggerModel:
    """
    Train a tagger.

    Args:
        corpus: Tagged training sentences, or a tagged corpus.
        config: Training settings; defaults when omitted.
        validation: Held-out tagged sentences for early stopping. Without
            them the training sentences are used.

    Returns:
        The best averaged model; ``model.history`` lists every epoch.

    Raises:
        TrainingError: If there are no training sentences or any lacks tags.
    """
    config = config or TrainConfig()
    sentences = [s for s in _sentences(corpus) if len(s)]
    if not sentences:
        raise TrainingError("training set contains no non-empty sentences")
    if any(s.tags is None or len(s.tags) != len(s) for s in sentences):
        raise TrainingError("every training sentence needs one tag per token")
    held_out = _sentences(validation) if validation is not None else sentences
    if validation is None:
        logger.warning("no validation sentences given, early stopping on training data")

    alphabet = LabelAlphabet.closed(tag for s in sentences for tag in s.tags)
    extractor = FeatureExtractor(config.window)
    feature_index: Dict[str, int] = {}
    sentence_ids: List[List[np.ndarray]] = []
    for sentence in sentences:
        rows = []
        for features in extractor.sentence_features(sentence.surfaces):
            rows.append(np.array([feature_index.setdefault(f, len(feature_index)) for f in features]))
        sentence_ids.append(rows)
    gold_paths = [alphabet.encode(s.tags) for s in sentences]
    logger.info(
        f"training on {len(sentences)} sentences, {len(feature_index)} features, {len(alphabet)} tags"
    )

    weights = _Perceptron(len(feature_index), len(alphabet))
    scratch = TaggerModel(alphabet, feature_index, window=config.window, enforce_bio=config.enforce_bio)
    rng = np.random.default_rng(config.seed)
    history: List[EpochRecord] = []
    best_f1 = -1.0
    best: Optional[TaggerModel] = None
    stale = 0

    for epoch in range(1, config.max_epochs + 1):
        mistakes = 0
        transitions = None
        for i in rng.permutation(len(sentences)):
            ids = sentence_ids[i]
            emissions = np.stack([weights.emission[row].sum(axis=0) for row in ids])
            if transitions is None:
                scratch.transition = weights.transition
                transitions = scratch.decoding_transitions()
            predicted, _ = viterbi(emissions, transitions, scratch.decoding_start())
            if predicted != gold_paths[i]:
                mistakes += 1
                weights.update(ids, gold_paths[i], predicted)
                transitions = None
            weights.counter += 1

        emission, transition = weights.averaged()
        candidate = TaggerModel(
            alphabet, feature_index, emission, transition,
            window=config.window, enforce_bio=config.enforce_bio, averaged=True,
        )
        f1 = evaluate_f1(candidate, held_out)
        history.append(EpochRecord(epoch, mistakes, f1))
        logger.debug(f"epoch {epoch}: {mistakes} mistakes, validation F1 {f1:.4f}")

        if f1 > best_f1:
            best_f1, best, stale = f1, candidate, 0
        else:
            stale += 1
            if stale >= config.patience:
                logger.info(f"early stopping after epoch {epoch}, best F1 {best_f1:.4f}")
                break

    assert best is not None
    best.history = history
    return best


def predict(model: TaggerModel, corpus: SentenceSource) -> List[List[str]]:
    """One decoded tag sequence per sentence, in input order."""
    return [viterbi_decode(model, sentence.surfaces) for sentence in _sentences(corpus)]
