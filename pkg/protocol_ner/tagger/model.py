"""
Protocol NER - Linear-Chain Tagger Model

A TaggerModel scores a tag sequence y for surfaces x as

    sum_k emission[features(x, k), y_k] + sum_k transition[y_{k-1}, y_k]

and decodes the argmax with Viterbi. With enforce_bio on, illegal
transitions and a leading I tag are excluded from the search.
"""

from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union
import logging

import numpy as np

from ..core.errors import LengthMismatchError, ModelFormatError
from ..tagscheme import LabelAlphabet, is_continuation
from ..utils.jsonio import dump_json, load_json
from .features import FeatureExtractor

logger = logging.getLogger(__name__)

MODEL_FORMAT_VERSION = 1


@dataclass
class EpochRecord:
    epoch: int
    mistakes: int
    validation_f1: float


def viterbi(
    emissions: np.ndarray,
    transitions: np.ndarray,
    start_allowed: Optional[np.ndarray] = None,
) -> Tuple[List[int], float]:
    """
    Best path through an (L, S) emission matrix and (S, S) transitions.

    Disallowed moves carry -inf in transitions; start_allowed masks the
    first position. Ties go to the lowest index, both at backpointers and
    for the final state.

    Returns:
        (path, score); ([], 0.0) for L == 0.
    """
    length = emissions.shape[0]
    if length == 0:
        return [], 0.0
    delta = emissions[0]
    if start_allowed is not None:
        delta = np.where(start_allowed, delta, -np.inf)
    backpointers = np.zeros((length, emissions.shape[1]), dtype=np.int64)
    columns = np.arange(emissions.shape[1])
    for k in range(1, length):
        candidates = delta[:, None] + transitions
        backpointers[k] = np.argmax(candidates, axis=0)
        delta = candidates[backpointers[k], columns] + emissions[k]

    best = int(np.argmax(delta))
    score = float(delta[best])
    path = [best]
    for k in range(length - 1, 0, -1):
        path.append(int(backpointers[k, path[-1]]))
    path.reverse()
    return path, score


def path_score(
    emissions: np.ndarray,
    transitions: np.ndarray,
    path: Sequence[int],
    start_allowed: Optional[np.ndarray] = None,
) -> float:
    """Score of one path, accumulated in the same order as viterbi."""
    if not path:
        return 0.0
    if start_allowed is not None and not start_allowed[path[0]]:
        return float("-inf")
    score = emissions[0, path[0]]
    for k in range(1, len(path)):
        score = score + transitions[path[k - 1], path[k]] + emissions[k, path[k]]
    return float(score)


class TaggerModel:
    """
    Feature and transition weights over a fixed label alphabet.

    Attributes:
        alphabet: Tag set; index order is the decoding tie-break.
        feature_index: Feature string to row of ``emission``.
        emission: (F, S) weights.
        transition: (S, S) weights, previous tag by next tag.
        window: Context radius of the feature extractor.
        enforce_bio: Exclude illegal BIO paths while decoding.
        averaged: Whether the weights are perceptron averages.
        history: Per-epoch training records.
    """

    def __init__(
        self,
        alphabet: LabelAlphabet,
        feature_index: Dict[str, int],
        emission: Optional[np.ndarray] = None,
        transition: Optional[np.ndarray] = None,
        window: int = 2,
        enforce_bio: bool = True,
        averaged: bool = True,
        history: Optional[List[EpochRecord]] = None,
    ):
        if len(alphabet) == 0:
            raise ModelFormatError("model alphabet is empty")
        size = len(alphabet)
        self.alphabet = alphabet
        self.feature_index = feature_index
        self.emission = (
            np.zeros((len(feature_index), size)) if emission is None else np.asarray(emission, dtype=np.float64)
        )
        self.transition = (
            np.zeros((size, size)) if transition is None else np.asarray(transition, dtype=np.float64)
        )
        if self.emission.shape != (len(feature_index), size) or self.transition.shape != (size, size):
            raise ModelFormatError(
                f"weight shapes {self.emission.shape}/{self.transition.shape} do not fit "
                f"{len(feature_index)} features and {size} tags"
            )
        if not (np.isfinite(self.emission).all() and np.isfinite(self.transition).all()):
            raise ModelFormatError("model weights must be finite")
        self.window = window
        self.enforce_bio = enforce_bio
        self.averaged = averaged
        self.history = list(history or [])
        self.extractor = FeatureExtractor(window)
        self._legal, self._start = self._bio_masks()

    def _bio_masks(self) -> Tuple[np.ndarray, np.ndarray]:
        tags = self.alphabet.tags
        legal = np.array([[is_continuation(a, b) for b in tags] for a in tags], dtype=bool)
        start = np.array([is_continuation(None, t) for t in tags], dtype=bool)
        return legal, start

    def feature_ids(self, surfaces: Sequence[str]) -> List[List[int]]:
        """Known feature rows per position; unseen features are dropped."""
        index = self.feature_index
        return [
            [index[f] for f in features if f in index]
            for features in self.extractor.sentence_features(surfaces)
        ]

    def emission_scores(self, surfaces: Sequence[str]) -> np.ndarray:
        scores = np.zeros((len(surfaces), len(self.alphabet)))
        for k, ids in enumerate(self.feature_ids(surfaces)):
            if ids:
                scores[k] = self.emission[ids].sum(axis=0)
        return scores

    def decoding_transitions(self) -> np.ndarray:
        if not self.enforce_bio:
            return self.transition
        return np.where(self._legal, self.transition, -np.inf)

    def decoding_start(self) -> Optional[np.ndarray]:
        return self._start if self.enforce_bio else None

    def decode(self, surfaces: Sequence[str]) -> List[str]:
        path, _ = viterbi(self.emission_scores(surfaces), self.decoding_transitions(), self.decoding_start())
        return self.alphabet.decode(path)

    def sequence_score(self, surfaces: Sequence[str], tags: Sequence[str]) -> float:
        """Model score of tags; -inf if decoding could never produce them."""
        if len(surfaces) != len(tags):
            raise LengthMismatchError(f"{len(tags)} tags for {len(surfaces)} tokens")
        if any(tag not in self.alphabet for tag in tags):
            return float("-inf")
        return path_score(
            self.emission_scores(surfaces),
            self.decoding_transitions(),
            self.alphabet.encode(tags),
            self.decoding_start(),
        )

    def to_dict(self) -> Dict[str, Any]:
        """Sparse JSON form: only non-zero weights are stored."""
        rows, cols = np.nonzero(self.emission)
        trans_rows, trans_cols = np.nonzero(self.transition)
        features = sorted(self.feature_index, key=self.feature_index.__getitem__)
        return {
            "format_version": MODEL_FORMAT_VERSION,
            "alphabet": list(self.alphabet.tags),
            "window": self.window,
            "enforce_bio": self.enforce_bio,
            "averaged": self.averaged,
            "features": features,
            "emission": [[int(r), int(c), float(self.emission[r, c])] for r, c in zip(rows, cols)],
            "transition": [
                [int(r), int(c), float(self.transition[r, c])] for r, c in zip(trans_rows, trans_cols)
            ],
            "history": [asdict(record) for record in self.history],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "TaggerModel":
        version = data.get("format_version") if isinstance(data, dict) else None
        if version != MODEL_FORMAT_VERSION:
            raise ModelFormatError(f"unsupported model format version: {version!r}")
        try:
            alphabet = LabelAlphabet(data["alphabet"])
            if list(alphabet.tags) != list(data["alphabet"]):
                raise ModelFormatError("model alphabet is not in canonical order")
            features = list(data["features"])
            feature_index = {name: i for i, name in enumerate(features)}
            if len(feature_index) != len(features):
                raise ModelFormatError("duplicate feature names in model")
            size = len(alphabet)
            emission = np.zeros((len(features), size))
            for row, col, weight in data["emission"]:
                emission[int(row), int(col)] = float(weight)
            transition = np.zeros((size, size))
            for row, col, weight in data["transition"]:
                transition[int(row), int(col)] = float(weight)
            history = [EpochRecord(**record) for record in data.get("history", [])]
            return cls(
                alphabet,
                feature_index,
                emission,
                transition,
                window=int(data["window"]),
                enforce_bio=bool(data["enforce_bio"]),
                averaged=bool(data["averaged"]),
                history=history,
            )
        except ModelFormatError:
            raise
        except (KeyError, TypeError, ValueError, IndexError) as e:
            raise ModelFormatError(f"malformed model file: {e}") from e


def viterbi_decode(model: TaggerModel, surfaces: Sequence[str]) -> List[str]:
    return model.decode(surfaces)


def sequence_score(model: TaggerModel, surfaces: Sequence[str], tags: Sequence[str]) -> float:
    return model.sequence_score(surfaces, tags)


def save_model(model: TaggerModel, path: Union[str, Path]) -> None:
    dump_json(model.to_dict(), path)
    logger.info(f"saved model ({len(model.feature_index)} features, {len(model.alphabet)} tags) to {path}")


def load_model(path: Union[str, Path]) -> TaggerModel:
    try:
        data = load_json(path)
    except ValueError as e:
        raise ModelFormatError(f"{path}: not a JSON model file: {e}") from e
    return TaggerModel.from_dict(data)
