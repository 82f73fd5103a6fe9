"""
Protocol NER - Train/Validation Splits

A split is a pure function of (document id set, seed, train fraction):
ids are sorted before shuffling, so input order never matters.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Sequence, Tuple
import logging

import numpy as np

from ..core.errors import SplitError

logger = logging.getLogger(__name__)

TRAIN = "train"
VALIDATION = "validation"


@dataclass(frozen=True)
class SplitSpec:
    """Assignment of every document id to train or validation."""

    seed: int
    train_fraction: float
    assignment: Dict[str, str] = field(default_factory=dict)

    @property
    def train_ids(self) -> List[str]:
        return sorted(d for d, side in self.assignment.items() if side == TRAIN)

    @property
    def validation_ids(self) -> List[str]:
        return sorted(d for d, side in self.assignment.items() if side == VALIDATION)

    def key(self) -> Tuple[str, ...]:
        return tuple(self.train_ids)

    def verify(self) -> bool:
        """True if regenerating from seed and fraction reproduces the assignment."""
        again = generate_split(list(self.assignment), self.seed, self.train_fraction)
        return again.assignment == self.assignment

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "train_fraction": self.train_fraction,
            "train": self.train_ids,
            "validation": self.validation_ids,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SplitSpec":
        try:
            assignment = {doc_id: TRAIN for doc_id in data["train"]}
            assignment.update({doc_id: VALIDATION for doc_id in data["validation"]})
            if len(assignment) != len(data["train"]) + len(data["validation"]):
                raise SplitError("split file assigns a document to both sides")
            return cls(int(data["seed"]), float(data["train_fraction"]), assignment)
        except (KeyError, TypeError, ValueError) as e:
            raise SplitError(f"malformed split file: {e}") from e


def train_size(n_docs: int, train_fraction: float) -> int:
    """round(fraction * n) with halves rounded up."""
    return int(math.floor(train_fraction * n_docs + 0.5))


def generate_split(doc_ids: Iterable[str], seed: int, train_fraction: float) -> SplitSpec:
    """
    Shuffle sorted doc ids with seed and cut off the training share.

    Raises:
        SplitError: For an empty id list, duplicate ids, a fraction outside
            (0, 1), a negative seed, or a fraction leaving one side empty.
    """
    ids = sorted(doc_ids)
    if not ids:
        raise SplitError("cannot split an empty document list")
    if len(set(ids)) != len(ids):
        raise SplitError("document ids must be unique")
    if not 0.0 < train_fraction < 1.0:
        raise SplitError(f"train_fraction must be in (0, 1), got {train_fraction}")
    if seed < 0:
        raise SplitError(f"seed must be non-negative, got {seed}")

    n_train = train_size(len(ids), train_fraction)
    if n_train == 0 or n_train == len(ids):
        raise SplitError(
            f"train_fraction {train_fraction} over {len(ids)} documents leaves an empty side"
        )
    order = np.random.default_rng(seed).permutation(len(ids))
    assignment = {
        ids[int(i)]: TRAIN if rank < n_train else VALIDATION for rank, i in enumerate(order)
    }
    return SplitSpec(seed, train_fraction, dict(sorted(assignment.items())))


def generate_splits(
    doc_ids: Sequence[str],
    seeds: Iterable[int],
    train_fraction: float,
) -> Tuple[List[SplitSpec], List[Tuple[int, int]]]:
    """
    Build one split per seed and report seed pairs that coincide.

    Returns:
        (splits, collisions) where collisions lists (earlier_seed, seed)
        pairs with identical assignments. Collisions are allowed but logged.
    """
    splits: List[SplitSpec] = []
    seen: Dict[Tuple[str, ...], int] = {}
    collisions: List[Tuple[int, int]] = []
    for seed in seeds:
        split = generate_split(doc_ids, seed, train_fraction)
        key = split.key()
        if key in seen:
            collisions.append((seen[key], seed))
            logger.warning(f"split for seed {seed} duplicates seed {seen[key]}")
        else:
            seen[key] = seed
        splits.append(split)
    return splits, collisions
