"""
Protocol NER - Merger Base Module

Types shared by every merge method and the interface a merger plugin
implements.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence

from ..core.errors import MergeAlignmentError, ProtocolNerError
from ..tagscheme import LabelAlphabet, TagSequence


class MergeMethod(Enum):
    """Built-in merge methods."""

    MAJORITY_VOTE = "majv"
    SLE = "sle"

    @property
    def display_name(self) -> str:
        return {"majv": "MajV", "sle": "SLE"}[self.value]


@dataclass
class PredictionSet:
    """
    N aligned predictions for one sentence.

    When no alphabet is given it is built from the observed tags.

    Raises:
        MergeAlignmentError: If there are no sequences or their lengths differ.
        TagParseError: If a tag is missing from the given alphabet.
    """

    sequences: List[List[str]]
    alphabet: Optional[LabelAlphabet] = None
    sentence_id: Optional[int] = None

    def __post_init__(self):
        self.sequences = [list(seq) for seq in self.sequences]
        if not self.sequences:
            raise MergeAlignmentError("a prediction set needs at least one sequence", self.sentence_id)
        lengths = {len(seq) for seq in self.sequences}
        if len(lengths) != 1:
            raise MergeAlignmentError(
                f"predicted sequences differ in length: {sorted(lengths)}", self.sentence_id
            )
        if self.alphabet is None:
            self.alphabet = LabelAlphabet.from_sequences(self.sequences)
        self.encoded = [self.alphabet.encode(seq) for seq in self.sequences]

    @property
    def n_models(self) -> int:
        return len(self.sequences)

    @property
    def length(self) -> int:
        return len(self.sequences[0])


@dataclass
class MergedPrediction:
    """
    Attributes:
        tags: Merged tags after BIO repair.
        raw_tags: Merged tags before repair.
        score: Log-domain score of raw_tags under the method's objective.
        method: Method that produced the merge.
        repairs: Positions changed by BIO repair.
    """

    tags: List[str]
    score: float
    method: MergeMethod
    raw_tags: List[str] = field(default_factory=list)
    repairs: int = 0


@dataclass
class MergerInfo:
    name: str
    display_name: str
    description: str = ""


class BaseMerger(ABC):
    """
    Abstract base class for merge methods.

    Example:
        class UnanimousMerger(BaseMerger):
            @property
            def info(self) -> MergerInfo:
                return MergerInfo("unanimous", "Unanimous", "O unless all agree")

            def merge(self, pred: PredictionSet) -> MergedPrediction:
                ...
    """

    @property
    @abstractmethod
    def info(self) -> MergerInfo:
        pass

    @abstractmethod
    def merge(self, pred: PredictionSet) -> MergedPrediction:
        """
        Merge the N sequences of pred into one.

        Args:
            pred: Aligned predictions of one sentence.

        Returns:
            MergedPrediction: Repaired tags plus the pre-repair sequence.
        """
        pass

    def merge_sequences(
        self,
        sequences: Sequence[TagSequence],
        alphabet: Optional[LabelAlphabet] = None,
    ) -> MergedPrediction:
        return self.merge(PredictionSet([list(s) for s in sequences], alphabet))


class MergerNotFoundError(ProtocolNerError):
    """Raised when a requested merge method is not registered."""

    exit_code = 1
