"""
Protocol NER - Token Confusions

Counts of (predicted tag, true tag) over the positions where they differ.
"""

from collections import Counter
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..core.errors import LengthMismatchError

ConfusionRow = Tuple[str, str, int]


class ConfusionTable:
    def __init__(self) -> None:
        self.counts: Counter = Counter()

    def add(self, predicted: str, gold: str, count: int = 1) -> None:
        if predicted != gold:
            self.counts[(predicted, gold)] += count

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def top(self, k: Optional[int] = None) -> List[ConfusionRow]:
        """Rows by descending count, then predicted tag, then true tag."""
        rows = sorted(
            ((p, g, c) for (p, g), c in self.counts.items()),
            key=lambda row: (-row[2], row[0], row[1]),
        )
        return rows if k is None else rows[:k]

    def to_dict(self, k: Optional[int] = None) -> Dict[str, Any]:
        return {
            "total": self.total,
            "rows": [{"P_Label": p, "T_Label": g, "Count": c} for p, g, c in self.top(k)],
        }

    def __len__(self) -> int:
        return len(self.counts)

    def __bool__(self) -> bool:
        return bool(self.counts)


def token_confusions(
    predicted: Sequence[Sequence[str]],
    gold: Sequence[Sequence[str]],
) -> ConfusionTable:
    """
    Raises:
        LengthMismatchError: If sentence counts or any sentence length differ.
    """
    if len(predicted) != len(gold):
        raise LengthMismatchError(f"{len(predicted)} predicted sentences for {len(gold)} gold")
    table = ConfusionTable()
    for index, (p_seq, g_seq) in enumerate(zip(predicted, gold)):
        if len(p_seq) != len(g_seq):
            raise LengthMismatchError(
                f"sentence {index}: {len(p_seq)} predicted tags for {len(g_seq)} gold tags"
            )
        for p, g in zip(p_seq, g_seq):
            table.add(p, g)
    return table
