"""
Protocol NER - Corpus-level Merging

Merges N prediction files (CoNLL, tags in the second column) sentence by
sentence and reports per-sentence scores and repair counts.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union
import logging

from ..core.errors import MergeAlignmentError
from ..corpus.conll import ConllSentence, read_conll_file, write_conll_file
from ..tagscheme import LabelAlphabet
from ..utils.jsonio import dump_json
from .base import BaseMerger, MergedPrediction, MergeMethod, PredictionSet
from .registry import get_merger

logger = logging.getLogger(__name__)


@dataclass
class MergeOutput:
    method: str
    sentences: List[ConllSentence] = field(default_factory=list)
    merged: List[MergedPrediction] = field(default_factory=list)

    @property
    def tags(self) -> List[List[str]]:
        return [m.tags for m in self.merged]

    @property
    def repairs(self) -> int:
        return sum(m.repairs for m in self.merged)

    def sidecar(self) -> List[Dict[str, Any]]:
        return [
            {
                "sentence_index": index,
                "method": self.method,
                "log_score": m.score,
                "repairs": m.repairs,
                "raw_tags": m.raw_tags,
            }
            for index, m in enumerate(self.merged)
        ]


def check_aligned(predictions: Sequence[Sequence[ConllSentence]]) -> None:
    """
    Raises:
        MergeAlignmentError: Naming the first sentence where the inputs
            disagree on sentence count, token count or surfaces.
    """
    counts = [len(p) for p in predictions]
    for index in range(max(counts, default=0)):
        if any(index >= c for c in counts):
            raise MergeAlignmentError(f"inputs have {sorted(set(counts))} sentences", index)
        reference = [surface for surface, _ in predictions[0][index]]
        for number, other in enumerate(predictions[1:], start=2):
            surfaces = [surface for surface, _ in other[index]]
            if len(surfaces) != len(reference):
                raise MergeAlignmentError(
                    f"input {number} has {len(surfaces)} tokens, input 1 has {len(reference)}", index
                )
            if surfaces != reference:
                raise MergeAlignmentError(f"input {number} differs from input 1 in token surfaces", index)


def _resolve(method: Union[str, MergeMethod, BaseMerger]) -> BaseMerger:
    if isinstance(method, BaseMerger):
        return method
    return get_merger(method.value if isinstance(method, MergeMethod) else method)


def merge_corpus(
    predictions: Sequence[Sequence[ConllSentence]],
    method: Union[str, MergeMethod, BaseMerger],
    alphabet: Optional[LabelAlphabet] = None,
) -> MergeOutput:
    """
    Merge aligned per-model predictions of a whole corpus.

    Args:
        predictions: One list of CoNLL sentences per model.
        method: Merge method name, enum member or merger instance.
        alphabet: Tag set; defaults to every tag observed in any input.
    """
    if not predictions:
        raise MergeAlignmentError("nothing to merge: no prediction inputs")
    check_aligned(predictions)
    if alphabet is None:
        alphabet = LabelAlphabet(tag for p in predictions for sentence in p for _, tag in sentence)
    merger = _resolve(method)
    output = MergeOutput(merger.info.display_name)
    for index, sentence in enumerate(predictions[0]):
        pred = PredictionSet([[tag for _, tag in p[index]] for p in predictions], alphabet, index)
        merged = merger.merge(pred)
        output.merged.append(merged)
        output.sentences.append([(surface, tag) for (surface, _), tag in zip(sentence, merged.tags)])
    logger.info(
        f"merged {len(predictions)} inputs, {len(output.sentences)} sentences with "
        f"{output.method} ({output.repairs} BIO repairs)"
    )
    return output


def merge_files(
    paths: Sequence[Union[str, Path]],
    method: Union[str, MergeMethod, BaseMerger],
    out_path: Union[str, Path],
    sidecar_path: Optional[Union[str, Path]] = None,
    alphabet: Optional[LabelAlphabet] = None,
) -> MergeOutput:
    """Read prediction files, merge them and write CoNLL plus a JSON sidecar."""
    output = merge_corpus([read_conll_file(p) for p in paths], method, alphabet)
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    write_conll_file(out_path, output.sentences)
    dump_json(output.sidecar(), sidecar_path or out_path.with_suffix(".json"))
    return output
