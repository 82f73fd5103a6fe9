"""
Protocol NER - Synthetic Corpora

Two generators, both deterministic in their seed:

- ``generate_protocols`` writes wet-lab style protocols with standoff
  annotations, for demos and end-to-end tests;
- ``separable_sentences`` produces CoNLL sentences whose tag is a fixed
  function of the surface, so a working tagger must reach F1 = 1.
"""

from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union
import logging

import numpy as np

from .conll import ConllSentence
from .models import EntityMention, ProtocolDocument
from .standoff import write_standoff_pair

logger = logging.getLogger(__name__)

_NUMBERS = ("1", "2", "5", "10", "20", "50", "100", "200", "500")
_AMOUNTS = tuple(f"{n} {unit}" for n in _NUMBERS for unit in ("µl", "ml"))
_REAGENTS = (
    "ethanol", "TE buffer", "lysis buffer", "PBS", "water", "sodium chloride",
    "proteinase K", "isopropanol", "elution buffer", "chloroform",
)
_LOCATIONS = ("microcentrifuge tube", "column", "plate", "ice", "water bath", "rack")
_TEMPERATURES = ("37°C", "4°C", "65°C", "room temperature", "95°C")
_TIMES = tuple(f"{n} min" for n in ("1", "2", "5", "10", "30")) + ("overnight", "1 h")
_SPEEDS = ("12,000 x g", "8,000 x g", "16,000 x g", "1,000 rpm")
_SIZES = ("1.5 ml", "2 ml", "15 ml", "50 ml")
_METHODS = ("pipetting", "inverting", "vortexing", "flicking")
_MODIFIERS = ("Gently", "Carefully", "Immediately")

# A step is a sequence of (label, choices); label None means plain text.
_Template = Sequence[Tuple[Optional[str], Sequence[str]]]

_STEP_TEMPLATES: Tuple[_Template, ...] = (
    (("Action", ("Add", "Transfer", "Pipette")), (None, (" ",)), ("Amount", _AMOUNTS),
     (None, (" of ",)), ("Reagent", _REAGENTS), (None, (" to the ",)),
     ("Location", _LOCATIONS), (None, (".",))),
    (("Action", ("Incubate",)), (None, (" at ",)), ("Temperature", _TEMPERATURES),
     (None, (" for ",)), ("Time", _TIMES), (None, (".",))),
    (("Action", ("Centrifuge", "Spin")), (None, (" at ",)), ("Speed", _SPEEDS),
     (None, (" for ",)), ("Time", _TIMES), (None, (".",))),
    (("Action", ("Resuspend",)), (None, (" the pellet in ",)), ("Amount", _AMOUNTS),
     (None, (" of ",)), ("Reagent", _REAGENTS), (None, (".",))),
    (("Action", ("Place",)), (None, (" the ",)), ("Size", _SIZES), (None, (" ",)),
     ("Location", ("microcentrifuge tube", "tube")), (None, (" on ",)),
     ("Location", ("ice", "the rack")), (None, (".",))),
    (("Modifier", _MODIFIERS), (None, (" ",)), ("Action", ("mix", "resuspend")),
     (None, (" by ",)), ("Method", _METHODS), (None, (".",))),
    (("Action", ("Discard",)), (None, (" the supernatant and dry at ",)),
     ("Temperature", _TEMPERATURES), (None, (".",))),
)

_TITLES = ("DNA extraction", "RNA isolation", "Plasmid miniprep", "Protein precipitation")


def _pick(rng: np.random.Generator, choices: Sequence[str]) -> str:
    return choices[int(rng.integers(len(choices)))]


def generate_protocol(
    doc_id: str,
    rng: np.random.Generator,
    min_steps: int = 4,
    max_steps: int = 8,
) -> Tuple[ProtocolDocument, List[EntityMention]]:
    """Build one protocol: a title line followed by annotated steps."""
    parts: List[str] = [f"{_pick(rng, _TITLES)} protocol\n"]
    offset = len(parts[0])
    mentions: List[EntityMention] = []
    for _ in range(int(rng.integers(min_steps, max_steps + 1))):
        template = _STEP_TEMPLATES[int(rng.integers(len(_STEP_TEMPLATES)))]
        for label, choices in template:
            piece = _pick(rng, choices)
            if label is not None:
                mentions.append(EntityMention(label, offset, offset + len(piece), piece))
            parts.append(piece)
            offset += len(piece)
        parts.append("\n")
        offset += 1
    return ProtocolDocument.from_text(doc_id, "".join(parts)), mentions


def generate_protocols(
    n_docs: int,
    seed: int = 0,
    prefix: str = "protocol",
) -> List[Tuple[ProtocolDocument, List[EntityMention]]]:
    if n_docs < 1:
        raise ValueError(f"n_docs must be positive, got {n_docs}")
    rng = np.random.default_rng(seed)
    width = max(3, len(str(n_docs)))
    return [generate_protocol(f"{prefix}_{i:0{width}d}", rng) for i in range(n_docs)]


def write_synthetic_corpus(
    directory: Union[str, Path],
    n_docs: int,
    seed: int = 0,
) -> List[str]:
    """Write generated protocols as standoff pairs; returns the doc ids."""
    directory = Path(directory)
    doc_ids = []
    for document, mentions in generate_protocols(n_docs, seed):
        write_standoff_pair(directory, document, mentions)
        doc_ids.append(document.id)
    logger.info(f"wrote {len(doc_ids)} synthetic protocols to {directory}")
    return doc_ids


# Every surface belongs to exactly one tag.
SEPARABLE_LEXICON = {
    "B-Action": ("add", "mix", "incubate", "transfer", "vortex", "spin", "wash", "discard"),
    "B-Reagent": ("ethanol", "buffer", "water", "sodium", "potassium", "glycerol"),
    "I-Reagent": ("chloride", "phosphate", "acetate"),
    "B-Amount": ("one", "two", "five", "ten"),
    "I-Amount": ("ml", "ul", "mg"),
    "B-Location": ("tube", "plate", "flask", "column"),
    "I-Location": ("rack", "well"),
    "O": ("the", "to", "of", "into", "and", "then", "with", "gently"),
}

_CHUNK_KINDS = ("O", "Action", "Reagent", "Amount", "Location")


def separable_sentences(n_sentences: int, seed: int = 0) -> List[ConllSentence]:
    """Sentences of 4 to 8 chunks drawn from SEPARABLE_LEXICON."""
    rng = np.random.default_rng(seed)
    sentences: List[ConllSentence] = []
    for _ in range(n_sentences):
        sentence: ConllSentence = []
        for _ in range(int(rng.integers(4, 9))):
            kind = _pick(rng, _CHUNK_KINDS)
            if kind == "O":
                sentence.append((_pick(rng, SEPARABLE_LEXICON["O"]), "O"))
                continue
            sentence.append((_pick(rng, SEPARABLE_LEXICON[f"B-{kind}"]), f"B-{kind}"))
            inside = SEPARABLE_LEXICON.get(f"I-{kind}")
            if inside and rng.random() < 0.5:
                sentence.append((_pick(rng, inside), f"I-{kind}"))
        sentences.append(sentence)
    return sentences
