"""
Protocol NER - Tagger Features

Feature templates, per token position k of a sentence:

    bias                      always on
    w=<lower>                 lowercased surface
    shape=<shape>             X/x/d/other, runs collapsed ("37°C" -> "d°X")
    p1..p4=<prefix>           lowercased prefixes up to length 4
    s1..s4=<suffix>           lowercased suffixes up to length 4
    digit                     surface is all digits
    title                     surface is title case
    w[-i]=<lower>, w[+i]=..   neighbouring surfaces for i in 1..window,
                              "<s>" / "</s>" past the sentence edges
"""

from typing import List, Sequence

BOS = "<s>"
EOS = "</s>"


def word_shape(surface: str) -> str:
    shape = []
    for char in surface:
        if char.isupper():
            code = "X"
        elif char.islower():
            code = "x"
        elif char.isdigit():
            code = "d"
        else:
            code = char
        if not shape or shape[-1] != code:
            shape.append(code)
    return "".join(shape)


class FeatureExtractor:
    """Deterministic string features for each token of a sentence."""

    def __init__(self, window: int = 2):
        if window < 0:
            raise ValueError(f"window must be non-negative, got {window}")
        self.window = window

    def token_features(self, surfaces: Sequence[str], k: int) -> List[str]:
        surface = surfaces[k]
        lower = surface.lower()
        features = ["bias", f"w={lower}", f"shape={word_shape(surface)}"]
        for n in range(1, min(4, len(lower)) + 1):
            features.append(f"p{n}={lower[:n]}")
            features.append(f"s{n}={lower[-n:]}")
        if surface.isdigit():
            features.append("digit")
        if surface.istitle():
            features.append("title")
        for i in range(1, self.window + 1):
            before = surfaces[k - i].lower() if k - i >= 0 else BOS
            after = surfaces[k + i].lower() if k + i < len(surfaces) else EOS
            features.append(f"w[-{i}]={before}")
            features.append(f"w[+{i}]={after}")
        return features

    def sentence_features(self, surfaces: Sequence[str]) -> List[List[str]]:
        return [self.token_features(surfaces, k) for k in range(len(surfaces))]
