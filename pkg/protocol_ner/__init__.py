"""
protocol_ner - Entity recognition toolkit for wet-lab protocols.

CoNLL and standoff corpora, a linear-chain perceptron tagger, majority
voting and structured ensembling of several taggers, and span-level
scoring.
"""

__all__ = ["__version__"]

__version__ = "0.1.0"
