"""
CLI subcommands, grouped by the package they drive.
"""

from .corpus import COMMANDS as CORPUS_COMMANDS
from .ensemble import COMMANDS as ENSEMBLE_COMMANDS
from .model import COMMANDS as MODEL_COMMANDS

COMMANDS = CORPUS_COMMANDS + MODEL_COMMANDS + ENSEMBLE_COMMANDS

__all__ = ["COMMANDS"]
