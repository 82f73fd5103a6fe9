"""
protocol_ner.utils - Helpers shared across the package.
"""

from .jsonio import dump_json, dumps_json, load_json
from .log import setup_logging

__all__ = ["dump_json", "dumps_json", "load_json", "setup_logging"]
