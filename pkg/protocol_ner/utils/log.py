"""
Logging setup.

Modules log through logging.getLogger(__name__); only the CLI calls
setup_logging, once, from the resolved LoggingConfig.
"""

import logging
import sys
from typing import TYPE_CHECKING, Optional

from colorama import Fore, Style

if TYPE_CHECKING:
    from ..config.manager import LoggingConfig

_LEVEL_COLORS = {
    logging.DEBUG: Fore.CYAN,
    logging.INFO: Fore.GREEN,
    logging.WARNING: Fore.YELLOW,
    logging.ERROR: Fore.RED,
    logging.CRITICAL: Fore.RED + Style.BRIGHT,
}


class ColorFormatter(logging.Formatter):
    """Formatter that colours the level name."""

    def format(self, record: logging.LogRecord) -> str:
        color = _LEVEL_COLORS.get(record.levelno, "")
        original = record.levelname
        record.levelname = f"{color}{original}{Style.RESET_ALL}"
        try:
            return super().format(record)
        finally:
            record.levelname = original


def setup_logging(config: Optional["LoggingConfig"] = None) -> None:
    """
    Configure the package logger from a LoggingConfig.

    Args:
        config: Logging section of the resolved configuration. Defaults are
            used when omitted.
    """
    from ..config.manager import LoggingConfig

    config = config or LoggingConfig()
    root = logging.getLogger("protocol_ner")
    root.setLevel(config.level)
    for handler in list(root.handlers):
        root.removeHandler(handler)

    if config.console:
        handler = logging.StreamHandler(sys.stderr)
        if sys.stderr.isatty():
            handler.setFormatter(ColorFormatter(config.format))
        else:
            handler.setFormatter(logging.Formatter(config.format))
        root.addHandler(handler)

    if config.file:
        file_handler = logging.FileHandler(config.file, encoding="utf-8")
        file_handler.setFormatter(logging.Formatter(config.format))
        root.addHandler(file_handler)
