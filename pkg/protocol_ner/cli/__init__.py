"""
protocol_ner.cli - Command line interface.

Exit codes: 0 success, 1 usage or configuration error, 2 data or parse
error, 3 internal invariant violation.
"""

import logging
import sys
from pathlib import Path
from typing import List, Optional

import click
from colorama import Fore, Style

from .. import __version__
from ..config.manager import ConfigManager
from ..core.errors import ProtocolNerError
from ..utils.log import setup_logging
from .commands import COMMANDS
from .context import CliContext

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


def _fail(message: str) -> None:
    first_line = message.strip().splitlines()[0] if message.strip() else "unknown error"
    click.echo(f"{Fore.RED}error:{Style.RESET_ALL} {first_line}", err=True)


class ProtocolNerGroup(click.Group):
    """Click group that turns every failure into a one-line diagnostic and an exit code."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            result = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
            code = result if isinstance(result, int) else EXIT_OK
        except click.exceptions.Abort:
            _fail("aborted")
            code = EXIT_USAGE
        except click.ClickException as e:
            e.show()
            code = EXIT_USAGE
        except ProtocolNerError as e:
            _fail(str(e))
            code = e.exit_code
        except (OSError, UnicodeDecodeError) as e:
            _fail(str(e))
            code = EXIT_DATA
        except Exception as e:
            logger.debug("unexpected failure", exc_info=True)
            _fail(f"internal error: {type(e).__name__}: {e}")
            code = EXIT_INTERNAL
        if standalone_mode:
            sys.exit(code)
        return code


@click.group(cls=ProtocolNerGroup)
@click.option(
    "--config",
    "config_path",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Project config file (default: .protocol-ner/config.yaml searched upward).",
)
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    help="Override logging.level.",
)
@click.option("--seed", type=click.IntRange(min=0), help="Seed for splits, training and generation.")
@click.option("--out", type=click.Path(path_type=Path), help="Default output path of a command.")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["json", "text"]),
    default="json",
    show_default=True,
    help="Report format.",
)
@click.version_option(__version__, prog_name="protocol-ner")
@click.pass_context
def cli(ctx: click.Context, config_path, log_level, seed, out, fmt):
    """Entity recognition toolkit for wet-lab protocols."""
    state = CliContext(ConfigManager(project_config_path=config_path), seed=seed, out=out, fmt=fmt)
    if log_level:
        state.overrides["logging"] = {"level": log_level.upper()}
    ctx.obj = state
    setup_logging(state.config.logging)


for command in COMMANDS:
    cli.add_command(command)


def main(argv: Optional[List[str]] = None) -> int:
    """Console entry point; returns the process exit code."""
    return cli.main(args=argv, prog_name="protocol-ner", standalone_mode=False)


__all__ = ["cli", "main"]
