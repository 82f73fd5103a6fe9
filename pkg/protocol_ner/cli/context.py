"""
Shared state and helpers for CLI commands.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Optional

import click

from ..config.manager import ConfigManager, ProtocolNerConfig
from ..utils.jsonio import dump_json, dumps_json


@dataclass
class CliContext:
    """Global options plus the configuration they resolve to."""

    manager: ConfigManager
    seed: Optional[int] = None
    out: Optional[Path] = None
    fmt: str = "json"
    log_level: Optional[str] = None
    overrides: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    _config: Optional[ProtocolNerConfig] = None

    @property
    def config(self) -> ProtocolNerConfig:
        if self._config is None:
            self._config = self.manager.load(overrides=self.overrides, reload=True)
        return self._config

    def configure(self, section: str, **values: Any) -> ProtocolNerConfig:
        """Add command-line values for a section and re-resolve the configuration."""
        self.overrides.setdefault(section, {}).update(
            {key: value for key, value in values.items() if value is not None}
        )
        self._config = None
        return self.config

    def output_path(self, explicit: Optional[Path]) -> Optional[Path]:
        return explicit or self.out

    def emit(
        self,
        data: Any,
        text: Optional[Callable[[], str]] = None,
        path: Optional[Path] = None,
    ) -> None:
        """
        Write a report as JSON (or text when --format text) to path, or stdout.
        """
        if self.fmt == "text" and text is not None:
            rendered = text()
            if path is not None:
                path.parent.mkdir(parents=True, exist_ok=True)
                path.write_text(rendered, encoding="utf-8")
            else:
                click.echo(rendered, nl=False)
            return
        if path is not None:
            dump_json(data, path)
        else:
            click.echo(dumps_json(data), nl=False)


pass_cli = click.make_pass_decorator(CliContext)
