"""
Protocol NER - Configuration Manager Module

Settings come from, highest precedence first:

1. Explicit overrides (command-line flags)
2. Environment variables (PROTOCOL_NER_<SECTION>__<KEY>)
3. Project config (.protocol-ner/config.yaml, searched upward, or --config)
4. Global config (~/.protocol-ner/config.yaml)
5. Dataclass defaults
"""

import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional
import logging

import yaml

from ..corpus.alignment import AlignmentConfig
from ..tagger.trainer import TrainConfig
from .schema import ConfigSchema, ConfigValidationError

logger = logging.getLogger(__name__)

GLOBAL_CONFIG_NAME = "config.yaml"
PROJECT_CONFIG_DIR = ".protocol-ner"
PROJECT_CONFIG_NAME = "config.yaml"
ENV_PREFIX = "PROTOCOL_NER_"


@dataclass
class PipelineSettings:
    """Ensemble pipeline settings"""

    n_models: int = 11
    seed_base: int = 0
    train_fraction: float = 0.8
    methods: List[str] = field(default_factory=lambda: ["majv", "sle"])
    max_workers: int = 1


@dataclass
class LoggingConfig:
    """Logging configuration"""

    level: str = "WARNING"
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    file: Optional[str] = None
    console: bool = True


@dataclass
class ProtocolNerConfig:
    """All settings, one dataclass per section."""

    alignment: AlignmentConfig = field(default_factory=AlignmentConfig)
    tagger: TrainConfig = field(default_factory=TrainConfig)
    pipeline: PipelineSettings = field(default_factory=PipelineSettings)
    logging: LoggingConfig = field(default_factory=LoggingConfig)


SECTIONS = {
    "alignment": AlignmentConfig,
    "tagger": TrainConfig,
    "pipeline": PipelineSettings,
    "logging": LoggingConfig,
}


class ConfigManager:
    """
    Configuration manager with multi-level configuration support.

    Example:
        manager = ConfigManager()
        config = manager.load(overrides={"tagger": {"seed": 3}})
    """

    def __init__(
        self,
        global_config_dir: Optional[Path] = None,
        project_config_path: Optional[Path] = None,
    ):
        """
        Args:
            global_config_dir: Directory for global config (default: ~/.protocol-ner)
            project_config_path: Explicit project config file (default: searched)
        """
        self.global_config_dir = global_config_dir or Path.home() / PROJECT_CONFIG_DIR
        self.project_config_path = project_config_path
        self.schema = ConfigSchema()
        self._config: Optional[ProtocolNerConfig] = None

    def find_project_config(self, start_dir: Optional[Path] = None) -> Optional[Path]:
        """Search upward from start_dir for .protocol-ner/config.yaml."""
        current = (start_dir or Path.cwd()).resolve()
        while current != current.parent:
            candidate = current / PROJECT_CONFIG_DIR / PROJECT_CONFIG_NAME
            if candidate.exists():
                return candidate
            current = current.parent
        return None

    def get_global_config_path(self) -> Path:
        return self.global_config_dir / GLOBAL_CONFIG_NAME

    def load_yaml(self, path: Path) -> Dict[str, Any]:
        """
        Raises:
            ConfigValidationError: If the file is not valid YAML or not a mapping.
        """
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
        except (OSError, UnicodeDecodeError, yaml.YAMLError) as e:
            raise ConfigValidationError([(str(path), f"cannot read config: {e}")]) from e
        if not isinstance(data, dict):
            raise ConfigValidationError([(str(path), "config file must hold a mapping")])
        return data

    def load_env_config(self) -> Dict[str, Any]:
        """
        Read PROTOCOL_NER_* variables; nested keys use double underscore.

        Examples:
            PROTOCOL_NER_PIPELINE__N_MODELS=5
            PROTOCOL_NER_PIPELINE__METHODS=majv,sle
            PROTOCOL_NER_LOGGING__LEVEL=DEBUG
        """
        config: Dict[str, Any] = {}
        for key, value in os.environ.items():
            if not key.startswith(ENV_PREFIX):
                continue
            parts = key[len(ENV_PREFIX) :].lower().split("__")
            current = config
            for part in parts[:-1]:
                current = current.setdefault(part, {})
            current[parts[-1]] = self._parse_env_value(value)
        return config

    def _parse_env_value(self, value: str) -> Any:
        if value.lower() in ("true", "yes"):
            return True
        if value.lower() in ("false", "no"):
            return False
        try:
            return int(value)
        except ValueError:
            pass
        try:
            return float(value)
        except ValueError:
            pass
        if "," in value:
            return [part.strip() for part in value.split(",") if part.strip()]
        return value

    def _deep_merge(self, base: Dict, override: Dict) -> None:
        for key, value in override.items():
            if key in base and isinstance(base[key], dict) and isinstance(value, dict):
                self._deep_merge(base[key], value)
            else:
                base[key] = value

    def merge_configs(self, *configs: Dict[str, Any]) -> ProtocolNerConfig:
        """
        Merge configuration dictionaries, later ones winning, then validate.

        Raises:
            ConfigValidationError: Listing every invalid field.
        """
        merged: Dict[str, Any] = {}
        for config in configs:
            self._deep_merge(merged, config)
        pipeline = merged.get("pipeline")
        if isinstance(pipeline, dict) and isinstance(pipeline.get("methods"), str):
            pipeline["methods"] = [m.strip() for m in pipeline["methods"].split(",") if m.strip()]
        self.schema.validate_and_raise(merged)
        return self._dict_to_config(merged)

    def _dict_to_config(self, data: Dict[str, Any]) -> ProtocolNerConfig:
        config = ProtocolNerConfig()
        for name, section_class in SECTIONS.items():
            values = data.get(name) or {}
            if values:
                defaults = asdict(getattr(config, name))
                defaults.update(values)
                if name == "pipeline":
                    defaults["methods"] = [m.lower() for m in defaults["methods"]]
                setattr(config, name, section_class(**defaults))
        return config

    def load(
        self,
        overrides: Optional[Dict[str, Any]] = None,
        reload: bool = False,
    ) -> ProtocolNerConfig:
        """
        Load configuration from all sources.

        Args:
            overrides: Section dictionaries taking precedence over everything.
            reload: Force reload even if already loaded.
        """
        if self._config is not None and not reload and not overrides:
            return self._config

        configs: List[Dict[str, Any]] = [{}]
        global_path = self.get_global_config_path()
        if global_path.exists():
            configs.append(self.load_yaml(global_path))

        project_path = self.project_config_path or self.find_project_config()
        if project_path is not None:
            if not Path(project_path).exists():
                raise ConfigValidationError([(str(project_path), "config file not found")])
            logger.debug(f"using project config {project_path}")
            configs.append(self.load_yaml(Path(project_path)))

        env_config = self.load_env_config()
        if env_config:
            configs.append(env_config)
        if overrides:
            configs.append(
                {section: {k: v for k, v in values.items() if v is not None} for section, values in overrides.items()}
            )

        self._config = self.merge_configs(*configs)
        return self._config

    def get_config(self) -> ProtocolNerConfig:
        return self._config if self._config is not None else self.load()

    def save_config(self, config: ProtocolNerConfig, path: Path, create_parents: bool = True) -> None:
        if create_parents:
            path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            yaml.safe_dump(self._config_to_dict(config), f, default_flow_style=False, allow_unicode=True)

    def _config_to_dict(self, config: ProtocolNerConfig) -> Dict[str, Any]:
        data = {name: asdict(getattr(config, name)) for name in SECTIONS}
        if data["logging"]["file"] is None:
            del data["logging"]["file"]
        return data

