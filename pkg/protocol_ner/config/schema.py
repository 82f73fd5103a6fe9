"""
Protocol NER - Configuration Schema Module

Schema validation for configuration dictionaries, before they become
dataclasses.
"""

from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple, Union
import logging

from ..core.errors import ProtocolNerError
from ..ensemble.registry import get_registry

logger = logging.getLogger(__name__)


class ConfigValidationError(ProtocolNerError):
    """Raised when configuration validation fails."""

    exit_code = 1

    def __init__(self, errors: List[Tuple[str, str]]):
        """
        Args:
            errors: List of (field, message) tuples.
        """
        self.errors = errors
        super().__init__("; ".join(f"{field}: {msg}" for field, msg in errors))


@dataclass
class FieldSpec:
    """Field specification for validation."""

    name: str
    type: type
    required: bool = False
    default: Any = None
    min_value: Optional[Union[int, float]] = None
    max_value: Optional[Union[int, float]] = None
    choices: Optional[Union[List[Any], Callable[[], List[Any]]]] = None
    exclusive: bool = False


def merge_method_names() -> List[str]:
    return get_registry().available()


ALIGNMENT_SCHEMA: Dict[str, FieldSpec] = {
    "snap": FieldSpec("snap", bool, default=False),
    "allow_overlap": FieldSpec("allow_overlap", bool, default=False),
}

TAGGER_SCHEMA: Dict[str, FieldSpec] = {
    "window": FieldSpec("window", int, default=2, min_value=0, max_value=10),
    "max_epochs": FieldSpec("max_epochs", int, default=30, min_value=1),
    "patience": FieldSpec("patience", int, default=3, min_value=1),
    "seed": FieldSpec("seed", int, default=0, min_value=0),
    "enforce_bio": FieldSpec("enforce_bio", bool, default=True),
}

PIPELINE_SCHEMA: Dict[str, FieldSpec] = {
    "n_models": FieldSpec("n_models", int, default=11, min_value=1),
    "seed_base": FieldSpec("seed_base", int, default=0, min_value=0),
    "train_fraction": FieldSpec(
        "train_fraction", float, default=0.8, min_value=0.0, max_value=1.0, exclusive=True
    ),
    "methods": FieldSpec("methods", list, default=["majv", "sle"], choices=merge_method_names),
    "max_workers": FieldSpec("max_workers", int, default=1, min_value=1, max_value=64),
}

LOGGING_SCHEMA: Dict[str, FieldSpec] = {
    "level": FieldSpec(
        "level", str, default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"]
    ),
    "format": FieldSpec(
        "format", str, default="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    ),
    "file": FieldSpec("file", str, default=None),
    "console": FieldSpec("console", bool, default=True),
}


class ConfigSchema:
    """
    Configuration schema validator.

    Example:
        schema = ConfigSchema()
        errors = schema.validate_config(config_dict)
        if errors:
            raise ConfigValidationError(errors)
    """

    def __init__(self):
        self.schemas = {
            "alignment": ALIGNMENT_SCHEMA,
            "tagger": TAGGER_SCHEMA,
            "pipeline": PIPELINE_SCHEMA,
            "logging": LOGGING_SCHEMA,
        }

    def validate_field(self, value: Any, spec: FieldSpec, path: str = "") -> Optional[str]:
        """
        Returns:
            Error message if validation fails, None otherwise.
        """
        field_path = f"{path}.{spec.name}" if path else spec.name

        if value is None:
            if spec.required:
                return f"Required field '{field_path}' is missing"
            return None

        if spec.type in (int, float) and isinstance(value, bool):
            return f"Field '{field_path}' must be {spec.type.__name__}, got bool"
        if not isinstance(value, spec.type):
            if spec.type == float and isinstance(value, int):
                value = float(value)
            else:
                return f"Field '{field_path}' must be {spec.type.__name__}, got {type(value).__name__}"

        choices = spec.choices() if callable(spec.choices) else spec.choices
        if choices:
            items = value if isinstance(value, list) else [value]
            if isinstance(value, list) and not value:
                return f"Field '{field_path}' must not be empty"
            for item in items:
                candidate = item.lower() if isinstance(item, str) and isinstance(value, list) else item
                if candidate not in choices:
                    return f"Field '{field_path}' must be one of {choices}, got '{item}'"

        if isinstance(value, (int, float)):
            if spec.min_value is not None:
                if value < spec.min_value or (spec.exclusive and value == spec.min_value):
                    op = ">" if spec.exclusive else ">="
                    return f"Field '{field_path}' must be {op} {spec.min_value}, got {value}"
            if spec.max_value is not None:
                if value > spec.max_value or (spec.exclusive and value == spec.max_value):
                    op = "<" if spec.exclusive else "<="
                    return f"Field '{field_path}' must be {op} {spec.max_value}, got {value}"

        return None

    def validate_section(self, data: Any, schema_name: str, path: str = "") -> List[Tuple[str, str]]:
        errors: List[Tuple[str, str]] = []
        if not isinstance(data, dict):
            return [(path or schema_name, f"Section '{schema_name}' must be a mapping")]

        schema = self.schemas[schema_name]
        for key in sorted(set(data) - set(schema)):
            errors.append((f"{path}.{key}", f"Unknown field '{path}.{key}'"))
        for field_name, spec in schema.items():
            value = data.get(field_name, spec.default)
            error = self.validate_field(value, spec, path)
            if error:
                errors.append((f"{path}.{field_name}" if path else field_name, error))
        return errors

    def validate_config(self, config: Dict[str, Any]) -> List[Tuple[str, str]]:
        errors: List[Tuple[str, str]] = []
        for key in sorted(set(config) - set(self.schemas)):
            errors.append((key, f"Unknown section '{key}'"))
        for name in self.schemas:
            if name in config:
                errors.extend(self.validate_section(config[name], name, name))
        return errors

    def validate_and_raise(self, config: Dict[str, Any]) -> None:
        """
        Raises:
            ConfigValidationError: If validation fails.
        """
        errors = self.validate_config(config)
        if errors:
            raise ConfigValidationError(errors)
