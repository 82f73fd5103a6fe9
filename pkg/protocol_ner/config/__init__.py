"""
Protocol NER - Configuration Package

Layered configuration (defaults, global and project YAML, environment,
command line) with schema validation.
"""

from .manager import (
    ConfigManager,
    LoggingConfig,
    PipelineSettings,
    ProtocolNerConfig,
)
from .schema import ConfigSchema, ConfigValidationError, FieldSpec

__all__ = [
    # Manager
    "ConfigManager",
    "LoggingConfig",
    "PipelineSettings",
    "ProtocolNerConfig",
    # Schema
    "ConfigSchema",
    "ConfigValidationError",
    "FieldSpec",
]
