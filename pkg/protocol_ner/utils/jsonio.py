"""
JSON helpers.

Every report the toolkit writes goes through dumps_json so that key order
and float rendering are stable across runs.
"""

import json
from pathlib import Path
from typing import Any, Optional, Union


def dumps_json(data: Any) -> str:
    """Serialize with sorted keys, two-space indent and a final newline."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def dump_json(data: Any, path: Optional[Union[str, Path]] = None) -> str:
    """
    Serialize data and optionally write it to path.

    Args:
        data: JSON-compatible value.
        path: Destination file; parent directories are created.

    Returns:
        The serialized text.
    """
    text = dumps_json(data)
    if path is not None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    return text


def load_json(path: Union[str, Path]) -> Any:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)
