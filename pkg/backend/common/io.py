"""
JSON Ingestion and Report Emission
Every document carries a schema version; reports are emitted deterministically.
"""

import json
from pathlib import Path
from typing import Any, Dict, Optional, Union

from .errors import ScenarioError, SchemaVersionError

SCHEMA_VERSION = 1


def check_version(data: Dict[str, Any], kind: str) -> Dict[str, Any]:
    """
    Reject documents whose version is missing or unknown.

    Args:
        data: Parsed JSON object
        kind: Document kind used in the error message

    Returns:
        The same dictionary
    """
    if not isinstance(data, dict):
        raise SchemaVersionError(f"{kind}: expected a JSON object")
    version = data.get('version')
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(
            f"{kind}: unsupported schema version {version!r} (expected {SCHEMA_VERSION})"
        )
    return data


def load_json(path: Union[str, Path], kind: str = 'document') -> Dict[str, Any]:
    """Read a JSON file and check its schema version."""
    path = Path(path)
    if not path.is_file():
        raise ScenarioError(f"{kind}: file not found: {path}")
    try:
        data = json.loads(path.read_text(encoding='utf-8'))
    except json.JSONDecodeError as e:
        raise ScenarioError(f"{kind}: invalid JSON in {path}: {e}") from e
    return check_version(data, kind)


def resolve_document(ref: Any, base_dir: Optional[Path], kind: str) -> Dict[str, Any]:
    """
    Resolve an inline document or a path reference relative to base_dir.

    Args:
        ref: Inline dict or a path string
        base_dir: Directory used for relative paths
        kind: Document kind used in error messages

    Returns:
        The version-checked document
    """
    if isinstance(ref, dict):
        return check_version(ref, kind)
    if isinstance(ref, str):
        path = Path(ref)
        if not path.is_absolute() and base_dir is not None:
            path = base_dir / path
        return load_json(path, kind)
    raise ScenarioError(f"{kind}: expected an inline object or a file path, got {type(ref).__name__}")


def dump_report(report: Any) -> str:
    """Serialize a report byte-identically across runs."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=True) + '\n'
