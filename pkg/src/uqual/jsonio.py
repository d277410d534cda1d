"""JSON/CSV document plumbing: canonical serialization and schema key checks.

All documents written by the toolkit are versioned with a "schema_version"
field and serialized canonically (sorted keys, 2-space indent, trailing
newline) so that repeated runs with identical inputs are byte-identical.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable, Mapping

from .errors import SchemaError

SCHEMA_VERSION = 1


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(path: str | Path, obj: Any) -> None:
    Path(path).write_text(canonical_dumps(obj), encoding="utf-8")


def read_json(path: str | Path) -> Any:
    p = Path(path)
    if not p.exists():
        raise SchemaError(f"file not found: {p}")
    try:
        return json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{p}: invalid JSON: {exc}") from exc


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def check_keys(
    doc: Mapping[str, Any],
    label: str,
    *,
    required: Iterable[str],
    optional: Iterable[str] = (),
    versioned: bool = False,
) -> None:
    """Reject missing required keys and any unknown key in ``doc``.

    Top-level documents pass ``versioned=True`` to accept (and check) the
    "schema_version" field; nested objects reject it like any unknown key.
    """
    if not isinstance(doc, Mapping):
        raise SchemaError(f"{label}: expected an object, got {type(doc).__name__}")
    required = set(required)
    allowed = required | set(optional)
    if versioned:
        allowed.add("schema_version")
    missing = sorted(required - doc.keys())
    if missing:
        raise SchemaError(f"{label}: missing required key(s): {', '.join(missing)}")
    unknown = sorted(doc.keys() - allowed)
    if unknown:
        raise SchemaError(f"{label}: unknown key(s): {', '.join(unknown)}")
    if versioned:
        version = doc.get("schema_version", SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise SchemaError(f"{label}: unsupported schema_version {version!r}")


def sig6(value: float) -> str:
    """Format with 6 significant digits, dot decimal separator."""
    return format(float(value), ".6g")
