"""Reading and strict shape-checking of YAML/JSON config documents."""

from __future__ import annotations

from pathlib import Path

import yaml

from .errors import ParseError


def load_mapping(path: str | Path) -> dict:
    """Load a config document and require a mapping at the top level."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: cannot read file: {exc}") from exc
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParseError(f"{path}: not valid YAML/JSON: {exc}") from exc
    if doc is None:
        doc = {}
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be a mapping, got {type(doc).__name__}")
    return doc


def require_keys(doc: dict, required: set[str], optional: set[str], where: str) -> None:
    """Reject unknown keys and report missing required ones."""
    keys = set(doc)
    unknown = keys - required - optional
    if unknown:
        raise ParseError(f"{where}: unknown keys {sorted(unknown)}")
    missing = required - keys
    if missing:
        raise ParseError(f"{where}: missing keys {sorted(missing)}")


def string_list(value, where: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) and v for v in value):
        raise ParseError(f"{where}: expected a list of non-empty strings")
    return value
