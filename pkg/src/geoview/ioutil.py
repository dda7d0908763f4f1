"""Canonical JSON, hashing, and small file helpers.

Everything hashed in this package goes through `canonical_json` so that
hashes are a pure function of content: keys sorted, no whitespace, floats
via repr (exact round-trip for float64).
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def content_hash(obj) -> str:
    """Hash of the canonical JSON form of a JSON-serializable object."""
    return sha256_hex(canonical_json(obj).encode("utf-8"))


def file_hash(path) -> str:
    return sha256_hex(Path(path).read_bytes())


def write_json(path, obj, *, indent: int | None = 2) -> None:
    text = json.dumps(obj, sort_keys=True, indent=indent, allow_nan=False)
    Path(path).write_text(text + "\n", encoding="utf-8")


def read_json(path):
    return json.loads(Path(path).read_text(encoding="utf-8"))
