"""Versioned JSON checkpoint container.

Layout (format_version 1):
    params    -- list of {name, shape, data} with row-major float lists
    optimizer -- optimizer state dict or null
    step      -- optimizer step counter
    extra     -- arbitrary JSON payload owned by the caller

Floats are serialized via repr, which round-trips float64 exactly, so a
save/load cycle is bit-preserving and file hashes are reproducible.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from ..errors import ContractError
from ..ioutil import read_json, sha256_hex, canonical_json
from .tensor import Tensor

FORMAT_VERSION = 1


def params_doc(params: dict[str, Tensor]) -> list[dict]:
    return [
        {"name": name, "shape": list(t.shape), "data": t.data.reshape(-1).tolist()}
        for name, t in params.items()
    ]


def save_checkpoint(path, *, params: dict[str, Tensor], optimizer_state: dict | None = None,
                    step: int = 0, extra: dict | None = None) -> str:
    doc = {
        "format_version": FORMAT_VERSION,
        "step": step,
        "params": params_doc(params),
        "optimizer": optimizer_state,
        "extra": extra or {},
    }
    text = canonical_json(doc)
    Path(path).write_text(text, encoding="utf-8")
    return sha256_hex(text.encode("utf-8"))


def load_checkpoint(path) -> dict:
    doc = read_json(path)
    if doc.get("format_version") != FORMAT_VERSION:
        raise ContractError(f"unsupported checkpoint format: {doc.get('format_version')!r}")
    arrays = {}
    for entry in doc["params"]:
        arr = np.asarray(entry["data"], dtype=np.float64).reshape(entry["shape"])
        arrays[entry["name"]] = arr
    doc["param_arrays"] = arrays
    return doc


def restore_params(params: dict[str, Tensor], arrays: dict[str, np.ndarray]) -> None:
    """Write saved values into an existing parameter dict (shapes must match)."""
    missing = set(params) - set(arrays)
    if missing:
        raise ContractError(f"checkpoint missing parameters: {sorted(missing)}")
    for name, t in params.items():
        arr = arrays[name]
        if tuple(arr.shape) != t.shape:
            raise ContractError(
                f"checkpoint shape mismatch for {name}: {arr.shape} vs {t.shape}")
        t.data = np.array(arr)
