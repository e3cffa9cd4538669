"""JSON instance and report files."""

from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path
from typing import Any, Dict

import numpy as np

from .model import ProblemInstance

VECTOR_FIELDS = ("delta", "alpha", "lower", "upper")
MATRIX_FIELDS = ("theta", "beta")


class InstanceFormatError(ValueError):
    """Malformed instance document; ``field`` names the offending key."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def instance_to_dict(instance: ProblemInstance) -> Dict[str, Any]:
    doc: Dict[str, Any] = {"n": instance.n, "m": instance.m}
    for name in VECTOR_FIELDS + MATRIX_FIELDS + ("sigma",):
        doc[name] = getattr(instance, name).tolist()
    if instance.witness is not None:
        doc["witness"] = instance.witness.tolist()
    return doc


def _numbers(doc, name, shape):
    if name not in doc:
        raise InstanceFormatError(name, "missing field")
    try:
        arr = np.array(doc[name], dtype=float)
    except (TypeError, ValueError):
        raise InstanceFormatError(name, "expected numbers") from None
    if arr.size == 0:
        arr = arr.reshape(shape)
    if arr.shape != shape:
        raise InstanceFormatError(name, f"shape {arr.shape}, expected {shape}")
    if not np.all(np.isfinite(arr)):
        raise InstanceFormatError(name, "non-finite entry")
    return arr


def instance_from_dict(doc: Dict[str, Any]) -> ProblemInstance:
    if not isinstance(doc, dict):
        raise InstanceFormatError("<root>", "expected a JSON object")
    dims = {}
    for key in ("n", "m"):
        v = doc.get(key)
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise InstanceFormatError(key, f"expected a nonnegative integer, got {v!r}")
        dims[key] = v
    n, m = dims["n"], dims["m"]
    if n < 1:
        raise InstanceFormatError("n", "must be >= 1")
    fields = {name: _numbers(doc, name, (n,)) for name in VECTOR_FIELDS}
    for name in MATRIX_FIELDS:
        fields[name] = _numbers(doc, name, (m, n))
    fields["sigma"] = _numbers(doc, "sigma", (m,))
    if doc.get("witness") is not None:
        fields["witness"] = _numbers(doc, "witness", (n,))
    return ProblemInstance(**fields)


def dumps(doc) -> str:
    return json.dumps(doc, allow_nan=False)


def write_json(path, doc) -> str:
    """Write ``doc`` and return the SHA-256 digest of the bytes written."""
    data = dumps(doc).encode()
    Path(path).write_bytes(data)
    return hashlib.sha256(data).hexdigest()


def read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InstanceFormatError("<root>", f"invalid JSON ({exc})") from None


def save_instance(instance: ProblemInstance, path) -> str:
    return write_json(path, instance_to_dict(instance))


def load_instance(path) -> ProblemInstance:
    return instance_from_dict(read_json(path))


def finite_or_none(x: float):
    return x if math.isfinite(x) else None
