"""JSON encoding with 17-significant-digit reals.

The stdlib encoder writes shortest round-trip reprs; the artifact format
pins ``%.17g`` instead so files are byte-stable under load/dump cycles.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .linalg import as_matrix


def _fmt_float(x: float) -> str:
    if not np.isfinite(x):
        raise ValidationError(f"non-finite value {x} cannot be serialized")
    s = format(float(x), ".17g")
    if s == "-0":
        s = "0"
    return s


def _encode(obj, depth: int, indent: int) -> str:
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        pad = " " * (indent * (depth + 1))
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, depth + 1, indent)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + " " * (indent * depth) + "}"
    if isinstance(obj, (list, tuple)):
        # lists of scalars or small pairs stay on one line
        if all(not isinstance(x, (dict, list, tuple)) for x in obj) or all(
            isinstance(x, (list, tuple)) and all(not isinstance(y, (dict, list, tuple)) for y in x)
            for x in obj
        ):
            return "[" + ", ".join(_encode(x, 0, 0) for x in obj) + "]"
        pad = " " * (indent * (depth + 1))
        items = [pad + _encode(x, depth + 1, indent) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + " " * (indent * depth) + "]"
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    raise ValidationError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 1) -> str:
    """Serialize ``obj`` (dicts, lists, numbers, strings) as newline-terminated JSON."""
    return _encode(obj, 0, indent) + "\n"


def loads(text: str):
    return json.loads(text)


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def read_json(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ValidationError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc})") from exc


def complex_pairs(values) -> list:
    """Nested complex array -> nested ``[re, im]`` lists."""
    arr = np.asarray(values, dtype=complex)
    if arr.ndim == 0:
        return [float(arr.real), float(arr.imag)]
    return [complex_pairs(x) for x in arr]


def from_pairs(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.shape[-1:] != (2,):
        raise ValidationError("complex entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def matrix_to_dict(m) -> dict:
    m = as_matrix(m)
    return {"dim": int(m.shape[0]), "entries": complex_pairs(m)}


def matrix_from_dict(data: dict) -> np.ndarray:
    try:
        n = int(data["dim"])
        m = from_pairs(data["entries"])
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed matrix JSON: {exc}") from exc
    if m.shape != (n, n):
        raise ValidationError(f"matrix JSON declares dim {n} but entries have shape {m.shape}")
    return m
