"""Deterministic JSON/CSV serialization and matrix-file parsing.

Floats are always rendered with 17 significant digits, so identical inputs
and seeds produce byte-identical output files.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import DimensionMismatchError, MatrixParseError


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def dumps(obj) -> str:
    """Deterministic JSON text: insertion-ordered keys, 17-digit floats."""
    out: list[str] = []
    _emit(obj, out, 0)
    out.append("\n")
    return "".join(out)


def _emit(obj, out: list[str], depth: int) -> None:
    pad = "  " * depth
    pad1 = "  " * (depth + 1)
    if obj is None:
        out.append("null")
    elif isinstance(obj, (bool, np.bool_)):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(fmt_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(obj.items()):
            out.append(pad1 + json.dumps(str(k)) + ": ")
            _emit(v, out, depth + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            out.append("[]")
            return
        out.append("[\n")
        for i, v in enumerate(seq):
            out.append(pad1)
            _emit(v, out, depth + 1)
            out.append(",\n" if i < len(seq) - 1 else "\n")
        out.append(pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj)!r}")


def complex_obj(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def matrix_obj(m: np.ndarray) -> dict:
    return {
        "n": int(m.shape[0]),
        "rows": [[complex_obj(x) for x in row] for row in np.asarray(m)],
    }


def load_matrix(path: str) -> np.ndarray:
    """Parse a matrix file: {"n": int, "rows": [[{re, im}, ...], ...]}."""
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise MatrixParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MatrixParseError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return matrix_from_obj(obj, where=path)


def matrix_from_obj(obj, where: str = "<matrix>") -> np.ndarray:
    if not isinstance(obj, dict) or "n" not in obj or "rows" not in obj:
        raise MatrixParseError(f"{where}: expected an object with fields 'n' and 'rows'")
    try:
        n = int(obj["n"])
    except (TypeError, ValueError) as exc:
        raise MatrixParseError(f"{where}: field 'n' must be an integer") from exc
    if n < 1:
        raise MatrixParseError(f"{where}: field 'n' must be positive")
    rows = obj["rows"]
    if not isinstance(rows, list) or len(rows) != n:
        raise DimensionMismatchError(f"{where}: expected {n} rows, got {len(rows) if isinstance(rows, list) else 'none'}")
    out = np.zeros((n, n), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise DimensionMismatchError(f"{where}: row {i} must have {n} entries")
        for j, cell in enumerate(row):
            try:
                re = float(cell["re"])
                im = float(cell["im"])
            except (TypeError, KeyError, ValueError) as exc:
                raise MatrixParseError(
                    f"{where}: row {i}, column {j}: expected an object with numeric 're' and 'im'"
                ) from exc
            if not (math.isfinite(re) and math.isfinite(im)):
                raise MatrixParseError(f"{where}: row {i}, column {j}: entries must be finite")
            out[i, j] = complex(re, im)
    return out


def save_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def boundary_csv(thetas, supports, witnesses) -> str:
    """One boundary sample per line: theta,support,re,im."""
    lines = []
    for th, h, w in zip(thetas, supports, witnesses):
        lines.append(
            f"{fmt_float(th)},{fmt_float(h)},{fmt_float(w.real)},{fmt_float(w.imag)}\n"
        )
    return "".join(lines)
