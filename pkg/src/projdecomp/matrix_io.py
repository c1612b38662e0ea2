"""JSON matrix files: ``{"n": n, "rows": [[[re, im], ...], ...]}``.

Floats are written with ``repr`` (shortest string that round-trips), so
write-then-read reproduces every double bit for bit.  An optional ``label``
string travels with the matrix.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ValidationError


@dataclass
class MatrixFile:
    matrix: np.ndarray
    label: str | None = None

    @property
    def n(self):
        return self.matrix.shape[0]


def _entry(z):
    z = complex(z)
    return [float(z.real), float(z.imag)]


def matrix_to_rows(M):
    M = np.asarray(M)
    return [[_entry(z) for z in row] for row in M]


def _parse_number(x, where):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ValidationError(f"{where}: expected a number, got {x!r}")
    x = float(x)
    if not math.isfinite(x):
        raise ValidationError(f"{where}: non-finite entry")
    return x


def rows_to_matrix(rows, n=None, name="rows"):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ValidationError(f"{name} must be a list of lists")
    if n is None:
        n = len(rows)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValidationError(f"{name} is not {n} x {n}")
    M = np.empty((n, n), dtype=complex)
    for i, row in enumerate(rows):
        for j, entry in enumerate(row):
            where = f"{name}[{i}][{j}]"
            if not isinstance(entry, list) or len(entry) != 2:
                raise ValidationError(f"{where}: expected [re, im]")
            M[i, j] = complex(_parse_number(entry[0], where), _parse_number(entry[1], where))
    return M


def loads_json(text, source="<input>"):
    """``json.loads`` with a line/column diagnostic on malformed text."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc


def parse_matrix(data):
    if not isinstance(data, dict) or "rows" not in data:
        raise ValidationError('expected an object with "n" and "rows"')
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValidationError(f'"n" must be a positive integer, got {n!r}')
    label = data.get("label")
    return MatrixFile(rows_to_matrix(data["rows"], n), label if isinstance(label, str) else None)


def read_matrix(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_matrix(loads_json(text, str(path)))


def dump_matrix(M, label=None):
    M = np.asarray(M)
    out = {"n": int(M.shape[0]), "rows": matrix_to_rows(M)}
    if label:
        out["label"] = label
    return json.dumps(out)


def write_matrix(path, M, label=None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_matrix(M, label))
        fh.write("\n")
