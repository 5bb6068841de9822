"""JSON matrix files.

Layout::

    {"n": 2, "backend": "exact", "entries": [[["1/2", "0"], ...], ...]}

Float entries are ``[re, im]`` numbers, exact entries ``["p/q", "r/s"]``
strings. :func:`dumps` is canonical, so parse followed by serialize
reproduces a file written by this module byte for byte.
"""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction

import numpy as np

from .numeric import ExactMatrix, as_float, is_exact

__all__ = [
    "MatrixFileError", "MalformedJSONError", "DimensionError", "RationalFormatError",
    "loads", "dumps", "parse_matrix", "serialize_matrix",
]


class MatrixFileError(ValueError):
    """Base class for matrix-file problems."""


class MalformedJSONError(MatrixFileError):
    pass


class DimensionError(MatrixFileError):
    pass


class RationalFormatError(MatrixFileError):
    pass


_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def _rational(s) -> Fraction:
    if not isinstance(s, str) or not _RATIONAL.match(s):
        raise RationalFormatError(f"bad rational string {s!r} (expected 'p' or 'p/q')")
    if "/" in s and int(s.split("/")[1]) == 0:
        raise RationalFormatError(f"zero denominator in {s!r}")
    return Fraction(s)


def _float(x) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
        raise MatrixFileError(f"bad float entry {x!r}")
    return float(x)


def loads(text: str):
    """Parse a matrix file's contents; returns an ndarray or an :class:`ExactMatrix`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedJSONError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict) or not {"n", "backend", "entries"} <= doc.keys():
        raise MatrixFileError("matrix file needs 'n', 'backend' and 'entries'")
    n, backend, rows = doc["n"], doc["backend"], doc["entries"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DimensionError(f"'n' must be a positive integer, got {n!r}")
    if backend not in ("float", "exact"):
        raise MatrixFileError(f"backend must be 'float' or 'exact', got {backend!r}")
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise MatrixFileError("'entries' must be a list of rows")
    if len(rows) != n or any(len(r) != n for r in rows):
        count = sum(map(len, rows))
        raise DimensionError(f"expected {n}x{n} entries, got {count} in {len(rows)} rows")
    for r in rows:
        for z in r:
            if not isinstance(z, list) or len(z) != 2:
                raise MatrixFileError(f"entry {z!r} is not a [re, im] pair")
    if backend == "exact":
        return ExactMatrix.from_entries([[(_rational(a), _rational(b)) for a, b in r] for r in rows])
    return np.array([[complex(_float(a), _float(b)) for a, b in r] for r in rows])


def _fmt_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _fmt_float(x: float) -> str:
    x = float(x)
    if x == 0:
        x = 0.0  # drop the sign of negative zero
    return json.dumps(x)


def dumps(M) -> str:
    """Canonical text of a square matrix."""
    n, c = M.shape
    if n != c:
        raise DimensionError("only square matrices are stored")
    if is_exact(M):
        cell = lambda z: f'["{_fmt_rational(z.re)}", "{_fmt_rational(z.im)}"]'
        rows = [[cell(M[i, j]) for j in range(n)] for i in range(n)]
        backend = "exact"
    else:
        a = as_float(M)
        rows = [[f"[{_fmt_float(z.real)}, {_fmt_float(z.imag)}]" for z in r] for r in a]
        backend = "float"
    body = ",\n".join("    [" + ", ".join(r) + "]" for r in rows)
    return f'{{\n  "n": {n},\n  "backend": "{backend}",\n  "entries": [\n{body}\n  ]\n}}\n'


def parse_matrix(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def serialize_matrix(M, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(M))
