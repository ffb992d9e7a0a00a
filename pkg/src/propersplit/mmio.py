"""Minimal MatrixMarket reader and writer.

Supports exactly the profile used by this package: real, general, dense
``array`` files (column-major entries) and sparse ``coordinate`` files with
1-based (row, col, value) triplets where unspecified entries are zero.
Anything else in the header is rejected.
"""

from __future__ import annotations

import math
import os

import numpy as np

__all__ = ["ParseError", "read_matrix", "write_matrix", "loads", "dumps"]

_BANNER = "%%MatrixMarket"
_FORMATS = ("array", "coordinate")


class ParseError(ValueError):
    """Raised when a file is not valid MatrixMarket in the supported profile."""


def _data_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        yield lineno, line


def _float(token: str, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"line {lineno}: bad numeric value {token!r}") from None
    if not math.isfinite(value):
        raise ParseError(f"line {lineno}: non-finite value {token!r}")
    return value


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"line {lineno}: bad integer {token!r}") from None


def loads(text: str) -> np.ndarray:
    lines = text.splitlines()
    if not lines or not lines[0].startswith(_BANNER):
        raise ParseError("missing MatrixMarket header line")
    header = lines[0].split()
    if len(header) != 5:
        raise ParseError(f"malformed header: {lines[0]!r}")
    _, obj, fmt, field, symmetry = (tok.lower() for tok in header)
    if obj != "matrix" or fmt not in _FORMATS or field != "real" or symmetry != "general":
        raise ParseError(f"unsupported header: {lines[0]!r}")

    body = _data_lines("\n".join(lines[1:]))
    try:
        size_lineno, size_line = next(body)
    except StopIteration:
        raise ParseError("missing size line") from None
    size = size_line.split()

    if fmt == "array":
        if len(size) != 2:
            raise ParseError(f"line {size_lineno}: array size line needs 2 fields")
        m, n = (_int(tok, size_lineno) for tok in size)
        if m < 1 or n < 1:
            raise ParseError(f"line {size_lineno}: dimensions must be positive")
        values = []
        for lineno, line in body:
            for tok in line.split():
                values.append(_float(tok, lineno))
        if len(values) != m * n:
            raise ParseError(f"expected {m * n} entries, found {len(values)}")
        # file order is column-major
        a = np.array(values).reshape((n, m)).T.copy()
    else:
        if len(size) != 3:
            raise ParseError(f"line {size_lineno}: coordinate size line needs 3 fields")
        m, n, nnz = (_int(tok, size_lineno) for tok in size)
        if m < 1 or n < 1 or nnz < 0:
            raise ParseError(f"line {size_lineno}: bad coordinate sizes")
        a = np.zeros((m, n))
        seen = set()
        count = 0
        for lineno, line in body:
            fields = line.split()
            if len(fields) != 3:
                raise ParseError(f"line {lineno}: triplet needs 3 fields")
            count += 1
            if count > nnz:
                raise ParseError(f"expected {nnz} entries, found more")
            i = _int(fields[0], lineno)
            j = _int(fields[1], lineno)
            if not (1 <= i <= m and 1 <= j <= n):
                raise ParseError(f"line {lineno}: index ({i}, {j}) out of range")
            if (i, j) in seen:
                raise ParseError(f"line {lineno}: duplicate entry ({i}, {j})")
            seen.add((i, j))
            a[i - 1, j - 1] = _float(fields[2], lineno)
        if count != nnz:
            raise ParseError(f"expected {nnz} entries, found {count}")

    a.flags.writeable = False
    return a


def dumps(a, fmt: str = "array", comment: str | None = None) -> str:
    if fmt not in _FORMATS:
        raise ValueError(f"fmt must be one of {_FORMATS}, got {fmt!r}")
    a = np.asarray(a, dtype=float)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    if a.ndim != 2 or a.size == 0:
        raise ValueError("only nonempty 2-D matrices can be written")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    m, n = a.shape
    out = [f"{_BANNER} matrix {fmt} real general"]
    if comment:
        out.extend(f"% {line}" for line in comment.splitlines())
    if fmt == "array":
        out.append(f"{m} {n}")
        for j in range(n):
            for i in range(m):
                out.append(f"{a[i, j]:.17g}")
    else:
        rows, cols = np.nonzero(a.T)
        out.append(f"{m} {n} {len(rows)}")
        for j, i in zip(rows, cols):
            out.append(f"{i + 1} {j + 1} {a[i, j]:.17g}")
    return "\n".join(out) + "\n"


def read_matrix(path: str | os.PathLike) -> np.ndarray:
    with open(path, encoding="ascii") as fh:
        return loads(fh.read())


def write_matrix(path: str | os.PathLike, a, fmt: str = "array", comment: str | None = None) -> None:
    text = dumps(a, fmt=fmt, comment=comment)
    with open(path, "w", encoding="ascii") as fh:
        fh.write(text)
