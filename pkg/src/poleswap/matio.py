"""Test-matrix generation and I/O.

Provides the deterministic matrix families used by the benchmark
harness, a Householder reduction to upper Hessenberg form with exact
zeros below the subdiagonal, a reader for Matrix Market files, and the
delimited row format the benchmark writes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable

import numpy as np

__all__ = [
    "MatrixMarketError",
    "reduce_to_hessenberg",
    "gen_random_hessenberg",
    "gen_iplusj",
    "trial_seed",
    "read_matrix_market",
    "MatrixSource",
    "BenchRow",
    "CSV_HEADER",
    "write_csv",
]


class MatrixMarketError(ValueError):
    """Malformed Matrix Market input; messages carry 1-based line numbers."""


# -- generators ---------------------------------------------------------------


def reduce_to_hessenberg(a: np.ndarray) -> np.ndarray:
    """Unitary similarity reduction to upper Hessenberg form.

    Householder-based; subdiagonal entries of the result are real and
    everything below them is set to exact zeros.  Real input therefore
    yields a real-valued (complex-typed) Hessenberg matrix with the
    same eigenvalues as ``a``.
    """
    h = np.array(a, dtype=np.complex128)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError("expected a square matrix")
    n = h.shape[0]
    for k in range(n - 2):
        col = h[k + 1 :, k]
        alpha = complex(col[0])
        xnorm = float(np.linalg.norm(col[1:]))
        if xnorm == 0.0 and alpha.imag == 0.0:
            continue
        beta = -math.copysign(
            math.sqrt(alpha.real**2 + alpha.imag**2 + xnorm**2), alpha.real
        )
        tau = complex((beta - alpha.real) / beta, -alpha.imag / beta)
        v = np.empty(n - k - 1, dtype=np.complex128)
        v[0] = 1.0
        v[1:] = col[1:] / (alpha - beta)
        sub = h[k + 1 :, k:]
        sub -= tau.conjugate() * np.outer(v, v.conj() @ sub)
        blk = h[:, k + 1 :]
        blk -= tau * np.outer(blk @ v, v.conj())
        h[k + 1, k] = beta
        h[k + 2 :, k] = 0.0
    return h


def gen_random_hessenberg(n: int, seed: int) -> np.ndarray:
    """Standard normal matrix reduced to Hessenberg form, Philox-seeded."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.Generator(np.random.Philox(seed))
    return reduce_to_hessenberg(rng.standard_normal((n, n)))


def gen_iplusj(n: int) -> np.ndarray:
    """The graded Hessenberg matrix with a[i, j] = i + j (1-based) on
    and above the subdiagonal and zeros elsewhere."""
    if n < 1:
        raise ValueError("n must be at least 1")
    idx = np.arange(1, n + 1)
    a = (idx[:, None] + idx[None, :]).astype(np.complex128)
    a[idx[:, None] > idx[None, :] + 1] = 0.0
    return a


def trial_seed(seed: int, n: int, trial: int) -> int:
    """Deterministic per-trial seed, decorrelated across all three keys."""
    return int(np.random.SeedSequence([seed, n, trial]).generate_state(1)[0])


# -- Matrix Market ------------------------------------------------------------

_FORMATS = ("coordinate", "array")
_FIELDS = ("real", "complex", "integer", "pattern")
_SYMMETRIES = ("general", "symmetric", "skew-symmetric", "hermitian")


def _to_float(token: str, lineno: int) -> float:
    try:
        return float(token.replace("D", "E").replace("d", "e"))
    except ValueError:
        raise MatrixMarketError(f"line {lineno}: invalid numeric value {token!r}") from None


def _to_index(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise MatrixMarketError(f"line {lineno}: invalid index {token!r}") from None


def read_matrix_market(source: str | Path | IO[str]) -> np.ndarray:
    """Parse a Matrix Market file into a dense complex matrix.

    Supports both exchange formats (coordinate and array), all four
    value fields, and all four symmetry classes; symmetric, hermitian
    and skew-symmetric storage is expanded.  Duplicate coordinate
    entries are summed.  Structural problems raise
    :class:`MatrixMarketError` with the offending line number.
    """
    if hasattr(source, "read"):
        return _parse_mm(source)
    with open(source, "r", encoding="ascii", errors="replace") as fh:
        return _parse_mm(fh)


def _parse_mm(fh: IO[str]) -> np.ndarray:
    lines = enumerate(fh, start=1)
    try:
        _, header = next(lines)
    except StopIteration:
        raise MatrixMarketError("line 1: empty file") from None
    parts = header.split()
    if len(parts) != 5:
        raise MatrixMarketError("line 1: malformed header, expected 5 tokens")
    banner, obj, fmt, field, symmetry = (t.lower() for t in parts)
    if banner != "%%matrixmarket":
        raise MatrixMarketError("line 1: missing %%MatrixMarket banner")
    if obj != "matrix":
        raise MatrixMarketError(f"line 1: unsupported object {obj!r}")
    if fmt not in _FORMATS:
        raise MatrixMarketError(f"line 1: unknown format {fmt!r}")
    if field not in _FIELDS:
        raise MatrixMarketError(f"line 1: unknown field {field!r}")
    if symmetry not in _SYMMETRIES:
        raise MatrixMarketError(f"line 1: unknown symmetry {symmetry!r}")
    if field == "pattern" and fmt == "array":
        raise MatrixMarketError("line 1: pattern field requires coordinate format")
    if symmetry == "hermitian" and field != "complex":
        raise MatrixMarketError("line 1: hermitian symmetry requires complex field")
    if field == "pattern" and symmetry == "skew-symmetric":
        raise MatrixMarketError("line 1: pattern field cannot be skew-symmetric")

    size_line = None
    for lineno, raw in lines:
        text = raw.strip()
        if not text or text.startswith("%"):
            continue
        size_line = (lineno, text)
        break
    if size_line is None:
        raise MatrixMarketError("unexpected end of file before the size line")
    lineno, text = size_line
    tokens = text.split()
    if fmt == "coordinate":
        if len(tokens) != 3:
            raise MatrixMarketError(f"line {lineno}: coordinate size line needs 3 fields")
        m, n, nnz = (_to_index(t, lineno) for t in tokens)
        return _parse_coordinate(lines, m, n, nnz, field, symmetry)
    if len(tokens) != 2:
        raise MatrixMarketError(f"line {lineno}: array size line needs 2 fields")
    m, n = (_to_index(t, lineno) for t in tokens)
    return _parse_array(lines, m, n, field, symmetry)


def _mirror(v: complex, symmetry: str) -> complex:
    if symmetry == "symmetric":
        return v
    if symmetry == "hermitian":
        return v.conjugate()
    return -v  # skew-symmetric


def _parse_coordinate(lines, m, n, nnz, field, symmetry) -> np.ndarray:
    a = np.zeros((m, n), dtype=np.complex128)
    if field == "pattern":
        need = 2
    elif field == "complex":
        need = 4
    else:
        need = 3
    count = 0
    for lineno, raw in lines:
        text = raw.strip()
        if not text or text.startswith("%"):
            continue
        if count == nnz:
            raise MatrixMarketError(f"line {lineno}: more than {nnz} declared entries")
        tokens = text.split()
        if len(tokens) != need:
            raise MatrixMarketError(
                f"line {lineno}: expected {need} fields, got {len(tokens)}"
            )
        i = _to_index(tokens[0], lineno)
        j = _to_index(tokens[1], lineno)
        if not (1 <= i <= m and 1 <= j <= n):
            raise MatrixMarketError(f"line {lineno}: index ({i}, {j}) out of range")
        if symmetry != "general" and i < j:
            raise MatrixMarketError(
                f"line {lineno}: entry above the diagonal in a {symmetry} matrix"
            )
        if symmetry == "skew-symmetric" and i == j:
            raise MatrixMarketError(
                f"line {lineno}: diagonal entry in a skew-symmetric matrix"
            )
        if field == "pattern":
            v = 1.0 + 0.0j
        elif field == "complex":
            v = complex(_to_float(tokens[2], lineno), _to_float(tokens[3], lineno))
        else:
            v = complex(_to_float(tokens[2], lineno))
        a[i - 1, j - 1] += v
        if symmetry != "general" and i != j:
            a[j - 1, i - 1] += _mirror(v, symmetry)
        count += 1
    if count != nnz:
        raise MatrixMarketError(
            f"unexpected end of file: expected {nnz} entries, found {count}"
        )
    return a


def _parse_array(lines, m, n, field, symmetry) -> np.ndarray:
    if symmetry != "general" and m != n:
        raise MatrixMarketError(f"{symmetry} array matrices must be square")
    a = np.zeros((m, n), dtype=np.complex128)
    need = 2 if field == "complex" else 1
    if symmetry == "general":
        slots = [(i, j) for j in range(1, n + 1) for i in range(1, m + 1)]
    elif symmetry == "skew-symmetric":
        slots = [(i, j) for j in range(1, n + 1) for i in range(j + 1, m + 1)]
    else:
        slots = [(i, j) for j in range(1, n + 1) for i in range(j, m + 1)]
    k = 0
    for lineno, raw in lines:
        text = raw.strip()
        if not text or text.startswith("%"):
            continue
        if k == len(slots):
            raise MatrixMarketError(f"line {lineno}: trailing data after all entries")
        tokens = text.split()
        if len(tokens) != need:
            raise MatrixMarketError(
                f"line {lineno}: expected {need} fields, got {len(tokens)}"
            )
        if field == "complex":
            v = complex(_to_float(tokens[0], lineno), _to_float(tokens[1], lineno))
        else:
            v = complex(_to_float(tokens[0], lineno))
        i, j = slots[k]
        a[i - 1, j - 1] = v
        if symmetry != "general" and i != j:
            a[j - 1, i - 1] = _mirror(v, symmetry)
        k += 1
    if k != len(slots):
        raise MatrixMarketError(
            f"unexpected end of file: expected {len(slots)} values, found {k}"
        )
    return a


# -- matrix sources and benchmark rows ----------------------------------------


@dataclass(frozen=True)
class MatrixSource:
    """A named way of obtaining a test matrix.

    ``kind`` is ``"file"`` (Matrix Market path), ``"random"`` (seeded
    normal Hessenberg) or ``"iplusj"``.
    """

    kind: str
    path: str | None = None
    n: int = 0
    seed: int = 0

    def load(self) -> np.ndarray:
        if self.kind == "file":
            if self.path is None:
                raise ValueError("file source needs a path")
            return read_matrix_market(self.path)
        if self.kind == "random":
            return gen_random_hessenberg(self.n, self.seed)
        if self.kind == "iplusj":
            return gen_iplusj(self.n)
        raise ValueError(f"unknown matrix source kind {self.kind!r}")

    @property
    def name(self) -> str:
        if self.kind == "file":
            return Path(self.path or "").stem
        if self.kind == "random":
            return f"random-n{self.n}-s{self.seed}"
        return f"iplusj-n{self.n}"


CSV_HEADER = "name,n,algo,time_s,bwe,iters,iters_per_n,status"


@dataclass
class BenchRow:
    """One benchmark result row; floats are written with ``str()``.

    Detail rows carry integer sweep counts; aggregate rows put the mean
    (generally fractional) in the same column.
    """

    name: str
    n: int
    algo: str
    time_s: float
    bwe: float
    iters: int | float
    iters_per_n: float
    status: str

    def as_line(self) -> str:
        return ",".join(
            [
                self.name,
                str(self.n),
                self.algo,
                str(self.time_s),
                str(self.bwe),
                str(self.iters),
                str(self.iters_per_n),
                self.status,
            ]
        )


def write_csv(rows: Iterable[BenchRow], dest: str | Path | IO[str]) -> None:
    """Write benchmark rows with the fixed header to ``dest``."""
    text = "\n".join([CSV_HEADER, *(r.as_line() for r in rows)]) + "\n"
    if hasattr(dest, "write"):
        dest.write(text)
        return
    with open(dest, "w", encoding="ascii") as fh:
        fh.write(text)
