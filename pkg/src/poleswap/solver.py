"""Eigenvalue solvers for the Hessenberg pencil A - lambda U.

Two drivers share one outer deflation loop:

``rqr_solve``
    Pole-swapping iteration.  Each sweep introduces a shift as the top
    pole, swaps it down the window one position at a time, and installs
    a fresh pole at the bottom.  Shifts approach eigenvalues near the
    bottom of the window while poles (which drift upward on later
    sweeps) approach eigenvalues near the top, so deflations occur at
    both ends.

``qr_solve``
    Single-shift implicit QR on the matrix alone, used as the baseline.
    Same window management, deflation test and report format; the
    unitary factor stays the identity.

Eigenvalues are reported projectively as (numerator, denominator)
pairs; a zero denominator is a genuine infinite eigenvalue of the
pencil and never an error.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from .moves import (
    DeflatableSwapError,
    TransformRecorder,
    move_type1_bottom,
    move_type1_top,
    move_type2_swap,
    triangularize_2x2,
)
from .pencil import HessenbergPencil, ProjectiveValue, chordal_distance
from .rotations import EPS, CoreTransformation, _rot_cols, _rot_rows, left_eliminator

__all__ = [
    "ShiftStrategy",
    "DeflationCriterion",
    "SolveDiagnostics",
    "SolveReport",
    "eig2x2_pencil",
    "rayleigh_shift",
    "rayleigh_pole",
    "wilkinson_shift",
    "wilkinson_pole",
    "deflation_scan",
    "extract_eigenvalue",
    "rqr_solve",
    "qr_solve",
]

_TINY = float(np.finfo(np.float64).tiny)


class ShiftStrategy(Enum):
    """How shift and pole values are estimated from the window."""

    RAYLEIGH_QUOTIENT = "rayleigh-quotient"
    WILKINSON = "wilkinson"


@dataclass(frozen=True)
class DeflationCriterion:
    """Relative test deciding when a subdiagonal pair is negligible.

    Position ``j`` deflates only when both sides pass:
    ``|a[j+1, j]| <= f * eps * (|a[j, j]| + |a[j+1, j+1]|)`` and
    ``|s_j| <= f * eps * (|u[j, j]| + |u[j+1, j+1]|)``.  When the local
    diagonal of A sums to zero the nearest subdiagonal neighbours stand
    in for it, a zero unitary diagonal sum falls back to 1, and an
    absolute floor keeps the test meaningful near the underflow
    threshold.
    """

    f: float = 1.0

    def fires(self, p: HessenbergPencil, j: int) -> bool:
        a = p.a
        sub = abs(a[j, j - 1])
        s = abs(p.u.core(j).s)
        if sub == 0.0 and s == 0.0:
            return True
        tst_a = abs(a[j - 1, j - 1]) + abs(a[j, j])
        if tst_a == 0.0:
            if j >= 2:
                tst_a += abs(a[j - 1, j - 2])
            if j + 1 < p.n:
                tst_a += abs(a[j + 1, j])
        tst_u = abs(p.u.entry(j, j)) + abs(p.u.entry(j + 1, j + 1))
        if tst_u == 0.0:
            tst_u = 1.0
        scale = self.f * EPS
        floor = _TINY / EPS
        return sub <= max(scale * tst_a, floor) and s <= max(scale * tst_u, floor)


@dataclass
class SolveDiagnostics:
    """Counters and residual statistics collected during a solve."""

    residual_count: int = 0
    max_residual: float = 0.0
    degenerate_skips: int = 0
    infinite_bottom_poles: int = 0


@dataclass
class SolveReport:
    """Outcome of a solve.

    ``eigenvalues`` and ``positions`` are aligned and in emission order
    (bottom of the matrix first).  ``iterations`` counts full sweeps;
    terminal 2 x 2 blocks are resolved directly and do not count.
    ``deflations`` lists ``(position, sweep)`` pairs for subdiagonal
    pairs zeroed by the deflation test.  When ``record=True`` was
    requested, ``recorder`` holds the accumulated unitary factors and
    ``schur_a`` / ``schur_u`` the final triangular pencil.
    """

    eigenvalues: list[ProjectiveValue]
    positions: list[int]
    iterations: int
    swaps: int
    deflations: list[tuple[int, int]]
    status: str
    algorithm: str
    diagnostics: SolveDiagnostics = field(default_factory=SolveDiagnostics)
    recorder: TransformRecorder | None = None
    schur_a: np.ndarray | None = None
    schur_u: np.ndarray | None = None

    @property
    def eigenvalues_complex(self) -> np.ndarray:
        """Eigenvalues as complex numbers; infinite ones become inf."""
        return np.array([v.as_complex() for v in self.eigenvalues])


# -- 2 x 2 subproblems --------------------------------------------------------


def eig2x2_pencil(
    a2: np.ndarray, b2: np.ndarray
) -> tuple[ProjectiveValue, ProjectiveValue]:
    """Both eigenvalues of a 2 x 2 pencil ``a2 - lambda b2``.

    Triangular pairs are read off the diagonals exactly.  The general
    case solves ``c2 l^2 - c1 l + c0 = 0`` with the root of larger
    magnitude computed first and the other recovered from the product,
    which avoids cancellation.  Degree-deficient pencils yield repeated
    eigenvalues at infinity (``c2 = c1 = 0``) or zero (``c0 = c1 = 0``);
    an identically singular pencil raises ValueError.
    """
    a11, a12 = complex(a2[0, 0]), complex(a2[0, 1])
    a21, a22 = complex(a2[1, 0]), complex(a2[1, 1])
    b11, b12 = complex(b2[0, 0]), complex(b2[0, 1])
    b21, b22 = complex(b2[1, 0]), complex(b2[1, 1])
    if a21 == 0.0 and b21 == 0.0:
        if (a11 == 0.0 and b11 == 0.0) or (a22 == 0.0 and b22 == 0.0):
            raise ValueError("singular 2 x 2 pencil")
        return ProjectiveValue(a11, b11), ProjectiveValue(a22, b22)
    c2 = b11 * b22 - b12 * b21
    c1 = a11 * b22 + a22 * b11 - a12 * b21 - a21 * b12
    c0 = a11 * a22 - a12 * a21
    if c1 == 0.0:
        if c2 == 0.0 and c0 == 0.0:
            raise ValueError("singular 2 x 2 pencil")
        if c2 == 0.0:
            return ProjectiveValue(1.0, 0.0), ProjectiveValue(1.0, 0.0)
        if c0 == 0.0:
            return ProjectiveValue(0.0, 1.0), ProjectiveValue(0.0, 1.0)
    sq = cmath.sqrt(c1 * c1 - 4.0 * c0 * c2)
    q1 = c1 + sq
    q2 = c1 - sq
    q = q1 if abs(q1) >= abs(q2) else q2
    return ProjectiveValue(q, 2.0 * c2), ProjectiveValue(2.0 * c0, q)


def _diag_value(p: HessenbergPencil, i: int) -> ProjectiveValue | None:
    """Projective diagonal ratio at ``i``, or None when 0/0."""
    num = complex(p.a[i - 1, i - 1])
    den = p.u.entry(i, i)
    if num == 0.0 and den == 0.0:
        return None
    return ProjectiveValue(num, den)


def _closer_root(
    roots: tuple[ProjectiveValue, ProjectiveValue], target: ProjectiveValue | None
) -> ProjectiveValue:
    if target is None:
        return roots[0]
    d0 = chordal_distance(roots[0], target)
    d1 = chordal_distance(roots[1], target)
    return roots[0] if d0 <= d1 else roots[1]


def wilkinson_shift(p: HessenbergPencil) -> ProjectiveValue:
    """Eigenvalue of the trailing 2 x 2 subpencil closer to the corner ratio."""
    hi = p.hi
    a2 = np.array(p.a[hi - 2 : hi, hi - 2 : hi])
    b2 = p.u.corner_block(hi - 1, variant="full")
    return _closer_root(eig2x2_pencil(a2, b2), _diag_value(p, hi))


def wilkinson_pole(p: HessenbergPencil) -> ProjectiveValue:
    """Eigenvalue of the leading 2 x 2 subpencil closer to the leading ratio."""
    lo = p.lo
    a2 = np.array(p.a[lo - 1 : lo + 1, lo - 1 : lo + 1])
    b2 = p.u.corner_block(lo, variant="full")
    return _closer_root(eig2x2_pencil(a2, b2), _diag_value(p, lo))


def rayleigh_shift(p: HessenbergPencil) -> ProjectiveValue:
    """The trailing diagonal ratio of the window."""
    v = _diag_value(p, p.hi)
    return v if v is not None else wilkinson_shift(p)


def rayleigh_pole(p: HessenbergPencil) -> ProjectiveValue:
    """The leading diagonal ratio of the window."""
    v = _diag_value(p, p.lo)
    return v if v is not None else wilkinson_pole(p)


def _shift_value(p: HessenbergPencil, strategy: ShiftStrategy) -> ProjectiveValue:
    if strategy is ShiftStrategy.WILKINSON:
        return wilkinson_shift(p)
    return rayleigh_shift(p)


def _pole_value(p: HessenbergPencil, strategy: ShiftStrategy) -> ProjectiveValue:
    if strategy is ShiftStrategy.WILKINSON:
        return wilkinson_pole(p)
    return rayleigh_pole(p)


# -- deflation ----------------------------------------------------------------


def deflation_scan(
    p: HessenbergPencil, criterion: DeflationCriterion
) -> list[int]:
    """Zero every negligible subdiagonal pair in the window.

    Returns the (1-based) positions that deflated.  Both the matrix
    entry and the unitary core are set to hard zeros so later exactness
    checks are plain comparisons.
    """
    fired = []
    for j in range(p.lo, p.hi):
        if p.is_deflated(j):
            continue
        if criterion.fires(p, j):
            p.a[j, j - 1] = 0.0
            p.u.deflate_core(j)
            fired.append(j)
    return fired


def extract_eigenvalue(p: HessenbergPencil, i: int) -> ProjectiveValue:
    """Converged eigenvalue at diagonal position ``i``."""
    return ProjectiveValue(complex(p.a[i - 1, i - 1]), p.u.entry(i, i))


# -- sweeps -------------------------------------------------------------------


def _rqr_sweep(
    p: HessenbergPencil,
    shift: ProjectiveValue,
    pole_fn: Callable[[HessenbergPencil], ProjectiveValue],
    rec: TransformRecorder | None,
    diag: SolveDiagnostics,
) -> int:
    """One pole-swapping sweep over the current window; returns swap count.

    The replacement pole for the bottom is estimated only after the
    swaps, from the updated leading block.  The sweep bails out early
    if an exact zero pair appears mid-window, leaving the harvest to
    the next deflation scan.
    """
    if not move_type1_top(p, shift, rec):
        diag.degenerate_skips += 1
    nswaps = 0
    try:
        for j in range(p.lo + 1, p.hi):
            move_type2_swap(p, j, rec)
            nswaps += 1
    except DeflatableSwapError:
        return nswaps
    if p.is_deflated(p.hi - 1):
        return nswaps
    pole = pole_fn(p)
    if pole.is_infinite:
        diag.infinite_bottom_poles += 1
    if not move_type1_bottom(p, pole, rec):
        diag.degenerate_skips += 1
    return nswaps


def _qr_sweep(
    p: HessenbergPencil,
    shift: ProjectiveValue,
    rec: TransformRecorder | None,
    diag: SolveDiagnostics,
) -> int:
    """One implicit single-shift QR sweep (similarity bulge chase)."""
    a = p.a
    lo, hi = p.lo, p.hi
    x1 = shift.den * complex(a[lo - 1, lo - 1]) - shift.num
    x2 = shift.den * complex(a[lo, lo - 1])
    if x1 == 0.0 and x2 == 0.0:
        diag.degenerate_skips += 1
        return 0
    g, _ = left_eliminator(x1, x2)
    _rot_rows(a, lo - 1, g.c, g.s, conj=True, start=lo - 1)
    _rot_cols(a, lo - 1, g.c, g.s, stop=min(lo + 2, hi))
    if rec is not None:
        rec.apply_q(g, lo)
    nrot = 1
    for j in range(lo + 1, hi):
        b1 = complex(a[j - 1, j - 2])
        b2 = complex(a[j, j - 2])
        if b1 == 0.0 and b2 == 0.0:
            break
        g, _ = left_eliminator(b1, b2)
        _rot_rows(a, j - 1, g.c, g.s, conj=True, start=j - 2)
        a[j, j - 2] = 0.0
        _rot_cols(a, j - 1, g.c, g.s, stop=min(j + 2, hi))
        if rec is not None:
            rec.apply_q(g, j)
        nrot += 1
    return nrot


# -- terminal 2 x 2 blocks ----------------------------------------------------


def _settle_2x2_pencil(
    p: HessenbergPencil, lo: int, rec: TransformRecorder | None
) -> tuple[ProjectiveValue, ProjectiveValue]:
    """Resolve a terminal 2 x 2 block of the pencil directly.

    Returns ``(top, bottom)`` eigenvalues; the one chordally closer to
    the trailing diagonal ratio is sent to the bottom slot.
    """
    hi = lo + 1
    a2 = np.array(p.a[lo - 1 : hi, lo - 1 : hi])
    b2 = p.u.corner_block(lo, variant="full")
    r1, r2 = eig2x2_pencil(a2, b2)
    bot = _closer_root((r1, r2), _diag_value(p, hi))
    top = r2 if bot is r1 else r1
    triangularize_2x2(p, lo, top, rec)
    return top, bot


def _settle_2x2_similarity(
    p: HessenbergPencil, lo: int, rec: TransformRecorder | None
) -> tuple[ProjectiveValue, ProjectiveValue]:
    """Resolve a terminal 2 x 2 block by one similarity rotation."""
    hi = lo + 1
    a = p.a
    a2 = np.array(a[lo - 1 : hi, lo - 1 : hi])
    r1, r2 = eig2x2_pencil(a2, np.eye(2))
    bot = _closer_root((r1, r2), _diag_value(p, hi))
    top = r2 if bot is r1 else r1
    lam = top.num / top.den
    m00 = complex(a2[0, 0]) - lam
    m01 = complex(a2[0, 1])
    m10 = complex(a2[1, 0])
    m11 = complex(a2[1, 1]) - lam
    if abs(m00) + abs(m01) >= abs(m10) + abs(m11):
        v0, v1 = m01, -m00
    else:
        v0, v1 = m11, -m10
    if v0 == 0.0 and v1 == 0.0:
        v0, v1 = 1.0, 0.0
    g = CoreTransformation.normalized(v0, v1)
    _rot_cols(a, lo - 1, g.c, g.s, stop=hi)
    _rot_rows(a, lo - 1, g.c, g.s, conj=True, start=lo - 1)
    if rec is not None:
        rec.apply_q(g, lo)
    a[hi - 1, lo - 1] = 0.0
    return top, bot


# -- outer loop ---------------------------------------------------------------


def _drive(
    p: HessenbergPencil,
    rec: TransformRecorder | None,
    sweep: Callable[[HessenbergPencil, TransformRecorder | None, SolveDiagnostics], int],
    settle: Callable[
        [HessenbergPencil, int, TransformRecorder | None],
        tuple[ProjectiveValue, ProjectiveValue],
    ],
    criterion: DeflationCriterion,
    max_sweeps_per_eig: int,
    algorithm: str,
) -> SolveReport:
    """Window management shared by both solvers.

    Works the bottom-most unreduced block until the whole pencil is
    triangular or the sweep budget for the current window is exhausted.
    """
    diag = SolveDiagnostics()
    eigenvalues: list[ProjectiveValue] = []
    positions: list[int] = []
    deflations: list[tuple[int, int]] = []
    iterations = 0
    swaps = 0
    since_last_deflation = 0
    status = "converged"
    bottom = p.n
    while bottom >= 1:
        if bottom == 1 or p.is_deflated(bottom - 1):
            eigenvalues.append(extract_eigenvalue(p, bottom))
            positions.append(bottom)
            bottom -= 1
            since_last_deflation = 0
            continue
        lo = bottom - 1
        while lo > 1 and not p.is_deflated(lo - 1):
            lo -= 1
        p.lo, p.hi = lo, bottom
        if bottom - lo == 1:
            top, bot = settle(p, lo, rec)
            eigenvalues.append(bot)
            positions.append(bottom)
            eigenvalues.append(top)
            positions.append(lo)
            bottom -= 2
            since_last_deflation = 0
            continue
        swaps += sweep(p, rec, diag)
        iterations += 1
        fired = deflation_scan(p, criterion)
        if fired:
            deflations.extend((j, iterations) for j in fired)
            since_last_deflation = 0
        else:
            since_last_deflation += 1
            if since_last_deflation >= max_sweeps_per_eig * (bottom - lo + 1):
                status = "max-iterations-exceeded"
                break
    diag.residual_count = len(p.residuals)
    diag.max_residual = max(p.residuals, default=0.0)
    return SolveReport(
        eigenvalues=eigenvalues,
        positions=positions,
        iterations=iterations,
        swaps=swaps,
        deflations=deflations,
        status=status,
        algorithm=algorithm,
        diagnostics=diag,
        recorder=rec,
        schur_a=np.array(p.a) if rec is not None else None,
        schur_u=p.u.materialize() if rec is not None else None,
    )


def rqr_solve(
    a: np.ndarray,
    *,
    shift_strategy: ShiftStrategy = ShiftStrategy.WILKINSON,
    pole_strategy: ShiftStrategy = ShiftStrategy.WILKINSON,
    deflation: DeflationCriterion | None = None,
    max_sweeps_per_eig: int = 30,
    record: bool = False,
) -> SolveReport:
    """Eigenvalues of an upper Hessenberg matrix by pole swapping.

    Parameters
    ----------
    a : (n, n) array_like
        Upper Hessenberg matrix; entries below the first subdiagonal
        must be negligible.
    shift_strategy, pole_strategy : ShiftStrategy
        How the value introduced at the top (shift) and at the bottom
        (pole) of each sweep is estimated.
    deflation : DeflationCriterion, optional
        Subdiagonal negligibility test; defaults to ``f = 1``.
    max_sweeps_per_eig : int
        Budget factor: a window of size m may run ``m * max_sweeps_per_eig``
        consecutive sweeps without any deflation before the solve stops
        with status ``"max-iterations-exceeded"``.
    record : bool
        Accumulate dense Q and Z factors and keep the final triangular
        pencil on the report (needed for backward-error checks).

    Returns
    -------
    SolveReport
    """
    p = HessenbergPencil.from_hessenberg(a)
    rec = TransformRecorder.identity(p.n) if record else None
    criterion = deflation if deflation is not None else DeflationCriterion()

    def sweep(pp, rr, dd):
        shift = _shift_value(pp, shift_strategy)
        return _rqr_sweep(
            pp, shift, lambda q: _pole_value(q, pole_strategy), rr, dd
        )

    return _drive(
        p, rec, sweep, _settle_2x2_pencil, criterion, max_sweeps_per_eig, "rqr"
    )


def qr_solve(
    a: np.ndarray,
    *,
    shift_strategy: ShiftStrategy = ShiftStrategy.WILKINSON,
    deflation: DeflationCriterion | None = None,
    max_sweeps_per_eig: int = 30,
    record: bool = False,
) -> SolveReport:
    """Eigenvalues of an upper Hessenberg matrix by single-shift QR.

    Baseline driver with the same report format as :func:`rqr_solve`.
    All transformations are similarities, so the recorder carries only
    a Q factor (``recorder.z`` stays None; consumers substitute Q for
    Z) and ``schur_u`` is the identity.
    """
    p = HessenbergPencil.from_hessenberg(a)
    rec = TransformRecorder.identity(p.n, two_sided=False) if record else None
    criterion = deflation if deflation is not None else DeflationCriterion()

    def sweep(pp, rr, dd):
        shift = _shift_value(pp, shift_strategy)
        return _qr_sweep(pp, shift, rr, dd)

    return _drive(
        p, rec, sweep, _settle_2x2_similarity, criterion, max_sweeps_per_eig, "qr"
    )
