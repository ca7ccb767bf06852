"""The two equivalence moves that drive pole-swapping iteration.

Type I moves change the pole at a window boundary: the top variant
introduces a chosen value ``rho`` as the leading pole, the bottom
variant replaces the trailing pole by ``tau``.  The type II move swaps
two adjacent poles in the window interior.  Every move applies one left
core ``Q^H`` and/or one right core ``Z`` to the pencil and keeps the
factored unitary in product form; an optional
:class:`TransformRecorder` accumulates the same cores into dense ``Q``
and ``Z`` factors so that ``Q^H A_0 Z`` always reproduces the current
matrix.
"""

from __future__ import annotations

import numpy as np

from .pencil import HessenbergPencil, ProjectiveValue
from .rotations import (
    CoreTransformation,
    _rot_cols,
    _rot_rows,
    left_eliminator,
    right_eliminator,
)
from .unitary import FactoredUnitary

__all__ = [
    "DeflatableSwapError",
    "TransformRecorder",
    "move_type1_top",
    "move_type1_bottom",
    "move_type2_swap",
    "triangularize_2x2",
]


class DeflatableSwapError(ValueError):
    """A swap was requested at a position that is exactly decoupled.

    A zero subdiagonal pair on either side of the swap position means
    the window has split; the caller should deflate instead.
    """


class TransformRecorder:
    """Dense accumulators for the left and right transformations.

    ``q`` collects every left core (as ``Q <- Q G``, so ``Q^H`` is the
    product of the applied ``G^H`` factors) and ``z`` every right core.
    A similarity-style solver may run with ``z=None`` and reuse ``q``
    for both sides.
    """

    __slots__ = ("q", "z")

    def __init__(self, q: np.ndarray | None, z: np.ndarray | None):
        self.q = q
        self.z = z

    @classmethod
    def identity(cls, n: int, two_sided: bool = True) -> "TransformRecorder":
        q = np.eye(n, dtype=np.complex128)
        z = np.eye(n, dtype=np.complex128) if two_sided else None
        return cls(q, z)

    def apply_q(self, core, position: int) -> None:
        if self.q is not None:
            _rot_cols(self.q, position - 1, complex(core.c), complex(core.s))

    def apply_z(self, core, position: int) -> None:
        if self.z is not None:
            _rot_cols(self.z, position - 1, complex(core.c), complex(core.s))


def _absorb_left(u: FactoredUnitary, q_conj, position: int) -> None:
    if position == 1:
        u.absorb_left_at(q_conj, 1)
    else:
        u.absorb_left_past_deflated(q_conj, position)


def _absorb_right(u: FactoredUnitary, z, position: int) -> None:
    if position == u.n - 1:
        u.absorb_right_at(z, position)
    else:
        u.absorb_right_past_deflated(z, position)


def move_type1_top(
    p: HessenbergPencil, rho: ProjectiveValue, rec: TransformRecorder | None = None
) -> bool:
    """Introduce ``rho`` as the pole at the top of the active window.

    Builds ``x = beta * A[lo:lo+2, lo] - alpha * U[lo:lo+2, lo]`` and
    eliminates it from the left; the eliminator is absorbed into the
    factored unitary.  Returns False (and does nothing) when ``x = 0``
    exactly, which means ``rho`` already matches the leading 1 x 1
    block; the next deflation scan harvests that eigenvalue.
    """
    lo = p.lo
    if p.hi - lo < 1:
        raise ValueError("type I move needs a window of size at least 2")
    alpha, beta = rho.num, rho.den
    x1 = beta * complex(p.a[lo - 1, lo - 1]) - alpha * p.u.entry(lo, lo)
    x2 = beta * complex(p.a[lo, lo - 1]) - alpha * complex(p.u.core(lo).s)
    if x1 == 0.0 and x2 == 0.0:
        return False
    q, _ = left_eliminator(x1, x2)
    _rot_rows(p.a, lo - 1, q.c, q.s, conj=True, start=lo - 1)
    if rec is not None:
        rec.apply_q(q, lo)
    _absorb_left(p.u, q.adjoint(), lo)
    return True


def move_type1_bottom(
    p: HessenbergPencil, tau: ProjectiveValue, rec: TransformRecorder | None = None
) -> bool:
    """Replace the pole at the bottom of the active window by ``tau``.

    Mirror of :func:`move_type1_top`, working on the trailing row pair
    ``w = beta * A[hi, hi-1:hi+1] - alpha * U[hi, hi-1:hi+1]`` with a
    right eliminator.  Returns False on the degenerate ``w = 0``.
    """
    hi = p.hi
    if hi - p.lo < 1:
        raise ValueError("type I move needs a window of size at least 2")
    alpha, beta = tau.num, tau.den
    w1 = beta * complex(p.a[hi - 1, hi - 2]) - alpha * complex(p.u.core(hi - 1).s)
    w2 = beta * complex(p.a[hi - 1, hi - 1]) - alpha * p.u.entry(hi, hi)
    if w1 == 0.0 and w2 == 0.0:
        return False
    z, _ = right_eliminator(w1, w2)
    _rot_cols(p.a, hi - 2, z.c, z.s, stop=hi)
    if rec is not None:
        rec.apply_z(z, hi - 1)
    _absorb_right(p.u, z, hi - 1)
    return True


def move_type2_swap(
    p: HessenbergPencil, j: int, rec: TransformRecorder | None = None
) -> None:
    """Exchange the adjacent poles ``sigma_{j-1}`` and ``sigma_j``.

    The branch is chosen without divisions: the pole of larger modulus,
    decided by comparing ``|a[j, j-1]| * |s_j|`` against
    ``|a[j+1, j]| * |s_{j-1}|``, determines whether the right factor
    ``Z`` or the left factor ``Q`` is built first from the appropriate
    row or column of the shifted 2 x 2 subpencil.  Ties take the
    Z-first branch.  A position whose subdiagonal pair is already zero
    on either side must be deflated by the caller instead.
    """
    if not p.lo + 1 <= j <= p.hi - 1:
        raise IndexError(f"swap position {j} outside window interior ({p.lo}, {p.hi})")
    a = p.a
    a_lm = complex(a[j - 1, j - 2])  # a[j, j-1]
    a_mm = complex(a[j - 1, j - 1])  # a[j, j]
    a_bm = complex(a[j, j - 1])      # a[j+1, j]
    s_up = complex(p.u.core(j - 1).s)
    s_dn = complex(p.u.core(j).s)
    if (a_bm == 0.0 and s_dn == 0.0) or (a_lm == 0.0 and s_up == 0.0):
        raise DeflatableSwapError(f"swap on deflatable position {j}")
    u_mm = p.u.entry(j, j)

    if abs(a_lm) * abs(s_dn) >= abs(a_bm) * abs(s_up):
        # Z first: eliminate the top row of s_j * A2 - a[j+1, j] * B2
        h1 = s_dn * a_lm - a_bm * s_up
        h2 = s_dn * a_mm - a_bm * u_mm
        z, _ = right_eliminator(h1, h2)
        _rot_cols(a, j - 2, z.c, z.s, stop=j + 1)
        if rec is not None:
            rec.apply_z(z, j - 1)
        q = p.u.pass_right_to_left(z, j - 1)
        qc = q.core
        _rot_rows(a, j - 1, qc.c, qc.s, conj=True, start=j - 2)
        if rec is not None:
            rec.apply_q(qc, j)
    else:
        # Q first: eliminate the right column of s_{j-1} * A2 - a[j, j-1] * B2
        h1 = s_up * a_mm - a_lm * u_mm
        h2 = s_up * a_bm - a_lm * s_dn
        q, _ = left_eliminator(h1, h2)
        _rot_rows(a, j - 1, q.c, q.s, conj=True, start=j - 2)
        if rec is not None:
            rec.apply_q(q, j)
        z_conj = p.u.pass_left_to_right(q.adjoint(), j)
        z = z_conj.core.adjoint()
        _rot_cols(a, j - 2, z.c, z.s, stop=j + 1)
        if rec is not None:
            rec.apply_z(z, j - 1)
    p.zero_residual(j + 1, j - 1)


def triangularize_2x2(
    p: HessenbergPencil,
    lo: int,
    top: ProjectiveValue,
    rec: TransformRecorder | None = None,
) -> None:
    """Decouple a terminal 2 x 2 block whose eigenvalues are known.

    ``top`` must be an eigenvalue of the block pencil at rows/columns
    ``(lo, lo+1)``; its deflating direction is rotated into the first
    coordinate so one left and one right core triangularize both sides
    simultaneously.  The block's subdiagonal pair is then hard-zeroed
    and its core deflated, leaving ``top`` at diagonal slot ``lo``.
    """
    hi = lo + 1
    a2 = p.a[lo - 1 : hi, lo - 1 : hi]
    b2 = p.u.corner_block(lo, variant="full")
    m = top.den * a2 - top.num * b2
    r0 = abs(m[0, 0]) + abs(m[0, 1])
    r1 = abs(m[1, 0]) + abs(m[1, 1])
    if r0 == 0.0 and r1 == 0.0:
        v = np.array([1.0 + 0.0j, 0.0j])
    elif r0 >= r1:
        v = np.array([m[0, 1], -m[0, 0]])
    else:
        v = np.array([m[1, 1], -m[1, 0]])
    v = v / np.linalg.norm(v)
    ya = a2 @ v
    yb = b2 @ v
    if np.linalg.norm(ya) >= np.linalg.norm(yb):
        q, _ = left_eliminator(complex(ya[0]), complex(ya[1]))
    else:
        q, _ = left_eliminator(complex(yb[0]), complex(yb[1]))
    z = CoreTransformation.normalized(complex(v[0]), complex(v[1]))

    _rot_cols(p.a, lo - 1, z.c, z.s, stop=hi)
    if rec is not None:
        rec.apply_z(z, lo)
    _absorb_right(p.u, z, lo)
    _rot_rows(p.a, lo - 1, q.c, q.s, conj=True, start=lo - 1)
    if rec is not None:
        rec.apply_q(q, lo)
    _absorb_left(p.u, q.adjoint(), lo)

    p.a[hi - 1, lo - 1] = 0.0
    p.u.deflate_core(lo)
