"""Core transformations and the kernel operations that combine them.

A core transformation is an n x n unitary matrix that differs from the
identity only in a 2 x 2 block on two adjacent rows and columns.  The
active block is kept special-unitary,

    [[c, -conj(s)],
     [s,  conj(c)]]        with |c|^2 + |s|^2 = 1,

so its determinant is exactly one and the set is closed under products:
fusing two cores, or refactoring a product of three (a "turnover"),
always yields representable cores again.  Both ``c`` and ``s`` are
complex; the eliminators below fix the free phase by making the
contracted entry ``r`` real and nonnegative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "EPS",
    "CoreTransformation",
    "PositionedCore",
    "IDENTITY_CORE",
    "left_eliminator",
    "right_eliminator",
    "fuse",
    "turnover",
    "apply_left",
    "apply_right",
    "embed",
]

EPS = float(np.finfo(np.float64).eps)


@dataclass(frozen=True, slots=True)
class CoreTransformation:
    """Generator pair ``(c, s)`` of a single core transformation."""

    c: complex
    s: complex

    @staticmethod
    def normalized(c: complex, s: complex) -> "CoreTransformation":
        """Build a core from an arbitrary pair, rescaled to |c|^2+|s|^2 = 1."""
        c = complex(c)
        s = complex(s)
        m = math.hypot(abs(c), abs(s))
        if m == 0.0:
            raise ValueError("cannot normalize the zero pair into a core")
        return CoreTransformation(c / m, s / m)

    def active(self) -> np.ndarray:
        """The dense 2 x 2 active block."""
        return np.array(
            [[self.c, -self.s.conjugate()], [self.s, self.c.conjugate()]],
            dtype=np.complex128,
        )

    def adjoint(self) -> "CoreTransformation":
        """Conjugate transpose, which is also the inverse core."""
        return CoreTransformation(self.c.conjugate(), -self.s)

    def unit_defect(self) -> float:
        """Absolute deviation of |c|^2 + |s|^2 from one."""
        return abs(abs(self.c) ** 2 + abs(self.s) ** 2 - 1.0)


IDENTITY_CORE = CoreTransformation(1.0 + 0.0j, 0.0j)


@dataclass(frozen=True, slots=True)
class PositionedCore:
    """A core transformation bound to a 1-based position.

    A core at position ``p`` acts on rows (columns) ``p`` and ``p + 1``
    in the 1-based indexing used throughout; on a 0-based ndarray that
    is rows ``p - 1`` and ``p``.
    """

    core: CoreTransformation
    position: int


def left_eliminator(x1: complex, x2: complex) -> tuple[CoreTransformation, float]:
    """Core ``Q`` with ``Q^H (x1, x2)^T = (r, 0)^T`` and ``r >= 0`` real.

    Returns ``(Q, r)`` where ``r`` is the Euclidean length of the input.
    Raises ``ValueError`` on the zero vector ("degenerate eliminator");
    callers that want an identity fallback must supply it themselves.
    """
    x1 = complex(x1)
    x2 = complex(x2)
    r = math.hypot(abs(x1), abs(x2))
    if r == 0.0:
        raise ValueError("degenerate eliminator: zero input vector")
    return CoreTransformation(x1 / r, x2 / r), r


def right_eliminator(w1: complex, w2: complex) -> tuple[CoreTransformation, float]:
    """Core ``Z`` with ``(w1, w2) Z = (0, r)`` and ``r >= 0`` real.

    Returns ``(Z, r)``.  Raises ``ValueError`` on the zero vector.
    """
    w1 = complex(w1)
    w2 = complex(w2)
    r = math.hypot(abs(w1), abs(w2))
    if r == 0.0:
        raise ValueError("degenerate eliminator: zero input vector")
    return CoreTransformation(w2 / r, -w1 / r), r


def fuse(g: CoreTransformation, h: CoreTransformation) -> CoreTransformation:
    """Product ``g @ h`` of two cores at the same position, renormalized."""
    c = g.c * h.c - g.s.conjugate() * h.s
    s = g.s * h.c + g.c.conjugate() * h.s
    m = math.hypot(abs(c), abs(s))
    return CoreTransformation(c / m, s / m)


def _elim_left_or_identity(x1: complex, x2: float | complex):
    if x1 == 0.0 and x2 == 0.0:
        return 1.0 + 0.0j, 0.0j, 0.0
    r = math.hypot(abs(x1), abs(x2))
    return x1 / r, x2 / r, r


def _elim_right_or_identity(w1: complex, w2: complex):
    if w1 == 0.0 and w2 == 0.0:
        return 1.0 + 0.0j, 0.0j, 0.0
    r = math.hypot(abs(w1), abs(w2))
    return w2 / r, -w1 / r, r


def _normalized_pair(c: complex, s: complex) -> tuple[complex, complex]:
    m = math.hypot(abs(c), abs(s))
    return c / m, s / m


def _turnover_v(c1, s1, c2, s2, c3, s3):
    """Refactor G1(p) G2(p+1) G3(p) as H1(p+1) H2(p) H3(p+1).

    Works on the implicit 3 x 3 product M: eliminate its (3,1) and then
    (2,1) entry with two left eliminators; the remainder is the third
    core.  Returns three (c, s) pairs in output order.
    """
    # first and second columns of M = G1 G2 G3
    m00 = c1 * c3 - s1.conjugate() * c2 * s3
    m10 = s1 * c3 + c1.conjugate() * c2 * s3
    m20 = s2 * s3
    nc3 = c3.conjugate()
    ns3 = s3.conjugate()
    m01 = -c1 * ns3 - s1.conjugate() * c2 * nc3
    m11 = -s1 * ns3 + c1.conjugate() * c2 * nc3
    m21 = s2 * nc3

    ch1, sh1, r = _elim_left_or_identity(m10, m20)
    ch2, sh2, _ = _elim_left_or_identity(m00, r)

    # remainder after H2^H H1^H M, read off rows 2..3 of column 2
    t11 = ch1.conjugate() * m11 + sh1.conjugate() * m21
    t21 = -sh1 * m11 + ch1 * m21
    c_new = -sh2 * m01 + ch2 * t11
    c_new, s_new = _normalized_pair(c_new, t21)
    return (ch1, sh1), (ch2, sh2), (c_new, s_new)


def _turnover_a(c1, s1, c2, s2, c3, s3):
    """Refactor G1(p+1) G2(p) G3(p+1) as H1(p) H2(p+1) H3(p).

    Mirror of :func:`_turnover_v`: eliminate the (3,1) and then (3,2)
    entry of the implicit product with two right eliminators and read
    the remaining core off the upper-left block.
    """
    # last row and the top 2 x 2 block of M = G1 G2 G3
    nc2 = c2.conjugate()
    m20 = s1 * s2
    m21 = s1 * nc2 * c3 + c1.conjugate() * s3
    m22 = -s1 * nc2 * s3.conjugate() + c1.conjugate() * c3.conjugate()
    m00 = c2
    m10 = c1 * s2
    m01 = -s2.conjugate() * c3
    m11 = c1 * nc2 * c3 - s1.conjugate() * s3

    cz1, sz1, r = _elim_right_or_identity(m20, m21)
    cz2, sz2, _ = _elim_right_or_identity(r, m22)

    c_new = m00 * cz1 + m01 * sz1
    s_new = m10 * cz1 + m11 * sz1
    c_new, s_new = _normalized_pair(c_new, s_new)
    return (c_new, s_new), (cz2.conjugate(), -sz2), (cz1.conjugate(), -sz1)


def turnover(
    g1: PositionedCore, g2: PositionedCore, g3: PositionedCore
) -> tuple[PositionedCore, PositionedCore, PositionedCore]:
    """Swap a (p, p+1, p) core pattern to (p+1, p, p+1), or back.

    The three inputs multiply, in the order given, to the same 3 x 3
    unitary as the three outputs; only the position pattern flips.  The
    direction is inferred from the input positions, and anything other
    than the two admissible patterns is rejected.
    """
    p1, p2, p3 = g1.position, g2.position, g3.position
    if p1 == p3 == p2 - 1:
        (a, b), (c, d), (e, f) = _turnover_v(
            g1.core.c, g1.core.s, g2.core.c, g2.core.s, g3.core.c, g3.core.s
        )
    elif p1 == p3 == p2 + 1:
        (c, d), (a, b), (e, f) = _turnover_a(
            g1.core.c, g1.core.s, g2.core.c, g2.core.s, g3.core.c, g3.core.s
        )
        # output pattern is (p2, p1, p2): first and third at the lower position
        return (
            PositionedCore(CoreTransformation(c, d), p2),
            PositionedCore(CoreTransformation(a, b), p1),
            PositionedCore(CoreTransformation(e, f), p2),
        )
    else:
        raise ValueError(
            f"invalid turnover pattern {(p1, p2, p3)}: "
            "expected (p, p+1, p) or (p+1, p, p+1)"
        )
    return (
        PositionedCore(CoreTransformation(a, b), p2),
        PositionedCore(CoreTransformation(c, d), p1),
        PositionedCore(CoreTransformation(e, f), p2),
    )


def _rot_rows(m, p, c, s, conj, start=0, stop=None):
    """Left-multiply rows ``p`` and ``p+1`` (0-based) of ``m`` in place."""
    r1 = m[p, start:stop]
    r2 = m[p + 1, start:stop]
    if conj:
        t = c.conjugate() * r1 + s.conjugate() * r2
        m[p + 1, start:stop] = c * r2 - s * r1
    else:
        t = c * r1 - s.conjugate() * r2
        m[p + 1, start:stop] = s * r1 + c.conjugate() * r2
    m[p, start:stop] = t


def _rot_cols(m, p, c, s, start=0, stop=None):
    """Right-multiply columns ``p`` and ``p+1`` (0-based) of ``m`` in place."""
    c1 = m[start:stop, p]
    c2 = m[start:stop, p + 1]
    t = c * c1 + s * c2
    m[start:stop, p + 1] = -s.conjugate() * c1 + c.conjugate() * c2
    m[start:stop, p] = t


def apply_left(
    g: PositionedCore, m: np.ndarray, conjugate_transpose: bool = False
) -> None:
    """In-place update ``m <- G m`` (or ``G^H m``) for a positioned core."""
    p = g.position
    if not 1 <= p <= m.shape[0] - 1:
        raise IndexError(f"core position {p} out of range for {m.shape[0]} rows")
    _rot_rows(m, p - 1, complex(g.core.c), complex(g.core.s), conjugate_transpose)


def apply_right(g: PositionedCore, m: np.ndarray) -> None:
    """In-place update ``m <- m G`` for a positioned core."""
    p = g.position
    if not 1 <= p <= m.shape[1] - 1:
        raise IndexError(f"core position {p} out of range for {m.shape[1]} columns")
    _rot_cols(m, p - 1, complex(g.core.c), complex(g.core.s))


def embed(core: CoreTransformation, position: int, n: int) -> np.ndarray:
    """Dense n x n matrix of a core at a 1-based position."""
    if not 1 <= position <= n - 1:
        raise IndexError(f"core position {position} out of range for size {n}")
    m = np.eye(n, dtype=np.complex128)
    m[position - 1 : position + 1, position - 1 : position + 1] = core.active()
    return m
