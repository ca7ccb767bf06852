"""Hessenberg pencils ``A - lambda U`` with a factored unitary right side.

The pencil couples a dense complex upper Hessenberg ``A`` with a
:class:`~poleswap.unitary.FactoredUnitary` ``U``.  Ratios of the two
subdiagonals are the poles,

    sigma_j = a[j+1, j] / s_j,

kept as projective pairs so an infinite pole (``s_j = 0``) is a
first-class value rather than an overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rotations import EPS
from .unitary import FactoredUnitary

__all__ = [
    "ProjectiveValue",
    "chordal_distance",
    "HessenbergPencil",
    "as_hessenberg",
]


@dataclass(frozen=True, slots=True)
class ProjectiveValue:
    """A ratio ``num / den`` stored as a pair, admitting infinity.

    Pairs are rescaled on construction so ``max(|num|, |den|) == 1``,
    which keeps cross-multiplied comparisons overflow-free.  The pair
    ``(0, 0)`` is rejected.
    """

    num: complex
    den: complex

    def __post_init__(self):
        num = complex(self.num)
        den = complex(self.den)
        m = max(abs(num), abs(den))
        if m == 0.0 or not math.isfinite(m):
            raise ValueError(f"projective value needs one finite nonzero component, got ({num}, {den})")
        object.__setattr__(self, "num", num / m)
        object.__setattr__(self, "den", den / m)

    @property
    def is_infinite(self) -> bool:
        return self.den == 0.0

    def as_complex(self) -> complex:
        """The plain ratio; infinite values come back as ``inf + 0j``."""
        if self.den == 0.0:
            return complex(math.inf, 0.0)
        return self.num / self.den


def chordal_distance(x: ProjectiveValue, y: ProjectiveValue) -> float:
    """Distance on the Riemann sphere, finite for infinite values too."""
    num = abs(x.num * y.den - y.num * x.den)
    return num / (
        math.hypot(abs(x.num), abs(x.den)) * math.hypot(abs(y.num), abs(y.den))
    )


def as_hessenberg(a) -> np.ndarray:
    """Copy ``a`` to complex storage and hard-zero below the subdiagonal.

    Entries more than one place below the diagonal must already be
    negligible (at most ``eps * ||a||_F``); anything larger raises.
    """
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    n = m.shape[0]
    if n > 2:
        rows, cols = np.tril_indices(n, -2)
        spill = np.abs(m[rows, cols])
        if spill.size and spill.max() > EPS * np.linalg.norm(m):
            i = int(spill.argmax())
            raise ValueError(
                f"matrix is not upper Hessenberg: entry ({rows[i]}, {cols[i]}) "
                f"has magnitude {spill.max():.3e}"
            )
        m[rows, cols] = 0.0
    return m


class HessenbergPencil:
    """State of one pencil ``A - lambda U`` during pole-swapping iteration.

    ``a`` is the dense Hessenberg matrix (0-based ndarray), ``u`` the
    factored unitary, and ``[lo, hi]`` the active window in the 1-based
    indexing of the pole positions.  ``residuals`` collects the bulge
    magnitudes discarded by :meth:`zero_residual`.
    """

    __slots__ = ("n", "a", "u", "lo", "hi", "residuals")

    def __init__(self, a: np.ndarray, u: FactoredUnitary, lo: int, hi: int):
        self.a = a
        self.u = u
        self.n = a.shape[0]
        self.lo = lo
        self.hi = hi
        self.residuals: list[float] = []

    @classmethod
    def from_hessenberg(cls, a) -> "HessenbergPencil":
        """Start a pencil from a Hessenberg matrix, with ``U = I``."""
        m = as_hessenberg(a)
        n = m.shape[0]
        return cls(m, FactoredUnitary.identity(n), 1, n)

    def pole(self, j: int) -> ProjectiveValue:
        """Pole ``sigma_j = a[j+1, j] / s_j`` at 1-based position ``j``."""
        if not 1 <= j <= self.n - 1:
            raise IndexError(f"pole position {j} out of range for size {self.n}")
        return ProjectiveValue(self.a[j, j - 1], self.u.core(j).s)

    def poles(self) -> list[ProjectiveValue]:
        return [self.pole(j) for j in range(1, self.n)]

    def swap_subpencil(self, j: int) -> tuple[np.ndarray, np.ndarray]:
        """The 2 x 2 upper triangular subpencil a swap at ``j`` acts on.

        Rows ``(j, j+1)`` against columns ``(j-1, j)`` of both sides;
        its eigenvalue pair is exactly (pole j-1, pole j).
        """
        if not self.lo + 1 <= j <= self.hi - 1:
            raise IndexError(
                f"swap position {j} outside window interior ({self.lo}, {self.hi})"
            )
        a2 = np.array(
            [
                [self.a[j - 1, j - 2], self.a[j - 1, j - 1]],
                [0.0j, self.a[j, j - 1]],
            ],
            dtype=np.complex128,
        )
        return a2, self.u.corner_block(j, variant="swap")

    def zero_residual(self, i: int, j: int) -> float:
        """Log and hard-zero the bulge entry at 1-based ``(i, j) = (j+2, j)``."""
        if i != j + 2:
            raise ValueError(f"entry ({i}, {j}) is not a bulge slot")
        mag = float(abs(self.a[i - 1, j - 1]))
        self.residuals.append(mag)
        self.a[i - 1, j - 1] = 0.0
        return mag

    def is_deflated(self, j: int) -> bool:
        """True when both subdiagonals vanish exactly at position ``j``."""
        return self.a[j, j - 1] == 0.0 and self.u.core(j).s == 0.0
