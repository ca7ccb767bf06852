"""Unitary upper Hessenberg matrices kept as a product of core transformations.

``U = U_1 U_2 ... U_{n-1}`` where ``U_j`` is a core transformation at
position ``j``.  The factored form is never expanded during iteration;
entries are read off the generators instead:

    u[j+1, j] = s_j
    u[j, j]   = conj(c_{j-1}) c_j          (with c_0 = c_n = 1)
    u[i, j]   = conj(c_{i-1}) * prod_{k=i}^{j-1} (-conj(s_k)) * c_j   (i <= j)

All positions and entry indices here are 1-based, matching the
subscripts of the generator list; the dense arrays handed back by
:meth:`materialize` are ordinary 0-based ndarrays.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .rotations import (
    CoreTransformation,
    IDENTITY_CORE,
    PositionedCore,
    _rot_rows,
    _turnover_a,
    _turnover_v,
    fuse,
)

__all__ = ["FactoredUnitary"]


class FactoredUnitary:
    """Product of ``n - 1`` core transformations, one per position."""

    __slots__ = ("n", "_cores")

    def __init__(self, n: int, cores: Iterable[CoreTransformation] | None = None):
        if n < 1:
            raise ValueError("dimension must be at least 1")
        self.n = n
        if cores is None:
            self._cores = [IDENTITY_CORE] * (n - 1)
        else:
            self._cores = list(cores)
            if len(self._cores) != n - 1:
                raise ValueError(
                    f"expected {n - 1} cores for dimension {n}, got {len(self._cores)}"
                )

    @classmethod
    def identity(cls, n: int) -> "FactoredUnitary":
        return cls(n)

    # -- generator access -------------------------------------------------

    def core(self, j: int) -> CoreTransformation:
        """Core at 1-based position ``j``."""
        if not 1 <= j <= self.n - 1:
            raise IndexError(f"core position {j} out of range for size {self.n}")
        return self._cores[j - 1]

    def set_core(self, j: int, core: CoreTransformation) -> None:
        if not 1 <= j <= self.n - 1:
            raise IndexError(f"core position {j} out of range for size {self.n}")
        self._cores[j - 1] = core

    def cores(self) -> list[CoreTransformation]:
        """The generator list (index ``k`` holds position ``k + 1``)."""
        return list(self._cores)

    # -- entry readout -----------------------------------------------------

    def _c(self, j: int) -> complex:
        """Boundary-padded cosine: c_0 = c_n = 1."""
        if j == 0 or j == self.n:
            return 1.0 + 0.0j
        return complex(self._cores[j - 1].c)

    def entry(self, i: int, j: int) -> complex:
        """Entry ``u[i, j]`` (1-based) straight from the generators."""
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexError(f"entry ({i}, {j}) out of range for size {self.n}")
        if i > j + 1:
            return 0.0j
        if i == j + 1:
            return complex(self._cores[j - 1].s)
        v = self._c(i - 1).conjugate()
        for k in range(i, j):
            v *= -self._cores[k - 1].s.conjugate()
        return v * self._c(j)

    def corner_block(self, j: int, variant: str = "full") -> np.ndarray:
        """A 2 x 2 read-only window on the matrix, at 1-based index ``j``.

        ``variant="full"`` returns rows and columns ``(j, j+1)``, the
        block that feeds shift computations.  ``variant="swap"`` returns
        rows ``(j, j+1)`` against columns ``(j-1, j)``, the upper
        triangular block ``[[s_{j-1}, conj(c_{j-1}) c_j], [0, s_j]]``
        that a pole swap works on.
        """
        if variant == "full":
            if not 1 <= j <= self.n - 1:
                raise IndexError(f"full corner block at {j} needs 1 <= j <= n-1")
            return np.array(
                [
                    [self.entry(j, j), self.entry(j, j + 1)],
                    [self.entry(j + 1, j), self.entry(j + 1, j + 1)],
                ],
                dtype=np.complex128,
            )
        if variant == "swap":
            if not 2 <= j <= self.n - 1:
                raise IndexError(f"swap corner block at {j} needs 2 <= j <= n-1")
            return np.array(
                [
                    [self.entry(j, j - 1), self.entry(j, j)],
                    [0.0j, self.entry(j + 1, j)],
                ],
                dtype=np.complex128,
            )
        raise ValueError(f"unknown corner block variant {variant!r}")

    # -- absorbing neighbours ----------------------------------------------

    def absorb_left_at(self, q: CoreTransformation, position: int) -> None:
        """Fuse ``q`` into the leading core: ``U <- q U``.

        Only the top core can absorb a left factor without a turnover,
        so ``position`` must be 1.
        """
        if position != 1:
            raise ValueError("left absorption without a turnover requires position 1")
        self._cores[0] = fuse(q, self._cores[0])

    def absorb_right_at(self, z: CoreTransformation, position: int) -> None:
        """Fuse ``z`` into the trailing core: ``U <- U z``; position must be n-1."""
        if position != self.n - 1:
            raise ValueError(
                "right absorption without a turnover requires position n-1"
            )
        self._cores[-1] = fuse(self._cores[-1], z)

    def absorb_left_past_deflated(self, q: CoreTransformation, position: int) -> None:
        """``U <- q U`` for ``position > 1`` when the core above is diagonal.

        A deflated core at ``position - 1`` is diag(c, conj(c)); ``q``
        commutes through it at the cost of a phase on its ``s`` entry,
        after which it fuses with the core at ``position``.
        """
        if not 2 <= position <= self.n - 1:
            raise IndexError(f"position {position} out of range")
        above = self._cores[position - 2]
        assert above.s == 0, "core above the absorption point must be deflated"
        passed = CoreTransformation(q.c, q.s * above.c.conjugate())
        self._cores[position - 1] = fuse(passed, self._cores[position - 1])

    def absorb_right_past_deflated(self, z: CoreTransformation, position: int) -> None:
        """``U <- U z`` for ``position < n-1`` when the core below is diagonal."""
        if not 1 <= position <= self.n - 2:
            raise IndexError(f"position {position} out of range")
        below = self._cores[position]
        assert below.s == 0, "core below the absorption point must be deflated"
        passed = CoreTransformation(z.c, z.s * below.c)
        self._cores[position - 1] = fuse(self._cores[position - 1], passed)

    # -- passing cores through the product ----------------------------------

    def pass_right_to_left(self, z: CoreTransformation, k: int) -> PositionedCore:
        """Move a right factor at position ``k`` to the left side.

        Replaces cores ``k`` and ``k + 1`` through a turnover and returns
        the emitted core ``q`` at position ``k + 1`` with
        ``old U @ Z = Q @ new U``.
        """
        if not 1 <= k <= self.n - 2:
            raise IndexError(f"pass-through position {k} out of range")
        g1 = self._cores[k - 1]
        g2 = self._cores[k]
        (qc, qs), (ac, as_), (bc, bs) = _turnover_v(g1.c, g1.s, g2.c, g2.s, z.c, z.s)
        self._cores[k - 1] = CoreTransformation(ac, as_)
        self._cores[k] = CoreTransformation(bc, bs)
        return PositionedCore(CoreTransformation(qc, qs), k + 1)

    def pass_left_to_right(self, q_conj: CoreTransformation, position: int) -> PositionedCore:
        """Move a left factor at ``position = k + 1`` to the right side.

        Replaces cores ``k`` and ``k + 1`` and returns the emitted core
        ``z_conj`` at position ``k`` with
        ``q_conj @ old U = new U @ z_conj``.
        """
        k = position - 1
        if not 1 <= k <= self.n - 2:
            raise IndexError(f"pass-through position {position} out of range")
        g1 = self._cores[k - 1]
        g2 = self._cores[k]
        (ac, as_), (bc, bs), (zc, zs) = _turnover_a(
            q_conj.c, q_conj.s, g1.c, g1.s, g2.c, g2.s
        )
        self._cores[k - 1] = CoreTransformation(ac, as_)
        self._cores[k] = CoreTransformation(bc, bs)
        return PositionedCore(CoreTransformation(zc, zs), k)

    # -- deflation and expansion --------------------------------------------

    def deflate_core(self, j: int) -> None:
        """Replace core ``j`` by the diagonal phase core (c/|c|, 0).

        The caller is responsible for only doing this once ``|s_j|`` is
        negligible by its own criterion; the rotation part is dropped
        while the accumulated phase is retained.
        """
        old = self.core(j)
        m = abs(old.c)
        assert m > 0.0, "cannot deflate a core with |c| = 0"
        self._cores[j - 1] = CoreTransformation(old.c / m, 0.0j)

    def materialize(self) -> np.ndarray:
        """Dense n x n array of the product, built in O(n^2) row updates."""
        m = np.eye(self.n, dtype=np.complex128)
        for j in range(self.n - 1, 0, -1):
            core = self._cores[j - 1]
            _rot_rows(m, j - 1, complex(core.c), complex(core.s), conj=False)
        return m
