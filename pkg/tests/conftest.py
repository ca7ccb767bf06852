"""Shared helpers for the test suite."""

import numpy as np

from poleswap import (
    CoreTransformation,
    FactoredUnitary,
    HessenbergPencil,
    ProjectiveValue,
    chordal_distance,
)


def random_core(rng: np.random.Generator) -> CoreTransformation:
    """A uniformly random core transformation."""
    c = complex(rng.standard_normal() + 1j * rng.standard_normal())
    s = complex(rng.standard_normal() + 1j * rng.standard_normal())
    if c == 0.0 and s == 0.0:  # pragma: no cover - measure-zero event
        return CoreTransformation(1.0 + 0.0j, 0.0j)
    return CoreTransformation.normalized(c, s)


def random_complex(rng: np.random.Generator, *shape: int) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_hessenberg(rng: np.random.Generator, n: int) -> np.ndarray:
    """Dense random complex upper Hessenberg matrix."""
    a = random_complex(rng, n, n)
    return np.triu(a, -1)


def random_pencil(
    rng: np.random.Generator,
    n: int,
    min_pole_separation: float = 0.0,
) -> HessenbergPencil:
    """A random pencil with nonzero subdiagonals on both sides.

    With ``min_pole_separation > 0`` the pencil is redrawn until all
    pole pairs are at least that far apart in the chordal metric.
    """
    while True:
        a = random_hessenberg(rng, n)
        u = FactoredUnitary(n, [random_core(rng) for _ in range(n - 1)])
        p = HessenbergPencil(a, u, 1, n)
        if min_pole_separation <= 0.0:
            return p
        poles = p.poles()
        ok = all(
            chordal_distance(poles[i], poles[j]) >= min_pole_separation
            for i in range(len(poles))
            for j in range(i + 1, len(poles))
        )
        if ok:
            return p


def pencil_eigenvalues(p: HessenbergPencil) -> np.ndarray:
    """Dense oracle: eigenvalues of ``A - lambda U`` via ``U^H A``."""
    return np.linalg.eigvals(p.u.materialize().conj().T @ p.a)


def matched_max_distance(x: np.ndarray, y: np.ndarray) -> float:
    """Largest pairwise distance under the optimal matching of two sets."""
    from scipy.optimize import linear_sum_assignment

    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    assert x.shape == y.shape
    cost = np.abs(x[:, None] - y[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def matched_max_chordal(xs, ys) -> float:
    """Optimal-matching distance of two eigenvalue sets on the sphere."""
    from scipy.optimize import linear_sum_assignment

    def to_pv(v):
        if isinstance(v, ProjectiveValue):
            return v
        v = complex(v)
        if not np.isfinite(v.real) or not np.isfinite(v.imag):
            return ProjectiveValue(1.0, 0.0)
        return ProjectiveValue(v, 1.0)

    xs = [to_pv(v) for v in xs]
    ys = [to_pv(v) for v in ys]
    assert len(xs) == len(ys)
    cost = np.array([[chordal_distance(a, b) for b in ys] for a in xs])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def cyclic_permutation(n: int) -> np.ndarray:
    """Hessenberg matrix that both drivers provably stall on."""
    a = np.zeros((n, n), dtype=complex)
    for i in range(1, n):
        a[i, i - 1] = 1.0
    a[0, n - 1] = 1.0
    return a
