"""Accuracy and timing harness.

``backward_error`` turns a recorded solve into the two relative
residuals that measure how far ``(Q, Z, S, T)`` is from an exact
triangularization of the input pencil.  ``run_bench`` runs seeded
ensembles of solves, collects one detail row per trial plus one mean
row per (size, algorithm) group, and optionally logs median summaries.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass
from typing import IO, Callable, Sequence

import numpy as np

from .matio import BenchRow, gen_iplusj, gen_random_hessenberg, trial_seed
from .solver import SolveReport, qr_solve, rqr_solve

__all__ = [
    "BackwardErrorReport",
    "backward_error",
    "unitarity_defect",
    "run_bench",
]


@dataclass(frozen=True)
class BackwardErrorReport:
    """Relative backward errors of a recorded solve.

    ``bwe_a`` is ``||Q S Z^H - A0||_F / ||A0||_F`` and ``bwe_u`` is
    ``||Q T Z^H - U0||_F / sqrt(n)`` where ``U0`` is the identity the
    iteration started from.
    """

    bwe_a: float
    bwe_u: float

    @property
    def bwe(self) -> float:
        return max(self.bwe_a, self.bwe_u)


def unitarity_defect(m: np.ndarray) -> float:
    """Frobenius distance of ``m^H m`` from the identity."""
    n = m.shape[0]
    return float(np.linalg.norm(m.conj().T @ m - np.eye(n)))


def backward_error(a0: np.ndarray, report: SolveReport) -> BackwardErrorReport:
    """Backward errors of ``report`` against the original matrix ``a0``.

    Requires a solve run with ``record=True``.  For similarity-based
    solves (no Z factor) Q stands in for Z and the unitary side reduces
    to the orthogonality defect of Q.
    """
    rec = report.recorder
    if rec is None or rec.q is None or report.schur_a is None:
        raise ValueError("backward error needs a solve run with record=True")
    a0 = np.asarray(a0, dtype=np.complex128)
    n = a0.shape[0]
    q = rec.q
    z = rec.z if rec.z is not None else q
    s = report.schur_a
    t = report.schur_u if report.schur_u is not None else np.eye(n)
    norm_a = float(np.linalg.norm(a0))
    bwe_a = float(np.linalg.norm(q @ s @ z.conj().T - a0)) / (norm_a or 1.0)
    bwe_u = float(np.linalg.norm(q @ t @ z.conj().T - np.eye(n))) / float(np.sqrt(n))
    return BackwardErrorReport(bwe_a, bwe_u)


_SOLVERS = {"rqr": rqr_solve, "qr": qr_solve}


def _make_matrix(family: str, n: int, seed: int, trial: int) -> np.ndarray:
    if family == "random":
        return gen_random_hessenberg(n, trial_seed(seed, n, trial))
    if family == "iplusj":
        return gen_iplusj(n)
    raise ValueError(f"unknown matrix family {family!r}")


def run_bench(
    sizes: Sequence[int],
    *,
    trials: int = 10,
    family: str = "random",
    algos: Sequence[str] = ("rqr", "qr"),
    seed: int = 0,
    clock: Callable[[], float] = time.perf_counter,
    log: IO[str] | None = None,
) -> list[BenchRow]:
    """Run the benchmark ensemble and return its rows.

    For every size and algorithm there are ``trials`` detail rows named
    ``{family}-n{n}-t{ttt}`` followed by one aggregate row named
    ``{family}-n{n}`` with status ``"mean"`` carrying column means.
    The same trial always sees the same matrix regardless of algorithm.
    ``clock`` is called once right before and once right after each
    solve; only the solve is timed.  Median summaries go to ``log``
    when given; they appear in no row.
    """
    for algo in algos:
        if algo not in _SOLVERS:
            raise ValueError(f"unknown algorithm {algo!r}")
    rows: list[BenchRow] = []
    for n in sizes:
        for algo in algos:
            solve = _SOLVERS[algo]
            detail: list[BenchRow] = []
            for t in range(trials):
                a = _make_matrix(family, n, seed, t)
                t0 = clock()
                rep = solve(a, record=True)
                dt = clock() - t0
                err = backward_error(a, rep)
                detail.append(
                    BenchRow(
                        name=f"{family}-n{n}-t{t:03d}",
                        n=n,
                        algo=algo,
                        time_s=dt,
                        bwe=err.bwe,
                        iters=rep.iterations,
                        iters_per_n=rep.iterations / n,
                        status=rep.status,
                    )
                )
            rows.extend(detail)
            rows.append(
                BenchRow(
                    name=f"{family}-n{n}",
                    n=n,
                    algo=algo,
                    time_s=statistics.fmean(r.time_s for r in detail),
                    bwe=statistics.fmean(r.bwe for r in detail),
                    iters=statistics.fmean(r.iters for r in detail),
                    iters_per_n=statistics.fmean(r.iters_per_n for r in detail),
                    status="mean",
                )
            )
            if log is not None:
                med_t = statistics.median(r.time_s for r in detail)
                med_b = statistics.median(r.bwe for r in detail)
                med_i = statistics.median(r.iters_per_n for r in detail)
                log.write(
                    f"{family}-n{n} {algo}: median time_s={med_t} "
                    f"bwe={med_b} iters_per_n={med_i}\n"
                )
    return rows
