"""Figure rendering for benchmark results.

Uses the non-interactive matplotlib backend and writes PNG files next
to the delimited output; nothing here ever opens a window.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .matio import BenchRow

__all__ = ["render_bench_figures"]

_PANELS = (
    ("bwe", "mean backward error", "semilogy"),
    ("runtime", "mean solve time (s)", "loglog"),
    ("iters", "mean sweeps per eigenvalue", "linear"),
)


def _value(row: BenchRow, tag: str) -> float:
    if tag == "bwe":
        return row.bwe
    if tag == "runtime":
        return row.time_s
    return row.iters_per_n


def render_bench_figures(rows: Iterable[BenchRow], stem: str | Path) -> list[Path]:
    """Render the three summary figures from aggregate benchmark rows.

    Writes ``<stem>_bwe.png``, ``<stem>_runtime.png`` and
    ``<stem>_iters.png`` and returns their paths.  Only rows with
    status ``"mean"`` are plotted, one line per algorithm.
    """
    agg = [r for r in rows if r.status == "mean"]
    algos = sorted({r.algo for r in agg})
    base = Path(stem)
    out: list[Path] = []
    for tag, ylabel, scale in _PANELS:
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        for algo in algos:
            pts = sorted((r.n, _value(r, tag)) for r in agg if r.algo == algo)
            ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", label=algo)
        if scale == "semilogy":
            ax.set_yscale("log")
        elif scale == "loglog":
            ax.set_xscale("log")
            ax.set_yscale("log")
        ax.set_xlabel("matrix size n")
        ax.set_ylabel(ylabel)
        ax.grid(True, which="both", alpha=0.3)
        if algos:
            ax.legend()
        fig.tight_layout()
        path = base.parent / f"{base.name}_{tag}.png"
        fig.savefig(path)
        plt.close(fig)
        out.append(path)
    return out
