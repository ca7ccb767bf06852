"""Command line interface.

``poleswap solve`` computes the eigenvalues of one matrix (from a
Matrix Market file or a built-in generator) and prints them as plain
``re im`` lines, CSV, or JSON.  ``poleswap bench`` runs the seeded
benchmark ensemble, writes the delimited results, and renders the
summary figures next to them.

Exit status: 0 on success, 2 when a solve stops without converging,
1 for usage, I/O, and parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .harness import backward_error, run_bench
from .matio import MatrixSource, write_csv
from .solver import qr_solve, rqr_solve

__all__ = ["build_parser", "main"]


class _Parser(argparse.ArgumentParser):
    """Parser whose usage errors exit with status 1.

    The default argparse exit status (2) is reserved here for solves
    that stop without converging.
    """

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer list {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("expected at least one size")
    return values


def _algo_list(text: str) -> list[str]:
    values = [t.strip() for t in text.split(",") if t.strip()]
    for v in values:
        if v not in ("rqr", "qr"):
            raise argparse.ArgumentTypeError(f"unknown algorithm {v!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one algorithm")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="poleswap",
        description="Eigenvalues of upper Hessenberg matrices by pole swapping.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="{solve,bench}")

    sp = sub.add_parser("solve", help="compute the eigenvalues of one matrix")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="PATH", help="Matrix Market file to read")
    src.add_argument(
        "--gen", choices=("random", "iplusj"), help="generate a test matrix instead"
    )
    sp.add_argument("--n", type=int, help="matrix size for --gen")
    sp.add_argument("--seed", type=int, default=0, help="seed for --gen random")
    sp.add_argument(
        "--algo", choices=("rqr", "qr"), default="rqr", help="solver to use"
    )
    sp.add_argument(
        "--bwe",
        action="store_true",
        help="record the transformations and report backward errors",
    )
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="emit a JSON report")
    fmt.add_argument("--csv", action="store_true", help="emit position,re,im rows")
    sp.set_defaults(func=_cmd_solve, _parser=sp)

    bp = sub.add_parser("bench", help="run the benchmark ensemble")
    bp.add_argument(
        "--sizes", type=_int_list, required=True, metavar="N1,N2,...",
        help="comma-separated matrix sizes",
    )
    bp.add_argument("--trials", type=int, default=10, help="trials per size")
    bp.add_argument(
        "--family", choices=("random", "iplusj"), default="random",
        help="matrix family",
    )
    bp.add_argument(
        "--algos", type=_algo_list, default=["rqr", "qr"], metavar="A1,A2",
        help="comma-separated algorithms (rqr, qr)",
    )
    bp.add_argument("--seed", type=int, default=0, help="ensemble seed")
    bp.add_argument(
        "--out", required=True, metavar="FILE.csv", help="output CSV path"
    )
    bp.set_defaults(func=_cmd_bench, _parser=bp)
    return parser


def _cmd_solve(args) -> int:
    if args.gen is not None and args.n is None:
        args._parser.error("--gen requires --n")
    if args.input is not None:
        source = MatrixSource(kind="file", path=args.input)
    else:
        source = MatrixSource(kind=args.gen, n=args.n, seed=args.seed)
    a = source.load()
    solve = rqr_solve if args.algo == "rqr" else qr_solve
    rep = solve(a, record=args.bwe)
    err = backward_error(a, rep) if args.bwe else None

    order = np.argsort(np.array(rep.positions), kind="stable")
    pos = [rep.positions[int(k)] for k in order]
    vals = [rep.eigenvalues[int(k)].as_complex() for k in order]

    if args.json:
        payload = {
            "name": source.name,
            "n": int(a.shape[0]),
            "algo": args.algo,
            "status": rep.status,
            "iterations": rep.iterations,
            "swaps": rep.swaps,
            "positions": pos,
            "eigenvalues": [[z.real, z.imag] for z in vals],
        }
        if err is not None:
            payload["bwe"] = {"a": err.bwe_a, "u": err.bwe_u, "max": err.bwe}
        print(json.dumps(payload, indent=2))
    elif args.csv:
        print("position,re,im")
        for p, z in zip(pos, vals):
            print(f"{p},{z.real},{z.imag}")
        if err is not None:
            print(f"# bwe_a={err.bwe_a} bwe_u={err.bwe_u} bwe={err.bwe}")
    else:
        for z in vals:
            print(z.real, z.imag)
        if err is not None:
            print(f"# bwe_a={err.bwe_a} bwe_u={err.bwe_u} bwe={err.bwe}")
    return 0 if rep.status == "converged" else 2


def _cmd_bench(args) -> int:
    from .plots import render_bench_figures

    out = Path(args.out)
    rows = run_bench(
        args.sizes,
        trials=args.trials,
        family=args.family,
        algos=args.algos,
        seed=args.seed,
        log=sys.stdout,
    )
    write_csv(rows, out)
    print(f"wrote {out}")
    for fig in render_bench_figures(rows, out.with_suffix("")):
        print(f"wrote {fig}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"poleswap: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
