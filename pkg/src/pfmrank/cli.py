"""Command-line frontend.

Subcommands::

    pfm-rank rank PROBLEM        aggregate, rescale, and rank one problem
    pfm-rank compare PROBLEM     rank under several methods side by side
    pfm-rank check PROBLEM       scale comparability + equilibrium residuals
    pfm-rank fuzz PROBLEM        randomized affine-invariance trials
    pfm-rank plot-data PROBLEM   normalized points + centroids as JSON

PROBLEM is a CSV or JSON file (see README for the formats) or ``-`` for
stdin.  Exit codes: 0 success, 1 internal error, 2 malformed input or
validation failure, 3 comparability warning from ``check``.  Method
disagreement and invariance violations are findings, not errors; they
exit 0.  All commands are deterministic for fixed inputs, flags and seed
(``--seed`` falls back to the ``PFM_RANK_SEED`` environment variable,
then to 0).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .aggregation import Method, rank_pstar, weighted_centroid
from .core import z_normalize
from .diagnostics import (
    comparability_check,
    compare_methods,
    equilibrium_check,
    invariance_trial,
)
from .errors import PfmRankError
from .io import emit_plot_data, parse_problem, to_jsonable, write_result

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2
EXIT_NOT_COMPARABLE = 3

#: Residual level treated as "exactly balanced" by ``check``.
RESIDUAL_TOL = 1e-9

_METHOD_NAMES = {m.value: m for m in Method}


def _add_io_flags(parser, with_out: bool = True):
    parser.add_argument("input", help="problem file (CSV or JSON), or - for stdin")
    parser.add_argument(
        "--format",
        choices=["csv", "json"],
        help="input format (default: by file suffix; csv for stdin)",
    )
    if with_out:
        parser.add_argument(
            "--out",
            choices=["text", "json", "csv"],
            default="text",
            help="output format (default: text)",
        )
    parser.add_argument("--output", metavar="PATH", help="write output here instead of stdout")


def _add_rank_flags(parser):
    parser.add_argument(
        "--tie-tol",
        type=float,
        default=1e-9,
        metavar="X",
        help="absolute score tolerance for ties (default: 1e-9)",
    )
    parser.add_argument(
        "--degenerate",
        choices=["reject", "zero"],
        default="reject",
        help="policy for a zero-spread criterion (default: reject)",
    )


def _parse_methods(text: str) -> list[Method]:
    methods = []
    for name in text.split(","):
        name = name.strip()
        if name not in _METHOD_NAMES:
            known = ", ".join(sorted(_METHOD_NAMES))
            raise PfmRankError(f"unknown method {name!r} (known: {known})")
        methods.append(_METHOD_NAMES[name])
    return methods


def _default_seed() -> int:
    env = os.environ.get("PFM_RANK_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise PfmRankError(f"PFM_RANK_SEED must be an integer, got {env!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pfm-rank",
        description="Affine-invariant preference aggregation and ranking.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", help="rank one problem with the weighted centroid")
    _add_io_flags(p)
    _add_rank_flags(p)

    p = sub.add_parser("compare", help="rank under several methods side by side")
    _add_io_flags(p)
    _add_rank_flags(p)
    p.add_argument(
        "--methods",
        required=True,
        metavar="M1,M2,...",
        help="comma-separated subset of: " + ", ".join(m.value for m in Method),
    )

    p = sub.add_parser("check", help="scale comparability and equilibrium residuals")
    _add_io_flags(p)

    p = sub.add_parser("fuzz", help="randomized affine-invariance trials")
    _add_io_flags(p)
    _add_rank_flags(p)
    p.add_argument(
        "--methods",
        default=",".join(m.value for m in Method),
        metavar="M1,M2,...",
        help="methods to fuzz (default: all)",
    )
    p.add_argument("--trials", type=int, default=100, help="trials per method (default: 100)")
    p.add_argument(
        "--seed",
        type=int,
        default=None,
        help="fuzzing seed (default: $PFM_RANK_SEED, else 0)",
    )

    p = sub.add_parser("plot-data", help="normalized points and centroids as JSON")
    _add_io_flags(p, with_out=False)
    return parser


def _read_problem(args):
    if args.input == "-":
        data = sys.stdin.buffer.read()
        fmt = args.format or "csv"
    else:
        with open(args.input, "rb") as fh:
            data = fh.read()
        fmt = args.format or ("json" if args.input.endswith(".json") else "csv")
    return parse_problem(data, fmt)


def _emit(args, payload: bytes):
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()


def _cmd_rank(args) -> int:
    doc = _read_problem(args)
    result = rank_pstar(
        doc.matrix, doc.weights, tie_tol=args.tie_tol, degenerate=args.degenerate
    )
    _emit(args, write_result(result, args.out))
    return EXIT_OK


def _cmd_compare(args) -> int:
    methods = _parse_methods(args.methods)
    doc = _read_problem(args)
    report = compare_methods(doc.matrix, doc.weights, methods, tie_tol=args.tie_tol)
    _emit(args, write_result(report, args.out))
    return EXIT_OK


def _cmd_check(args) -> int:
    doc = _read_problem(args)
    comparability = comparability_check(doc.matrix)
    z = z_normalize(doc.matrix)
    equilibrium = equilibrium_check(z, doc.weights, weighted_centroid(z, doc.weights))
    if args.out == "json":
        payload = (
            json.dumps(
                {
                    "comparability": to_jsonable(comparability),
                    "equilibrium": to_jsonable(equilibrium),
                },
                indent=2,
                ensure_ascii=False,
            )
            + "\n"
        ).encode("utf-8")
    else:
        payload = write_result(comparability, args.out) + write_result(equilibrium, args.out)
    _emit(args, payload)
    if not comparability.comparable:
        return EXIT_NOT_COMPARABLE
    if max(equilibrium.max_horizontal, equilibrium.max_vertical) > RESIDUAL_TOL:
        return EXIT_INTERNAL
    return EXIT_OK


def _cmd_fuzz(args) -> int:
    methods = _parse_methods(args.methods)
    if args.trials < 1:
        raise PfmRankError("--trials must be at least 1")
    seed = args.seed if args.seed is not None else _default_seed()
    doc = _read_problem(args)
    reports = [
        invariance_trial(doc.matrix, doc.weights, m, args.trials, seed, tie_tol=args.tie_tol)
        for m in methods
    ]
    if args.out == "json":
        payload = (
            json.dumps([to_jsonable(r) for r in reports], indent=2, ensure_ascii=False) + "\n"
        ).encode("utf-8")
    else:
        payload = b"".join(write_result(r, args.out) for r in reports)
    _emit(args, payload)
    return EXIT_OK


def _cmd_plot_data(args) -> int:
    doc = _read_problem(args)
    _emit(args, write_result(emit_plot_data(doc.matrix, doc.weights), "json"))
    return EXIT_OK


_COMMANDS = {
    "rank": _cmd_rank,
    "compare": _cmd_compare,
    "check": _cmd_check,
    "fuzz": _cmd_fuzz,
    "plot-data": _cmd_plot_data,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (PfmRankError, OSError) as exc:
        print(f"pfm-rank: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # pragma: no cover - defensive
        print(f"pfm-rank: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
