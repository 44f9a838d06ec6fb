"""Command-line entry point: ``evomarkov <subcommand> --input FILE ...``.

Exit status: 0 on success, 2 on parse/validation errors, 3 when a size
guard (dimension or walk length cap) is exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .core import DEFAULT_TOL, MarkovChain, format_number, make_structure_matrix, matrix_power
from .errors import GuardExceeded, ValidationError
from .io import parse_matrix_csv, render_dot, render_matrix_csv
from .montecarlo import empirical_transition, estimate_return_frequency, simulate
from .report import build_report
from .triad import EvolutionAlgebra, graph_from_algebra, graph_from_chain
from .walks import enumerate_walks, markov_weight, verify_walk_theorem, walk_weight_sum

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_GUARD = 3


class _Failure(Exception):
    def __init__(self, message: str, status: int):
        super().__init__(message)
        self.status = status


def _load(args):
    path = Path(args.input)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise _Failure(f"{path}: {exc.strerror}", EXIT_INVALID) from None
    try:
        return parse_matrix_csv(data)
    except ValidationError as exc:
        raise _Failure(f"{path}: {exc}", EXIT_INVALID) from None


def _graph(M, args):
    alg = EvolutionAlgebra(M)
    try:
        return graph_from_chain(MarkovChain(M, args.tol), args.zero_tol)
    except ValidationError:
        return graph_from_algebra(alg, args.zero_tol)


def _chain(M, args):
    try:
        return MarkovChain(M, args.tol)
    except ValidationError as exc:
        raise _Failure(f"{args.input}: {exc}", EXIT_INVALID) from None


def _emit(args, tree, text):
    if args.format == "structured":
        sys.stdout.write(json.dumps(tree, indent=2) + "\n")
    else:
        sys.stdout.write(text)


def cmd_analyze(args):
    M = _load(args)
    report = build_report(
        M,
        tol=args.tol,
        zero_tol=args.zero_tol,
        closed_sets_cap=args.closed_sets_cap,
        walk_max_length=args.verify_walks,
    )
    if args.format == "structured":
        sys.stdout.write(report.render_structured())
    else:
        sys.stdout.write(report.render_text())


def cmd_dot(args):
    M = _load(args)
    text = render_dot(_graph(M, args))
    if args.output:
        try:
            Path(args.output).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise _Failure(f"{args.output}: {exc.strerror}", EXIT_INVALID) from None
    else:
        sys.stdout.write(text)


def cmd_power(args):
    M = _load(args)
    P = matrix_power(M, args.n).matrix
    _emit(args, {"exponent": args.n, "labels": list(P.labels), "matrix": P.tolist()},
          render_matrix_csv(P))


def cmd_walks(args):
    M = _load(args)
    g = _graph(M, args)
    i, j = g.index(args.source), g.index(args.target)
    walks = enumerate_walks(g, i, j, args.length)
    total = walk_weight_sum(g, i, j, args.length)
    entry = float(matrix_power(M, args.length).matrix.entries[i, j])
    rows = [(w.render(g.vertices), markov_weight(g, w)) for w in walks]
    tree = {
        "from": g.vertices[i],
        "to": g.vertices[j],
        "length": args.length,
        "walks": [{"walk": name, "weight": wt} for name, wt in rows],
        "weight_sum": total,
        "matrix_entry": entry,
        "abs_error": abs(total - entry),
    }
    lines = [f"{name}  {format_number(wt)}" for name, wt in rows]
    lines.append(f"walks: {len(rows)}  weight sum: {format_number(total)}  "
                 f"matrix entry: {format_number(entry)}")
    _emit(args, tree, "\n".join(lines) + "\n")


def cmd_verify_walks(args):
    M = _load(args)
    g = _graph(M, args)
    reports = verify_walk_theorem(g, args.max_length, args.tol)
    failed = [r for r in reports if not r.ok]
    tree = {
        "max_length": args.max_length,
        "tol": args.tol,
        "checked": len(reports),
        "failed": [
            {"from": g.vertices[r.source], "to": g.vertices[r.target], "length": r.length,
             "weight_sum": r.weight_sum, "matrix_entry": r.matrix_entry,
             "abs_error": r.abs_error}
            for r in failed
        ],
        "max_abs_error": max((r.abs_error for r in reports), default=0.0),
    }
    lines = [f"checked {len(reports)} (from, to, length) triples, {len(failed)} failed"]
    for r in failed:
        lines.append(f"  FAIL {g.vertices[r.source]}->{g.vertices[r.target]} n={r.length}: "
                     f"{r.weight_sum!r} vs {r.matrix_entry!r}")
    _emit(args, tree, "\n".join(lines) + "\n")
    if failed:
        return 1
    return 0


def cmd_simulate(args):
    M = _load(args)
    chain = _chain(M, args)
    traj = simulate(chain, args.start, args.steps, args.seed)
    names = [chain.labels[k] for k in traj.states]
    _emit(args, {"seed": args.seed, "start": names[0], "states": names}, " ".join(names) + "\n")


def cmd_estimate(args):
    M = _load(args)
    chain = _chain(M, args)
    if args.mode == "transition":
        est = empirical_transition(chain, args.m, args.trials, args.seed)
        tree = {
            "mode": "transition", "m": args.m, "trials": args.trials, "seed": args.seed,
            "labels": list(chain.labels),
            "value": est.value.tolist(), "stderr": est.stderr.tolist(),
        }
        text = render_matrix_csv(make_structure_matrix(est.value.tolist(), M.labels))
    else:
        if args.state is None:
            raise _Failure("--state is required for --mode return", EXIT_INVALID)
        est = estimate_return_frequency(chain, args.state, args.horizon, args.trials, args.seed)
        tree = {
            "mode": "return", "state": args.state, "horizon": args.horizon,
            "trials": args.trials, "seed": args.seed,
            "value": est.value, "stderr": est.stderr,
        }
        text = f"{args.state}: {est.value!r} +/- {est.stderr!r} ({est.trials} trials)\n"
    _emit(args, tree, text)


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--input", "-i", required=True, help="matrix CSV file")
    shared.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help="stochasticity tolerance (default %(default)g)")
    shared.add_argument("--zero-tol", type=float, default=0.0,
                        help="entries with |x| <= this give no edge (default 0)")
    shared.add_argument("--format", choices=("text", "structured"), default="text")
    shared.add_argument("--closed-sets-cap", type=int, default=20)

    parser = argparse.ArgumentParser(
        prog="evomarkov",
        description="Markov chains, evolution algebras and their weighted digraphs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[shared], help="full structural report")
    p.add_argument("--verify-walks", type=int, metavar="N", default=None,
                   help="also check the walk-sum identity for lengths 1..N")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("dot", parents=[shared], help="export the Markov graph as DOT")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("power", parents=[shared], help="n-step matrix")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("walks", parents=[shared], help="enumerate walks between two generators")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--length", type=int, required=True)
    p.set_defaults(func=cmd_walks)

    p = sub.add_parser("verify-walks", parents=[shared],
                       help="compare walk-weight sums with matrix powers")
    p.add_argument("--max-length", type=int, required=True)
    p.set_defaults(func=cmd_verify_walks)

    p = sub.add_parser("simulate", parents=[shared], help="sample one trajectory")
    p.add_argument("--start", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("estimate", parents=[shared], help="Monte Carlo estimates")
    p.add_argument("--mode", choices=("transition", "return"), required=True)
    p.add_argument("--m", type=int, default=1, help="steps (transition mode)")
    p.add_argument("--state", default=None, help="generator (return mode)")
    p.add_argument("--horizon", type=int, default=200, help="max steps (return mode)")
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_estimate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        status = args.func(args)
    except _Failure as exc:
        print(f"evomarkov: {exc}", file=sys.stderr)
        return exc.status
    except GuardExceeded as exc:
        print(f"evomarkov: {args.input}: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ValidationError, ValueError) as exc:
        print(f"evomarkov: {args.input}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return status or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
