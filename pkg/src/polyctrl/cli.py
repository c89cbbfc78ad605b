"""Command-line front end.

Commands: analyze, dilation, access, rank, validate, lie-rank, gen.  Input
comes from a file argument or stdin.  Exit code 0 means the analysis ran
(the verdict is in the report), 2 an input problem, 3 a capacity guard.
Reports are emitted as JSON with --json; identical inputs and flags produce
byte-identical reports, so timing data only appears on request.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .formats import ParseError, parse_input, serialize
from .generate import pattern_with_rng, random_pattern
from .hypergraph import DirectedHypergraph, build_hypergraph
from .numeric import strong_controllability
from .oracle import lie_algebra_rank_at_origin
from .structural import analyze_hypergraph, structural_verdict
from .system import (
    Polysystem,
    SparsityPattern,
    ensure_valid,
    sample_realization,
    sparsity_pattern,
)
from .tensor import DEFAULT_CAP, CapacityError

import numpy as np

__all__ = ["main", "run"]

FORMAT_VERSION = "1"


class _Timings:
    def __init__(self) -> None:
        self.phases: dict[str, float] = {}

    def measure(self, name: str):
        timings = self

        class _Phase:
            def __enter__(self):
                self.start = time.perf_counter()

            def __exit__(self, *exc):
                timings.phases[name] = (time.perf_counter() - self.start) * 1000.0
                return False

        return _Phase()


def _read_input(args) -> str:
    if args.path == "-":
        return sys.stdin.read()
    try:
        with open(args.path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise ParseError(0, f"cannot read {args.path}: {exc.strerror}") from None


def _input_section(obj) -> dict:
    if isinstance(obj, DirectedHypergraph):
        return {
            "kind": "hypergraph",
            "n": obj.n,
            "m": obj.m,
            "edges": len(obj.edges),
        }
    if isinstance(obj, Polysystem):
        kind = "system"
        tensor_nnz = len(obj.tensor.entries)
        control_nnz = int(np.count_nonzero(obj.control))
    else:
        kind = "pattern"
        tensor_nnz = len(obj.tensor_support)
        control_nnz = len(obj.control_support)
    return {
        "kind": kind,
        "k": obj.order,
        "n": obj.dim,
        "m": obj.inputs,
        "tensor_nnz": tensor_nnz,
        "control_nnz": control_nnz,
    }


def _structural_section(verdict) -> dict:
    return {
        "controllable": verdict.controllable,
        "dilated": verdict.dilated,
        "dilation_witness": sorted(verdict.dilation_witness)
        if verdict.dilation_witness is not None
        else None,
        "inaccessible": sorted(verdict.inaccessible),
        "matching": [list(pair) for pair in verdict.matching],
    }


def _emit(report: dict, args) -> None:
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    for line in _human_lines(report):
        print(line)


def _human_lines(report: dict, prefix: str = "") -> list[str]:
    lines = []
    for key, value in report.items():
        if key == "format_version":
            continue
        if isinstance(value, dict):
            lines.append(f"{prefix}{key}:")
            lines.extend(_human_lines(value, prefix + "  "))
        else:
            lines.append(f"{prefix}{key}: {value}")
    return lines


def _emit_error(args, kind: str, message: str) -> None:
    if getattr(args, "json", False):
        print(
            json.dumps({"error": {"kind": kind, "message": message}}, sort_keys=True),
            file=sys.stderr,
        )
    else:
        print(f"error: {message}", file=sys.stderr)


def _to_pattern(obj) -> SparsityPattern:
    if isinstance(obj, Polysystem):
        return sparsity_pattern(obj)
    return obj


def _cmd_analyze(args) -> int:
    timings = _Timings()
    obj = parse_input(_read_input(args))
    report = {
        "format_version": FORMAT_VERSION,
        "command": "analyze",
        "input": _input_section(obj),
    }
    if isinstance(obj, DirectedHypergraph):
        if args.numeric:
            raise ParseError(0, "numeric analysis needs tensor/matrix input, not a hypergraph")
        with timings.measure("structural"):
            verdict = analyze_hypergraph(obj)
        report["structural"] = _structural_section(verdict)
    else:
        if isinstance(obj, Polysystem):
            ensure_valid(obj)
        pattern = _to_pattern(obj)
        with timings.measure("structural"):
            verdict = structural_verdict(pattern)
        report["structural"] = _structural_section(verdict)
        if args.numeric:
            if isinstance(obj, Polysystem):
                system, seed = obj, None
            else:
                system, seed = sample_realization(pattern, args.seed), args.seed
            with timings.measure("numeric"):
                rank = strong_controllability(system, tol=args.tol, cap=args.cap)
            report["numeric"] = {
                "rank": rank.rank,
                "n": rank.n,
                "strongly_controllable": rank.strongly_controllable,
                "iterations": rank.iterations,
                "tolerance": rank.tolerance,
                "seed": seed,
            }
    if args.timings:
        report["timings_ms"] = timings.phases
    _emit(report, args)
    return 0


def _cmd_dilation(args) -> int:
    obj = parse_input(_read_input(args))
    graph = obj if isinstance(obj, DirectedHypergraph) else build_hypergraph(_to_pattern(obj))
    verdict = analyze_hypergraph(graph)
    report = {
        "format_version": FORMAT_VERSION,
        "command": "dilation",
        "input": _input_section(obj),
        "dilated": verdict.dilated,
        "witness": sorted(verdict.dilation_witness)
        if verdict.dilation_witness is not None
        else None,
        "matching": [list(pair) for pair in verdict.matching],
    }
    _emit(report, args)
    return 0


def _cmd_access(args) -> int:
    from .structural import accessible_set

    obj = parse_input(_read_input(args))
    graph = obj if isinstance(obj, DirectedHypergraph) else build_hypergraph(_to_pattern(obj))
    accessible = accessible_set(graph)
    report = {
        "format_version": FORMAT_VERSION,
        "command": "access",
        "input": _input_section(obj),
        "accessible": sorted(accessible),
        "inaccessible": sorted(graph.state_vertices - accessible),
    }
    _emit(report, args)
    return 0


def _require_system(obj, args) -> tuple[Polysystem, int | None]:
    if isinstance(obj, DirectedHypergraph):
        raise ParseError(0, "this command needs tensor/matrix input, not a hypergraph")
    if isinstance(obj, Polysystem):
        ensure_valid(obj)
        return obj, None
    return sample_realization(obj, args.seed), args.seed


def _cmd_rank(args) -> int:
    obj = parse_input(_read_input(args))
    system, seed = _require_system(obj, args)
    rank = strong_controllability(system, tol=args.tol, cap=args.cap)
    report = {
        "format_version": FORMAT_VERSION,
        "command": "rank",
        "input": _input_section(obj),
        "rank": rank.rank,
        "n": rank.n,
        "strongly_controllable": rank.strongly_controllable,
        "iterations": rank.iterations,
        "tolerance": rank.tolerance,
        "seed": seed,
    }
    _emit(report, args)
    return 0


def _cmd_lie_rank(args) -> int:
    obj = parse_input(_read_input(args))
    system, seed = _require_system(obj, args)
    rank, saturated = lie_algebra_rank_at_origin(system, depth_cap=args.depth_cap)
    report = {
        "format_version": FORMAT_VERSION,
        "command": "lie-rank",
        "input": _input_section(obj),
        "rank": rank,
        "n": system.dim,
        "full_rank": rank == system.dim,
        "saturated": saturated,
        "seed": seed,
    }
    _emit(report, args)
    return 0


def _cmd_validate(args) -> int:
    rng = np.random.default_rng(args.seed)
    trials = []
    disagreements = []
    for index in range(args.trials):
        tensor_nnz = min(int(rng.integers(1, 7)), args.n**args.k)
        control_nnz = int(rng.integers(1, args.n * args.m + 1))
        pattern = pattern_with_rng(rng, args.n, args.k, args.m, tensor_nnz, control_nnz)
        verdict = structural_verdict(pattern)
        draws = 3 if verdict.controllable else 5
        ranks = []
        for j in range(draws):
            system = sample_realization(pattern, args.seed * 1000 + index * 10 + j)
            ranks.append(strong_controllability(system, tol=args.tol).rank)
        if verdict.controllable:
            agree = any(r == pattern.dim for r in ranks)
        else:
            agree = all(r < pattern.dim for r in ranks)
        if not agree:
            disagreements.append(index)
        trials.append(
            {
                "index": index,
                "controllable": verdict.controllable,
                "ranks": ranks,
                "n": pattern.dim,
                "agree": agree,
            }
        )
    report = {
        "format_version": FORMAT_VERSION,
        "command": "validate",
        "trials": args.trials,
        "n": args.n,
        "k": args.k,
        "m": args.m,
        "seed": args.seed,
        "tolerance": args.tol,
        "agreements": args.trials - len(disagreements),
        "disagreements": disagreements,
        "all_agree": not disagreements,
        "detail": trials,
    }
    _emit(report, args)
    return 0


def _cmd_gen(args) -> int:
    tensor_nnz = args.tensor_nnz if args.tensor_nnz is not None else args.n
    control_nnz = args.control_nnz if args.control_nnz is not None else args.m
    pattern = random_pattern(args.n, args.k, args.m, tensor_nnz, control_nnz, args.seed)
    sys.stdout.write(serialize(pattern))
    return 0


def _add_io_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("path", nargs="?", default="-", help="input file, '-' for stdin")
    parser.add_argument("--json", action="store_true", help="emit a JSON report")


def _add_numeric_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, default=0.0, help="relative SVD cutoff, 0 = automatic")
    parser.add_argument("--seed", type=int, default=0, help="realization seed for pattern input")
    parser.add_argument("--cap", type=int, default=DEFAULT_CAP, help="capacity cap in cells")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyctrl",
        description="Structural controllability of odd homogeneous polynomial control systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="structural verdict, optionally with the numeric rank test")
    _add_io_flags(p)
    _add_numeric_flags(p)
    p.add_argument("--numeric", action="store_true", help="also run the rank test")
    p.add_argument("--timings", action="store_true", help="include timing data in the report")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("dilation", help="matching-based dilation test")
    _add_io_flags(p)
    p.set_defaults(func=_cmd_dilation)

    p = sub.add_parser("access", help="accessible vertex set")
    _add_io_flags(p)
    p.set_defaults(func=_cmd_access)

    p = sub.add_parser("rank", help="reduced controllability matrix rank")
    _add_io_flags(p)
    _add_numeric_flags(p)
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("lie-rank", help="Lie algebra rank at the origin (desk scale)")
    _add_io_flags(p)
    p.add_argument("--seed", type=int, default=0, help="realization seed for pattern input")
    p.add_argument("--depth-cap", type=int, default=None, help="bracket rounds, default 2n")
    p.set_defaults(func=_cmd_lie_rank)

    p = sub.add_parser("validate", help="cross-validate structural verdicts against sampled ranks")
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("gen", help="emit a seeded random pattern")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tensor-nnz", type=int, default=None)
    p.add_argument("--control-nnz", type=int, default=None)
    p.add_argument("--json", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=_cmd_gen)

    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        _emit_error(args, "input", str(exc))
        return 2
    except ValueError as exc:
        _emit_error(args, "input", str(exc))
        return 2
    except CapacityError as exc:
        _emit_error(args, "capacity", str(exc))
        return 3


def main() -> None:
    sys.exit(run())
