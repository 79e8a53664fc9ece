#!/usr/bin/env python3
"""
scc-deletion - exact solvers for strong component deletion problems

Usage:
    scc-deletion solve --problem dfvs --k 2 --input graph.txt
    scc-deletion solve --problem bsscvd --k 2 --s 3 --input graph.txt --json
    scc-deletion solve --problem oorad --k 3 --input graph.txt --minimize
    scc-deletion oracle --problem oorvd --k 1 --input graph.txt
    scc-deletion verify --problem bsscvd --s 2 --input graph.txt --solution sol.txt
    scc-deletion transform --kind line-graph --k 2 --input graph.txt --output line.txt
    scc-deletion gen --n 8 --m 16 --seed 3 --problem dfvs --k 2 --planted --output corpus/a.txt
    scc-deletion bench --corpus corpus/

Exit codes:
    0  solution found (verify: solution valid; bench: full agreement)
    1  infeasible at the given budget (verify: invalid; bench: disagreement)
    2  input error (bad file, bad ids, bad parameters)
    3  resource limit exceeded
    4  internal error (a solver produced an invalid witness)
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from .bench import run_bench
from .bounded_scc import transform_arc_to_vertex, transform_vertex_to_arc
from .config import (
    DEFAULT_COVERING_LIMIT,
    DEFAULT_COVERING_RETRIES,
    DEFAULT_ORACLE_LIMIT,
    CoveringMode,
    SkewBackend,
    SolverConfig,
    SolveStats,
)
from .errors import BudgetError, InputError, SccDeletionError
from .graph import cap_multiplicity
from .instance_io import (
    Sidecar,
    parse_solution,
    read_graph,
    serialize_graph,
    write_graph,
    write_sidecar,
)
from .one_out_regular import line_graph_transform
from .oracle import check_solution, planted_instance, random_instance
from .problems import Problem, ProblemInstance
from .report import build_report
from .solve import run_oracle, solve_instance, solve_minimum, with_budget

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_INPUT_ERROR = 2
EXIT_LIMIT = 3
EXIT_INTERNAL = 4

PROBLEM_TAGS = [p.value for p in Problem]
TRANSFORM_KINDS = ["arc-to-vertex", "vertex-to-arc", "line-graph"]


# =============================================================================
# Argument parsing
# =============================================================================


def _add_instance_options(parser: argparse.ArgumentParser, k_required: bool = True) -> None:
    parser.add_argument("--problem", required=True, choices=PROBLEM_TAGS, help="Problem tag")
    parser.add_argument("--k", type=int, required=k_required, help="Deletion budget")
    parser.add_argument("--s", type=int, help="Strong component size bound (bounded-size problems)")
    parser.add_argument("--input", type=Path, required=True, help="Instance file")


def _add_solver_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--covering",
        choices=[m.value for m in CoveringMode],
        default=CoveringMode.EXHAUSTIVE.value,
        help="Shadow covering family (default: exhaustive)",
    )
    parser.add_argument(
        "--covering-retries",
        type=int,
        default=DEFAULT_COVERING_RETRIES,
        help=f"Samples for randomized covering (default: {DEFAULT_COVERING_RETRIES})",
    )
    parser.add_argument(
        "--covering-limit",
        type=int,
        default=DEFAULT_COVERING_LIMIT,
        help=f"Largest free-vertex count for exhaustive covering (default: {DEFAULT_COVERING_LIMIT})",
    )
    parser.add_argument(
        "--skew-backend",
        choices=[b.value for b in SkewBackend],
        default=SkewBackend.FPT.value,
        help="Skew separator subsolver (default: fpt)",
    )
    parser.add_argument("--seed", type=int, default=0, help="Seed for randomized covering")
    parser.add_argument(
        "--oracle-limit",
        type=int,
        default=DEFAULT_ORACLE_LIMIT,
        help=f"Most deletion sets the brute-force oracle may try (default: {DEFAULT_ORACLE_LIMIT})",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scc-deletion",
        description="Exact parameterized solvers for strong component deletion",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Enable debug logging")
    subparsers = parser.add_subparsers(dest="command", help="Command")

    solve_parser = subparsers.add_parser("solve", help="Run the exact solver")
    _add_instance_options(solve_parser)
    _add_solver_options(solve_parser)
    solve_parser.add_argument("--json", action="store_true", help="Print the report as JSON")
    solve_parser.add_argument(
        "--minimize",
        action="store_true",
        help="Treat --k as an upper bound and report the smallest budget",
    )
    solve_parser.add_argument(
        "--via-arc", action="store_true", help="Solve bsscvd/dfvs through the arc version"
    )

    oracle_parser = subparsers.add_parser("oracle", help="Run the brute-force oracle")
    _add_instance_options(oracle_parser)
    _add_solver_options(oracle_parser)
    oracle_parser.add_argument("--json", action="store_true", help="Print the report as JSON")

    verify_parser = subparsers.add_parser("verify", help="Check a claimed solution")
    _add_instance_options(verify_parser, k_required=False)
    verify_parser.add_argument("--solution", type=Path, required=True, help="Solution file")
    verify_parser.add_argument("--json", action="store_true", help="Print the verdict as JSON")

    transform_parser = subparsers.add_parser("transform", help="Write a transformed instance")
    transform_parser.add_argument("--kind", required=True, choices=TRANSFORM_KINDS)
    transform_parser.add_argument("--k", type=int, required=True, help="Deletion budget")
    transform_parser.add_argument("--s", type=int, help="Size bound (arc-to-vertex, vertex-to-arc)")
    transform_parser.add_argument("--input", type=Path, required=True, help="Instance file")
    transform_parser.add_argument("--output", type=Path, help="Output file (default: stdout)")
    transform_parser.add_argument("--json", action="store_true", help="Parameters as JSON on stderr")

    gen_parser = subparsers.add_parser("gen", help="Generate a random or planted instance")
    gen_parser.add_argument("--n", type=int, required=True, help="Vertex count")
    gen_parser.add_argument("--m", type=int, default=0, help="Arc count (random instances)")
    gen_parser.add_argument("--seed", type=int, default=0, help="Generator seed")
    gen_parser.add_argument("--problem", required=True, choices=PROBLEM_TAGS, help="Problem tag")
    gen_parser.add_argument("--k", type=int, required=True, help="Deletion budget")
    gen_parser.add_argument("--s", type=int, help="Size bound")
    gen_parser.add_argument("--planted", action="store_true", help="Plant a solution of size k")
    gen_parser.add_argument("--output", type=Path, help="Output file (default: stdout)")

    bench_parser = subparsers.add_parser("bench", help="Solver vs oracle over a corpus")
    bench_parser.add_argument("--corpus", type=Path, required=True, help="Directory of instances")
    _add_solver_options(bench_parser)
    bench_parser.add_argument("--json", action="store_true", help="Print results as JSON")

    return parser


def _config(args: argparse.Namespace) -> SolverConfig:
    return SolverConfig(
        covering=CoveringMode(args.covering),
        covering_retries=args.covering_retries,
        covering_limit=args.covering_limit,
        skew_backend=SkewBackend(args.skew_backend),
        seed=args.seed,
        oracle_limit=args.oracle_limit,
    )


def _instance(args: argparse.Namespace, k: int) -> ProblemInstance:
    return ProblemInstance(Problem(args.problem), read_graph(args.input), k, args.s)


# =============================================================================
# Commands
# =============================================================================


def cmd_solve(args: argparse.Namespace) -> int:
    """Run the exact solver and print its report."""
    config = _config(args)
    instance = _instance(args, args.k)
    stats = SolveStats()
    started = time.perf_counter()
    if args.minimize:
        best = solve_minimum(instance, config, stats, args.via_arc)
        if best is not None:
            instance = with_budget(instance, best[0])
        found = best[1] if best is not None else None
    else:
        found = solve_instance(instance, config, stats, args.via_arc)
    stats.wall_ms = (time.perf_counter() - started) * 1000

    report = build_report(args.problem, instance, found, stats, config)
    print(report.to_json() if args.json else report.to_table())
    return EXIT_OK if found is not None else EXIT_INFEASIBLE


def cmd_oracle(args: argparse.Namespace) -> int:
    """Run the brute-force oracle and print its report."""
    config = _config(args)
    instance = _instance(args, args.k)
    stats = SolveStats()
    started = time.perf_counter()
    found = run_oracle(instance, config)
    stats.wall_ms = (time.perf_counter() - started) * 1000

    report = build_report(args.problem, instance, found, stats, config)
    print(report.to_json() if args.json else report.to_table())
    return EXIT_OK if found is not None else EXIT_INFEASIBLE


def cmd_verify(args: argparse.Namespace) -> int:
    """Check a solution file against the problem checker."""
    instance = _instance(args, args.k if args.k is not None else 0)
    claimed = parse_solution(args.solution.read_text(encoding="utf-8"), instance.graph, instance.mode)
    valid = check_solution(instance, claimed)
    within = args.k is None or len(claimed) <= args.k
    if args.json:
        print(json.dumps({"valid": valid, "within_budget": within, "size": len(claimed)}))
    else:
        verdict = "valid" if valid else "invalid"
        suffix = "" if within else f" but exceeds k = {args.k}"
        print(f"Solution of size {len(claimed)} is {verdict}{suffix}")
    return EXIT_OK if valid and within else EXIT_INFEASIBLE


def cmd_transform(args: argparse.Namespace) -> int:
    """Write a transformed instance; parameters go to stderr."""
    g = read_graph(args.input)
    if args.kind == "line-graph":
        transformed = line_graph_transform(cap_multiplicity(g, args.k + 1), args.k)
    else:
        if args.s is None:
            raise InputError(f"--kind {args.kind} needs --s")
        if args.kind == "arc-to-vertex":
            transformed = transform_arc_to_vertex(cap_multiplicity(g, args.k), args.k, args.s)
        else:
            transformed = transform_vertex_to_arc(g, args.k, args.s)

    target = transformed.instance
    text = serialize_graph(target.graph)
    if args.output:
        write_graph(args.output, target.graph)
        logger.info("Wrote %r to %s", target.graph, args.output)
    else:
        sys.stdout.write(text)

    params = {
        "problem": target.problem.value,
        "n": target.graph.num_vertices,
        "m": target.graph.num_arcs,
        "k": target.k,
        "s": target.s,
    }
    if args.json:
        print(json.dumps(params), file=sys.stderr)
    else:
        print(" ".join(f"{key}={value}" for key, value in params.items()), file=sys.stderr)
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    """Write a random or planted instance."""
    if args.planted:
        if args.output is None:
            raise InputError("--planted needs --output so the sidecar has a place to go")
        planted = planted_instance(args.n, args.k, args.s, args.seed, args.problem)
        write_graph(args.output, planted.instance.graph)
        write_sidecar(args.output, Sidecar(args.problem, args.k, args.s, feasible=True))
        logger.info(
            "Wrote planted %s instance to %s (planted %s)",
            args.problem,
            args.output,
            sorted(planted.planted),
        )
        return EXIT_OK

    instance = random_instance(args.n, args.m, args.seed, args.problem, args.k, args.s)
    if args.output:
        write_graph(args.output, instance.graph)
        logger.info("Wrote %r to %s", instance.graph, args.output)
    else:
        sys.stdout.write(serialize_graph(instance.graph))
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    """Bench a corpus directory."""
    result = run_bench(args.corpus, _config(args))
    print(result.to_json() if args.json else result.to_table())
    if not result.ok:
        logger.error("Disagreement on: %s", ", ".join(result.offenders))
        return EXIT_INFEASIBLE
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
    "transform": cmd_transform,
    "gen": cmd_gen,
    "bench": cmd_bench,
}


def run_cli(argv: list[str] | None = None) -> int:
    """Parse ``argv`` and run one command; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT_ERROR if e.code else EXIT_OK

    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_INPUT_ERROR

    quiet = args.command in ("solve", "oracle", "verify", "transform")
    level = logging.DEBUG if args.verbose else (logging.WARNING if quiet else logging.INFO)
    logging.basicConfig(
        level=level,
        format="%(asctime)s [%(levelname)s] %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        stream=sys.stderr,
    )

    try:
        return COMMANDS[args.command](args)
    except BudgetError as e:
        logger.error("Limit exceeded: %s", e)
        return EXIT_LIMIT
    except InputError as e:
        logger.error("Input error: %s", e)
        return EXIT_INPUT_ERROR
    except OSError as e:
        logger.error("Cannot read or write %s: %s", e.filename or "file", e.strerror or e)
        return EXIT_INPUT_ERROR
    except SccDeletionError as e:
        logger.error("Internal error: %s", e)
        return EXIT_INTERNAL


def main() -> None:
    """Console entry point."""
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
