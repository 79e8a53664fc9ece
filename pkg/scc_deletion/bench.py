"""
Benchmark harness

Runs the exact solver and the brute-force oracle on every ``*.txt`` instance
of a corpus directory and compares both with the instance's sidecar.
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .config import SolverConfig, SolveStats
from .errors import InputError
from .instance_io import read_graph, read_sidecar
from .problems import Problem, ProblemInstance
from .solve import is_witness, run_oracle, solve_instance

logger = logging.getLogger(__name__)

RULE = "=" * 80


@dataclass
class BenchRow:
    """One corpus instance"""

    name: str
    problem: str
    n: int
    m: int
    k: int
    s: int | None
    expected: bool
    solver: bool
    oracle: bool
    witness_ok: bool
    wall_ms: float
    stats: dict[str, Any] = field(default_factory=dict)

    @property
    def agrees(self) -> bool:
        return self.solver == self.oracle == self.expected and self.witness_ok

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "problem": self.problem,
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "s": self.s,
            "expected": self.expected,
            "solver": self.solver,
            "oracle": self.oracle,
            "witness_ok": self.witness_ok,
            "agrees": self.agrees,
            "wall_ms": round(self.wall_ms, 3),
            "stats": self.stats,
        }


@dataclass
class BenchResult:
    """All rows plus telemetry summed over the corpus"""

    rows: list[BenchRow] = field(default_factory=list)
    totals: SolveStats = field(default_factory=SolveStats)

    @property
    def offenders(self) -> list[str]:
        return [row.name for row in self.rows if not row.agrees]

    @property
    def ok(self) -> bool:
        return not self.offenders

    def to_dict(self) -> dict[str, Any]:
        return {
            "instances": len(self.rows),
            "agreeing": len(self.rows) - len(self.offenders),
            "offenders": self.offenders,
            "totals": self.totals.to_dict(),
            "rows": [row.to_dict() for row in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_table(self) -> str:
        header = f"{'instance':<24} {'problem':<8} {'n':>4} {'m':>5} {'k':>3} {'exp':>5} {'solver':>6} {'oracle':>6} {'ms':>10}  status"
        lines = [RULE, header, "-" * 80]
        for row in self.rows:
            lines.append(
                f"{row.name:<24} {row.problem:<8} {row.n:>4} {row.m:>5} {row.k:>3} "
                f"{_yes(row.expected):>5} {_yes(row.solver):>6} {_yes(row.oracle):>6} "
                f"{row.wall_ms:>10.1f}  {'ok' if row.agrees else 'MISMATCH'}"
            )
        lines.append(RULE)
        lines.append(f"Agreement: {len(self.rows) - len(self.offenders)}/{len(self.rows)}")
        for key, value in self.totals.to_dict().items():
            lines.append(f"  {key.replace('_', ' ').title()}: {value}")
        lines.append(RULE)
        return "\n".join(lines)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def bench_instance(path: Path, config: SolverConfig) -> tuple[BenchRow, SolveStats]:
    """Solve, run the oracle and compare with the sidecar for one instance."""
    sidecar = read_sidecar(path)
    graph = read_graph(path)
    try:
        problem = Problem(sidecar.problem)
    except ValueError as e:
        raise InputError(f"sidecar of {path.name} names unknown problem {sidecar.problem!r}") from e
    instance = ProblemInstance(problem, graph, sidecar.k, sidecar.s)

    stats = SolveStats()
    started = time.perf_counter()
    found = solve_instance(instance, config, stats)
    stats.wall_ms = (time.perf_counter() - started) * 1000
    reference = run_oracle(instance, config)

    witness_ok = found is None or is_witness(instance, found)
    if not witness_ok:
        logger.error("%s: solver witness %s is invalid", path.name, sorted(found or ()))
    row = BenchRow(
        name=path.stem,
        problem=sidecar.problem,
        n=graph.num_vertices,
        m=graph.num_arcs,
        k=sidecar.k,
        s=sidecar.s,
        expected=sidecar.feasible,
        solver=found is not None,
        oracle=reference is not None,
        witness_ok=witness_ok,
        wall_ms=stats.wall_ms,
        stats=stats.to_dict(),
    )
    if row.agrees:
        logger.debug("%s: agree (%s)", path.name, _yes(row.solver))
    else:
        logger.error(
            "%s: expected=%s solver=%s oracle=%s",
            path.name,
            _yes(row.expected),
            _yes(row.solver),
            _yes(row.oracle),
        )
    return row, stats


def run_bench(corpus: Path, config: SolverConfig | None = None) -> BenchResult:
    """Bench every instance of ``corpus`` in file-name order."""
    config = config or SolverConfig()
    if not corpus.is_dir():
        raise InputError(f"corpus directory {corpus} does not exist")
    result = BenchResult()
    paths = sorted(corpus.glob("*.txt"))
    logger.info("Benchmarking %d instances from %s", len(paths), corpus)
    for path in paths:
        row, stats = bench_instance(path, config)
        result.rows.append(row)
        result.totals.merge(stats)
    return result
