"""
Solve reports

A report is only built for a witness that passes the problem checker; an
invalid witness reaching this point is a solver bug and raises.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .config import SolverConfig, SolveStats
from .errors import SccDeletionError
from .graph import Mode
from .instance_io import arc_triples
from .oracle import check_solution
from .problems import ProblemInstance

RULE = "=" * 80


@dataclass
class SolveReport:
    """Outcome of one solve, oracle or verify run"""

    problem: str
    n: int
    m: int
    k: int
    s: int | None
    mode: str
    feasible: bool
    solution: list[Any] | None
    stats: dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    config: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "problem": self.problem,
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "s": self.s,
            "mode": self.mode,
            "feasible": self.feasible,
            "solution": self.solution,
            "stats": self.stats,
            "seed": self.seed,
            "config": self.config,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_table(self) -> str:
        lines = [
            RULE,
            f"Problem: {self.problem} ({self.mode} deletion)",
            RULE,
            f"  Vertices: {self.n}",
            f"  Arcs: {self.m}",
            f"  Budget k: {self.k}",
        ]
        if self.s is not None:
            lines.append(f"  Size bound s: {self.s}")
        if self.feasible:
            assert self.solution is not None
            rendered = ", ".join(
                " ".join(map(str, item)) if isinstance(item, (list, tuple)) else str(item)
                for item in self.solution
            )
            lines.append(f"  Result: feasible, |solution| = {len(self.solution)}")
            lines.append(f"  Solution: {rendered or '(empty)'}")
        else:
            lines.append("  Result: infeasible")
        lines.append(RULE)
        lines.append("Statistics")
        lines.append(RULE)
        for key, value in self.stats.items():
            lines.append(f"  {key.replace('_', ' ').title()}: {value}")
        lines.append(RULE)
        return "\n".join(lines)


def build_report(
    tag: str,
    instance: ProblemInstance,
    solution: frozenset[int] | None,
    stats: SolveStats,
    config: SolverConfig,
) -> SolveReport:
    """Report for ``instance``; ``tag`` is the problem name as requested."""
    if solution is not None and not check_solution(instance, solution):
        raise SccDeletionError(
            f"refusing to report {sorted(solution)}: it fails the {instance.problem.value} checker"
        )
    g = instance.graph
    rendered: list[Any] | None = None
    if solution is not None:
        if instance.mode is Mode.VERTEX:
            rendered = [v + 1 for v in sorted(solution)]
        else:
            rendered = [list(triple) for triple in arc_triples(g, solution)]
    return SolveReport(
        problem=tag,
        n=g.num_vertices,
        m=g.num_arcs,
        k=instance.k,
        s=instance.s,
        mode=instance.mode.value,
        feasible=solution is not None,
        solution=rendered,
        stats=stats.to_dict(),
        seed=config.seed,
        config=config.to_dict(),
    )
