"""Problem dispatch shared by the command line and the bench harness."""

from __future__ import annotations

import logging
from collections.abc import Callable

from .bounded_scc import solve_bsscad, solve_bsscvd, transform_vertex_to_arc
from .config import SolverConfig, SolveStats
from .errors import InputError
from .one_out_regular import solve_oorad, solve_oorvd
from .oracle import brute_force, check_solution
from .problems import Problem, ProblemInstance

logger = logging.getLogger(__name__)

Solver = Callable[[ProblemInstance, SolverConfig, SolveStats], "frozenset[int] | None"]


def _bsscvd(instance: ProblemInstance, config: SolverConfig, stats: SolveStats):
    return solve_bsscvd(instance.graph, instance.k, instance.size_bound, config, stats)


def _bsscad(instance: ProblemInstance, config: SolverConfig, stats: SolveStats):
    return solve_bsscad(instance.graph, instance.k, instance.size_bound, config, stats)


def _oorvd(instance: ProblemInstance, config: SolverConfig, stats: SolveStats):
    return solve_oorvd(instance.graph, instance.k, config, stats)


def _oorad(instance: ProblemInstance, config: SolverConfig, stats: SolveStats):
    return solve_oorad(instance.graph, instance.k, config, stats)


SOLVERS: dict[Problem, Solver] = {
    Problem.BSSCVD: _bsscvd,
    Problem.BSSCAD: _bsscad,
    Problem.OORVD: _oorvd,
    Problem.OORAD: _oorad,
}


def _via_arc(instance: ProblemInstance, config: SolverConfig, stats: SolveStats):
    transformed = transform_vertex_to_arc(instance.graph, instance.k, instance.size_bound)
    target = transformed.instance
    logger.debug("Solving through the arc version: %r, s'=%d", target.graph, target.size_bound)
    found = solve_bsscad(target.graph, target.k, target.size_bound, config, stats)
    if found is None:
        return None
    return transformed.lift(found)


def solve_instance(
    instance: ProblemInstance,
    config: SolverConfig | None = None,
    stats: SolveStats | None = None,
    via_arc: bool = False,
) -> frozenset[int] | None:
    """Run the exact solver for the instance's problem."""
    config = config or SolverConfig()
    stats = stats or SolveStats()
    if via_arc:
        if instance.problem is not Problem.BSSCVD:
            raise InputError("--via-arc only applies to bsscvd and dfvs")
        return _via_arc(instance, config, stats)
    return SOLVERS[instance.problem](instance, config, stats)


def with_budget(instance: ProblemInstance, k: int) -> ProblemInstance:
    return ProblemInstance(instance.problem, instance.graph, k, instance.s)


def solve_minimum(
    instance: ProblemInstance,
    config: SolverConfig | None = None,
    stats: SolveStats | None = None,
    via_arc: bool = False,
) -> tuple[int, frozenset[int]] | None:
    """Smallest budget k* <= k the solver succeeds at, with its witness."""
    stats = stats or SolveStats()
    for budget in range(instance.k + 1):
        found = solve_instance(with_budget(instance, budget), config, stats, via_arc)
        if found is not None:
            return budget, found
    return None


def run_oracle(
    instance: ProblemInstance, config: SolverConfig | None = None
) -> frozenset[int] | None:
    config = config or SolverConfig()
    return brute_force(instance, config.oracle_limit)


def is_witness(instance: ProblemInstance, solution: frozenset[int]) -> bool:
    """Valid for the checker and within budget."""
    return len(solution) <= instance.k and check_solution(instance, solution)
