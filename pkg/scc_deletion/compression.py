"""
Iterative compression

Shared driver for the vertex-deletion solvers. Vertices are added one at a
time in increasing id order; whenever the running solution grows past the
budget, the compression step either shrinks it back to size k or proves the
prefix graph (and therefore the whole graph) infeasible.

The compression step guesses the part T' of the old solution T that stays
deleted and hands the rest to a problem-specific "disjoint" solver, which
must return a solution of ``G - T'`` avoiding ``T - T'``.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from itertools import combinations

from .config import SolveStats
from .graph import MultiDigraph

logger = logging.getLogger(__name__)

# (graph, vertices to avoid, budget) -> solution or None
DisjointSolver = Callable[[MultiDigraph, frozenset[int], int], "frozenset[int] | None"]
# (graph, candidate deletion set) -> is it a solution
Validator = Callable[[MultiDigraph, frozenset[int]], bool]


def compress(
    g: MultiDigraph,
    t_set: frozenset[int],
    k: int,
    solve_disjoint: DisjointSolver,
    stats: SolveStats | None = None,
    is_solution: Validator | None = None,
) -> frozenset[int] | None:
    """Turn a solution ``t_set`` of size k+1 into one of size <= k, if possible.

    With ``is_solution`` given, ``t_set - {t}`` is tried first for every t.
    """
    stats = stats or SolveStats()
    ordered = sorted(t_set)
    if is_solution is not None:
        for t in ordered:
            if is_solution(g, t_set - {t}):
                logger.debug("Dropping %d from T already gives a solution", t)
                return t_set - {t}
    for size in range(min(k, len(ordered)) + 1):
        for kept in combinations(ordered, size):
            guess = frozenset(kept)
            stats.nodes += 1
            logger.debug("Compression guess T'=%s", sorted(guess))
            found = solve_disjoint(g.delete_vertices(guess), t_set - guess, k - size)
            if found is not None:
                return guess | found
    return None


def iterative_compression(
    g: MultiDigraph,
    k: int,
    is_solution: Validator,
    solve_disjoint: DisjointSolver,
    stats: SolveStats | None = None,
) -> frozenset[int] | None:
    """Solve ``(g, k)`` for a hereditary vertex-deletion property.

    Heredity under induced subgraphs is what makes an infeasible prefix
    certify infeasibility of the whole graph.
    """
    stats = stats or SolveStats()
    if is_solution(g, frozenset()):
        return frozenset()
    if k == 0:
        return None

    present: set[int] = set()
    solution: frozenset[int] = frozenset()
    for v in sorted(g.vertices):
        present.add(v)
        prefix = g.induced(present)
        if is_solution(prefix, solution):
            continue
        grown = solution | {v}
        if len(grown) <= k:
            solution = grown
            continue
        logger.debug("Compressing at vertex %d with |T|=%d", v, len(grown))
        compressed = compress(prefix, grown, k, solve_disjoint, stats, is_solution)
        if compressed is None:
            logger.debug("Prefix up to vertex %d has no solution of size %d", v, k)
            return None
        solution = compressed
    return solution
