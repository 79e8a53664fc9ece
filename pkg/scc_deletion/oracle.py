"""
Reference oracles and instance generators

Brute-force solvers that enumerate deletion sets by size, the shared solution
checker, and seeded random / planted instance generators. Everything here is
deterministic in its arguments so that failures reproduce from a seed.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .bounded_scc import check_bssc
from .config import DEFAULT_ORACLE_LIMIT
from .errors import BudgetError, InputError, SccDeletionError
from .graph import Mode, MultiDigraph, cap_multiplicity, delete, reach_set, scc
from .one_out_regular import check_oor
from .problems import Problem, ProblemInstance
from .separators import Separator

logger = logging.getLogger(__name__)


def check_solution(instance: ProblemInstance, solution: Iterable[int]) -> bool:
    """Run the instance's checker on a vertex set or arc-id set (budget not enforced)."""
    if instance.problem.bounded_size:
        return check_bssc(instance.graph, instance.size_bound, solution, instance.mode)
    return check_oor(instance.graph, solution, instance.mode)


def _subsets(universe: list[int], k: int) -> Iterator[tuple[int, ...]]:
    for size in range(min(k, len(universe)) + 1):
        yield from combinations(universe, size)


def brute_force(
    instance: ProblemInstance, limit: int = DEFAULT_ORACLE_LIMIT
) -> frozenset[int] | None:
    """Smallest deletion set of size <= k, first in (size, sorted ids) order.

    Arc problems enumerate arc ids of the graph with parallel arcs capped at
    k + 1; any deleted copy can be swapped for a lower-id one, so nothing is
    lost. Raises ``BudgetError`` when more than ``limit`` sets would be tried.
    """
    g = instance.graph
    if instance.mode is Mode.VERTEX:
        universe = sorted(g.vertices)
    else:
        universe = cap_multiplicity(g, instance.k).arc_ids()

    total = sum(comb(len(universe), size) for size in range(min(instance.k, len(universe)) + 1))
    if total > limit:
        raise BudgetError(
            f"brute force would try {total} deletion sets, limit is {limit}", limit=limit
        )
    logger.debug("Brute force over %d items, %d sets", len(universe), total)

    for chosen in _subsets(universe, instance.k):
        if check_solution(instance, chosen):
            return frozenset(chosen)
    return None


def brute_force_important_separators(
    g: MultiDigraph,
    x: Iterable[int],
    y: Iterable[int],
    p: int,
    undeletable: Iterable[int] = (),
) -> list[Separator]:
    """Important X->Y separators of size <= ``p`` by exhaustive enumeration."""
    sources, sinks = frozenset(x), frozenset(y)
    if sources & sinks:
        raise InputError(f"X and Y overlap in {sorted(sources & sinks)}")
    free = sorted(g.vertices - sources - sinks - frozenset(undeletable))

    def separates(cut: frozenset[int]) -> bool:
        h = g.delete_vertices(cut)
        return not (sources and reach_set(h, sources) & sinks)

    separators = [frozenset(c) for c in _subsets(free, p) if separates(frozenset(c))]
    minimal = [
        cut for cut in separators if all(not separates(cut - {v}) for v in cut)
    ]
    reach = {
        cut: reach_set(g.delete_vertices(cut), sources) if sources else frozenset()
        for cut in minimal
    }
    important = [
        Separator(cut, reach[cut])
        for cut in minimal
        if not any(len(other) <= len(cut) and reach[cut] < reach[other] for other in minimal)
    ]
    important.sort(key=Separator.sort_key)
    return important


# =============================================================================
# Generators
# =============================================================================


def _as_problem(problem: Problem | str) -> Problem:
    try:
        return problem if isinstance(problem, Problem) else Problem(problem)
    except ValueError as e:
        raise InputError(f"unknown problem tag {problem!r}") from e


def random_instance(
    n: int,
    m: int,
    seed: int,
    problem: Problem | str,
    k: int,
    s: int | None = None,
) -> ProblemInstance:
    """``m`` arcs drawn with replacement over all ordered pairs of ``n`` vertices."""
    if n < 1 or m < 0:
        raise InputError(f"need n >= 1 and m >= 0, got n={n}, m={m}")
    rng = random.Random(seed)
    arcs = [(rng.randrange(n), rng.randrange(n)) for _ in range(m)]
    return ProblemInstance(_as_problem(problem), MultiDigraph(n, arcs), k, s)


@dataclass(frozen=True)
class PlantedInstance:
    """An instance together with a deletion set known to solve it.

    ``components`` lists the non-trivial strong components left after
    deleting ``planted``.
    """

    instance: ProblemInstance
    planted: frozenset[int]
    components: tuple[frozenset[int], ...]


def _valid_blocks(
    vertices: list[int], rng: random.Random, bounded: bool, s: int
) -> tuple[list[list[int]], list[tuple[int, int]]]:
    """Partition into blocks and make each block strong and valid on its own."""
    blocks: list[list[int]] = []
    rest = list(vertices)
    rng.shuffle(rest)
    top = s if bounded else max(len(rest), 1)
    while rest:
        size = rng.randint(1, min(top, len(rest)))
        blocks.append(rest[:size])
        rest = rest[size:]

    arcs: list[tuple[int, int]] = []
    for block in blocks:
        if len(block) == 1:
            continue
        arcs.extend(zip(block, block[1:] + block[:1]))
        if bounded:
            for _ in range(rng.randint(0, len(block))):
                arcs.append((rng.choice(block), rng.choice(block)))
    return blocks, arcs


def _forward_arcs(
    blocks: list[list[int]], rng: random.Random, count: int
) -> list[tuple[int, int]]:
    """Random arcs that only go from an earlier block to a later one."""
    if len(blocks) < 2:
        return []
    arcs = []
    for _ in range(count):
        first, second = sorted(rng.sample(range(len(blocks)), 2))
        arcs.append((rng.choice(blocks[first]), rng.choice(blocks[second])))
    return arcs


def planted_instance(
    n: int,
    k: int,
    s: int | None,
    seed: int,
    problem: Problem | str,
) -> PlantedInstance:
    """Instance on ``n`` vertices that a planted set of ``k`` items solves.

    Vertex problems: the remaining ``n - k`` vertices form a DAG of valid
    blocks (strong blocks of size <= s, or induced cycles), and the ``k``
    planted vertices get arbitrary arcs to and from everything. Arc problems:
    all ``n`` vertices form the valid part and ``k`` arbitrary extra arcs are
    planted among its arcs.
    """
    tag = _as_problem(problem)
    if k < 0 or n <= k:
        raise InputError(f"need 0 <= k < n, got n={n}, k={k}")
    bound = tag.fixed_s or s
    bounded = tag.bounded_size
    if bounded and (bound is None or bound < 1):
        raise InputError(f"{tag.value} needs a size bound s >= 1")
    rng = random.Random(seed)

    order = list(range(n))
    rng.shuffle(order)
    if tag.mode is Mode.VERTEX:
        planted_vertices, kept = sorted(order[:k]), order[k:]
    else:
        planted_vertices, kept = [], order

    blocks, arcs = _valid_blocks(kept, rng, bounded, bound or 1)
    arcs += _forward_arcs(blocks, rng, rng.randint(0, 2 * len(blocks)))

    extra: list[tuple[int, int]] = []
    for r in planted_vertices:
        for _ in range(rng.randint(1, 3)):
            other = rng.randrange(n)
            extra.append((r, other) if rng.random() < 0.5 else (other, r))
    if tag.mode is Mode.ARC:
        extra = [(rng.randrange(n), rng.randrange(n)) for _ in range(k)]

    tagged = [(arc, False) for arc in arcs] + [(arc, True) for arc in extra]
    rng.shuffle(tagged)
    graph = MultiDigraph(n, (arc for arc, _ in tagged))
    if tag.mode is Mode.VERTEX:
        planted = frozenset(planted_vertices)
    else:
        planted = frozenset(i for i, (_, is_extra) in enumerate(tagged) if is_extra)

    instance = ProblemInstance(tag, graph, k, None if tag.fixed_s else s)
    if not check_solution(instance, planted):
        raise SccDeletionError(f"planted set {sorted(planted)} does not solve seed {seed}")
    remaining = delete(graph, planted, tag.mode)
    return PlantedInstance(instance, planted, tuple(scc(remaining).nontrivial()))
