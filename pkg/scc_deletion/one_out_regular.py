"""
1-Out-Regular Deletion

A graph is 1-out-regular when every strong component with more than one
vertex is an induced directed cycle. The vertex solver runs iterative
compression; each disjoint instance is explored by

1. guessing a set Z that covers the shadow of the solution,
2. building the torso on V - Z (arcs stand for paths through Z, marked good
   when the path is unique and meets no cycle of G[Z]),
3. recovering the last strong component (a T-vertex that is a sink, or a
   good cycle through one) and recursing on what is left.

The arc version goes through the directed line graph.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from enum import Enum

from .compression import iterative_compression
from .config import SolverConfig, SolveStats
from .errors import InputError
from .graph import Direction, Mode, MultiDigraph, cap_multiplicity, delete, reach_set, scc
from .problems import Problem, ProblemInstance, Transformation
from .separators import build_covering_family, shadow_capable

logger = logging.getLogger(__name__)


class ArcQuality(Enum):
    """Torso arc label"""

    GOOD = "good"
    BAD = "bad"


# =============================================================================
# Checkers
# =============================================================================


def _valid_components(g: MultiDigraph) -> bool:
    for component in scc(g).components:
        if len(component) > 1 and g.arc_count_within(component) != len(component):
            return False
    return True


def check_oor(g: MultiDigraph, solution: Iterable[int], mode: Mode = Mode.VERTEX) -> bool:
    """True iff every non-trivial strong component of ``g - solution`` is an induced cycle.

    A strong component on ``c >= 2`` vertices has at least ``c`` internal arcs,
    with equality exactly for an induced directed cycle. Singletons are
    accepted whatever self-loops they carry.
    """
    return _valid_components(delete(g, solution, mode))


def contains_forbidden(g: MultiDigraph, w: Iterable[int]) -> bool:
    """True iff ``g[w]`` has a strong subgraph that is not a trivial vertex or a simple cycle."""
    return not _valid_components(g.induced(w))


# =============================================================================
# Torso
# =============================================================================


@dataclass(frozen=True)
class TorsoGraph:
    """Graph on ``V - Z`` (same id space, Z masked) with one labeled arc per pair."""

    g_prime: MultiDigraph
    arc_quality: dict[int, ArcQuality]

    def quality(self, u: int, v: int) -> ArcQuality | None:
        for arc_id in self.g_prime.out_arcs(u):
            if self.g_prime.endpoints(arc_id)[1] == v:
                return self.arc_quality[arc_id]
        return None

    def has_bad_loop(self, v: int) -> bool:
        return self.quality(v, v) is ArcQuality.BAD


def _cyclic_vertices(gz: MultiDigraph) -> frozenset[int]:
    """Vertices of ``gz`` lying on some cycle, self-loops included."""
    on_cycle: set[int] = set()
    for component in scc(gz).components:
        if len(component) > 1:
            on_cycle |= component
    on_cycle.update(v for v in gz.vertices if v in gz.successors(v))
    return frozenset(on_cycle)


def _count_paths(
    g: MultiDigraph,
    gz: MultiDigraph,
    cyclic: frozenset[int],
    u: int,
    v: int,
    from_u: frozenset[int],
) -> int:
    """Number of u -> v paths with interior in Z, capped at 2.

    Parallel arcs count separately, except that several direct self-loops
    count as a single path.
    """
    into_v = [w for w in g.predecessors(v) if w in gz.vertices]
    to_v = reach_set(gz, into_v, Direction.BACKWARD) if into_v else frozenset()
    between = from_u & to_v
    if between & cyclic:
        return 2

    direct = g.multiplicity(u, v)
    if u == v:
        direct = min(direct, 1)

    ways: dict[int, int] = {}
    for (w,) in scc(gz.induced(between)).ordered():
        total = sum(1 for x in g.predecessors(w) if x == u)
        total += sum(ways[x] for x in g.predecessors(w) if x in ways)
        ways[w] = min(total, 2)
    total = direct + sum(ways[w] for w in g.predecessors(v) if w in ways)
    return min(total, 2)


def torso(g: MultiDigraph, z: Iterable[int]) -> TorsoGraph:
    """Torso of ``g`` with respect to ``z``.

    An arc (u, v) for every pair joined by a path whose interior lies in Z;
    good when that path is unique and its interior meets no cycle of G[Z],
    bad otherwise.
    """
    inside = frozenset(z) & g.vertices
    outside = g.vertices - inside
    gz = g.induced(inside)
    cyclic = _cyclic_vertices(gz)

    arcs: list[tuple[int, int]] = []
    labels: list[ArcQuality] = []
    for u in sorted(outside):
        entry = [w for w in g.successors(u) if w in inside]
        from_u = reach_set(gz, entry) if entry else frozenset()
        heads = {w for w in g.successors(u) if w in outside}
        heads.update(x for w in from_u for x in g.successors(w) if x in outside)
        for v in sorted(heads):
            count = _count_paths(g, gz, cyclic, u, v, from_u)
            if count == 0:
                continue
            arcs.append((u, v))
            labels.append(ArcQuality.GOOD if count == 1 else ArcQuality.BAD)

    g_prime = MultiDigraph(g.n, arcs).induced(outside)
    return TorsoGraph(g_prime, dict(enumerate(labels)))


def detect_fbad(tg: TorsoGraph, deleted: Iterable[int] = ()) -> bool:
    """True iff ``tg - deleted`` has a strong subgraph that is neither trivial nor a good cycle."""
    h = tg.g_prime.delete_vertices(frozenset(deleted) & tg.g_prime.vertices)
    for component in scc(h).components:
        inner = [a for u in component for a in h.out_arcs(u) if h.endpoints(a)[1] in component]
        if len(component) == 1:
            if any(tg.arc_quality[a] is ArcQuality.BAD for a in inner):
                return True
            continue
        if len(inner) != len(component):
            return True
        if any(tg.arc_quality[a] is ArcQuality.BAD for a in inner):
            return True
    return False


# =============================================================================
# Recovering the last component
# =============================================================================


def recover_last_component(
    tg: TorsoGraph,
    t_set: Iterable[int],
    forbidden: Iterable[int],
    k: int,
) -> Iterator[tuple[frozenset[int], frozenset[int]]]:
    """Branches ``(component, deletions)`` for a sink component through some t in T.

    The component is either ``{t}`` with every other out-neighbor of t
    deleted, or a cycle of good arcs starting and ending at t along which
    every out-neighbor except the next cycle vertex is deleted. Deletions
    never touch ``forbidden`` and never exceed ``k``.
    """
    if k < 0:
        return
    h = tg.g_prime
    blocked = frozenset(forbidden)
    seen: set[tuple[frozenset[int], frozenset[int]]] = set()

    def emit(component: frozenset[int], deletions: frozenset[int]):
        key = (component, deletions)
        if key not in seen:
            seen.add(key)
            yield key

    def walk(t: int, path: list[int], deleted: frozenset[int]):
        v = path[-1]
        outs = h.out_neighbors(v)
        for nxt in outs:
            if nxt == v or tg.quality(v, nxt) is not ArcQuality.GOOD:
                continue
            if nxt in deleted or (nxt != t and nxt in path):
                continue
            others = frozenset(outs) - {nxt}
            if others & blocked or others.intersection(path):
                continue
            grown = deleted | others
            if len(grown) > k:
                continue
            if nxt == t:
                yield from emit(frozenset(path), grown)
            else:
                yield from walk(t, path + [nxt], grown)

    for t in sorted(frozenset(t_set) & h.vertices):
        others = frozenset(h.out_neighbors(t)) - {t}
        if not tg.has_bad_loop(t) and not others & blocked and len(others) <= k:
            yield from emit(frozenset([t]), others)
        yield from walk(t, [t], frozenset())


# =============================================================================
# Vertex deletion
# =============================================================================


_Memo = set[tuple[frozenset[int], frozenset[int], int]]


def _drop_sink_terminals(
    g: MultiDigraph, t_set: frozenset[int]
) -> tuple[MultiDigraph, frozenset[int]]:
    """Remove T-vertices without out-arcs; they stay trivial components whatever is deleted."""
    while True:
        sinks = frozenset(t for t in t_set if not g.out_arcs(t))
        if not sinks:
            return g, t_set
        g, t_set = g.delete_vertices(sinks), t_set - sinks


def _solve_disjoint(
    g: MultiDigraph,
    t_set: frozenset[int],
    k: int,
    config: SolverConfig,
    stats: SolveStats,
    memo: _Memo,
) -> frozenset[int] | None:
    stats.nodes += 1
    if check_oor(g, ()):
        return frozenset()
    if k == 0:
        return None
    g, t_set = _drop_sink_terminals(g, t_set)
    if not t_set:
        return frozenset() if check_oor(g, ()) else None

    key = (g.vertices, t_set, k)
    if key in memo:
        return None

    capable = shadow_capable(g, t_set, k)
    family = build_covering_family(
        g,
        t_set,
        k,
        config.covering,
        seed=config.seed,
        retries=config.covering_retries,
        limit=config.covering_limit,
    )
    logger.debug("Covering family of %d sets for |V|=%d, |T|=%d", len(family), g.num_vertices, len(t_set))
    for z in family:
        if not z <= capable or contains_forbidden(g, z | t_set):
            continue
        stats.covering_sets += 1
        tg = torso(g, z)
        for component, deletions in recover_last_component(tg, t_set, t_set, k):
            stats.nodes += 1
            rest = g.delete_vertices(component | deletions)
            remaining = t_set - component
            budget = k - len(deletions)
            if remaining:
                found = _solve_disjoint(rest, remaining, budget, config, stats, memo)
            else:
                found = frozenset() if check_oor(rest, ()) else None
            if found is None:
                continue
            candidate = deletions | found
            if check_oor(g, candidate):
                return candidate
            logger.warning("Recovered deletion set %s fails the checker", sorted(candidate))
    memo.add(key)
    return None


def solve_oorvd(
    g: MultiDigraph,
    k: int,
    config: SolverConfig | None = None,
    stats: SolveStats | None = None,
) -> frozenset[int] | None:
    """At most ``k`` vertices whose deletion makes ``g`` 1-out-regular."""
    if k < 0:
        raise InputError(f"budget must be non-negative, got {k}")
    config = config or SolverConfig()
    stats = stats or SolveStats()
    memo: _Memo = set()

    def is_solution(h: MultiDigraph, removed: frozenset[int]) -> bool:
        return check_oor(h, removed)

    def solve_disjoint(h: MultiDigraph, t_set: frozenset[int], budget: int) -> frozenset[int] | None:
        return _solve_disjoint(h, t_set, budget, config, stats, memo)

    return iterative_compression(g, k, is_solution, solve_disjoint, stats)


# =============================================================================
# Arc deletion
# =============================================================================


def line_graph_transform(g: MultiDigraph, k: int) -> Transformation:
    """Directed line graph of ``g`` as a vertex instance with the same budget.

    Vertex ``i`` stands for the ``i``-th surviving arc. Arc a feeds arc b when
    head(a) = tail(b), except between two different self-loops at one vertex,
    which a single vertex carries without breaking 1-out-regularity.
    """
    if k < 0:
        raise InputError(f"budget must be non-negative, got {k}")
    alive = g.arcs()
    index = {arc_id: i for i, (arc_id, _, _) in enumerate(alive)}
    arcs: list[tuple[int, int]] = []
    for arc_id, u, v in alive:
        for following in g.out_arcs(v):
            if following != arc_id and u == v and g.endpoints(following) == (v, v):
                continue
            arcs.append((index[arc_id], index[following]))
    origin = {i: arc_id for arc_id, i in index.items()}
    instance = ProblemInstance(Problem.OORVD, MultiDigraph(len(alive), arcs), k)
    return Transformation(instance, origin)


def solve_oorad(
    g: MultiDigraph,
    k: int,
    config: SolverConfig | None = None,
    stats: SolveStats | None = None,
) -> frozenset[int] | None:
    """At most ``k`` arc ids whose deletion makes ``g`` 1-out-regular."""
    # k + 2 parallel copies survive any k deletions with a pair still doubled
    capped = cap_multiplicity(g, k + 1)
    transformed = line_graph_transform(capped, k)
    logger.debug("Line graph has %d vertices", transformed.instance.graph.num_vertices)
    found = solve_oorvd(transformed.instance.graph, k, config, stats)
    if found is None:
        return None
    return transformed.lift(found)
