"""
Vertex separators

Minimum X->Y vertex cuts on the vertex-split network, enumeration of
important separators, shadows, and the shadow-covering set families used by
the 1-out-regular solver.
"""

from __future__ import annotations

import logging
import math
import random
from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from itertools import combinations

from .config import CoveringMode, SolveStats
from .errors import BudgetError, InputError
from .graph import Direction, MultiDigraph, reach_set

logger = logging.getLogger(__name__)

_INF = math.inf


@dataclass(frozen=True)
class Separator:
    """A vertex set cutting every X->Y path, with the reach of X it leaves."""

    vertices: frozenset[int]
    reach_after: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.vertices)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.vertices), tuple(sorted(self.vertices)))


@dataclass
class CoveringFamily:
    """Candidate sets Z, each assumed to cover the shadow of a solution."""

    sets: list[frozenset[int]]
    mode: CoveringMode
    seed: int = 0
    retries: int = 0

    def __iter__(self) -> Iterator[frozenset[int]]:
        return iter(self.sets)

    def __len__(self) -> int:
        return len(self.sets)


# =============================================================================
# Unit-capacity flow on the vertex-split graph
# =============================================================================


class _SplitNetwork:
    """Residual network where vertex ``v`` becomes ``2v -> 2v+1``.

    The inner arc has capacity 1 for deletable vertices and infinity for
    terminals and undeletable vertices; every graph arc has infinite capacity.
    """

    def __init__(
        self,
        g: MultiDigraph,
        sources: frozenset[int],
        sinks: frozenset[int],
        undeletable: frozenset[int],
    ):
        self.source = 2 * g.n
        self.sink = 2 * g.n + 1
        self.residual: dict[int, dict[int, float]] = {self.source: {}, self.sink: {}}
        blocked = sources | sinks | undeletable
        for v in g.vertices:
            self._add(2 * v, 2 * v + 1, _INF if v in blocked else 1)
        for _, u, v in g.arcs():
            if u != v:
                self._add(2 * u + 1, 2 * v, _INF)
        for x in sources:
            self._add(self.source, 2 * x, _INF)
        for y in sinks:
            self._add(2 * y + 1, self.sink, _INF)

    def _add(self, u: int, w: int, capacity: float) -> None:
        self.residual.setdefault(u, {})
        self.residual.setdefault(w, {})
        self.residual[u][w] = self.residual[u].get(w, 0) + capacity
        self.residual[w].setdefault(u, 0)

    def _augmenting_path(self) -> dict[int, int] | None:
        parent = {self.source: self.source}
        queue = deque([self.source])
        while queue:
            u = queue.popleft()
            for w, capacity in self.residual[u].items():
                if capacity > 0 and w not in parent:
                    parent[w] = u
                    if w == self.sink:
                        return parent
                    queue.append(w)
        return None

    def max_flow(self, limit: float = _INF) -> float:
        """Augment until no path is left or the flow exceeds ``limit``.

        Returns infinity when some source-sink path has no finite arc.
        """
        flow = 0
        while flow <= limit:
            parent = self._augmenting_path()
            if parent is None:
                break
            bottleneck = _INF
            w = self.sink
            while w != self.source:
                u = parent[w]
                bottleneck = min(bottleneck, self.residual[u][w])
                w = u
            if bottleneck == _INF:
                return _INF
            w = self.sink
            while w != self.source:
                u = parent[w]
                self.residual[u][w] -= bottleneck
                self.residual[w][u] += bottleneck
                w = u
            flow += bottleneck
        return flow

    def sink_side(self) -> set[int]:
        """Nodes that can still reach the sink in the residual network."""
        seen = {self.sink}
        queue = deque([self.sink])
        while queue:
            w = queue.popleft()
            for u in self.residual[w]:
                if u not in seen and self.residual[u].get(w, 0) > 0:
                    seen.add(u)
                    queue.append(u)
        return seen


def _check_terminals(g: MultiDigraph, x: frozenset[int], y: frozenset[int]) -> None:
    unknown = (x | y) - g.vertices
    if unknown:
        raise InputError(f"unknown terminal vertices {sorted(unknown)}")
    overlap = x & y
    if overlap:
        raise InputError(f"source and sink sets overlap on {sorted(overlap)}")


def _furthest_min_cut(
    g: MultiDigraph,
    x: frozenset[int],
    y: frozenset[int],
    undeletable: frozenset[int],
    limit: float = _INF,
) -> tuple[int, frozenset[int], frozenset[int]] | None:
    """Minimum cut pushed as close to ``y`` as possible.

    Returns ``(size, cut, x_side)`` where ``x_side`` is everything ``x`` still
    reaches once the cut is deleted, or ``None`` when no finite cut exists.
    Once the flow exceeds ``limit`` the search stops and that partial size is
    returned with empty sets.
    """
    network = _SplitNetwork(g, x, y, undeletable)
    flow = network.max_flow(limit)
    if flow == _INF:
        return None
    if flow > limit:
        return int(flow), frozenset(), frozenset()
    behind = network.sink_side()
    cut = frozenset(v for v in g.vertices if 2 * v not in behind and 2 * v + 1 in behind)
    x_side = reach_set(g.delete_vertices(cut), x) if x else frozenset()
    return int(flow), cut, x_side


def min_vertex_cut(
    g: MultiDigraph,
    x: Iterable[int],
    y: Iterable[int],
    undeletable: Iterable[int] = (),
) -> tuple[int, Separator] | None:
    """Minimum X->Y vertex separator, or ``None`` when X->Y cannot be cut.

    Among the minimum separators the one furthest from ``x`` is returned.
    Vertices in ``undeletable`` are never part of the separator.
    """
    sources, sinks = frozenset(x), frozenset(y)
    _check_terminals(g, sources, sinks)
    result = _furthest_min_cut(g, sources, sinks, frozenset(undeletable))
    if result is None:
        return None
    size, cut, _ = result
    reach = reach_set(g.delete_vertices(cut), sources) if sources else frozenset()
    return size, Separator(cut, reach)


# =============================================================================
# Important separators
# =============================================================================


def _separates(g: MultiDigraph, x: frozenset[int], y: frozenset[int]) -> bool:
    return not (reach_set(g, x) & y)


def _is_minimal(g: MultiDigraph, x: frozenset[int], y: frozenset[int], cut: frozenset[int]) -> bool:
    return all(not _separates(g.delete_vertices(cut - {v}), x, y) for v in cut)


def enumerate_important_separators(
    g: MultiDigraph,
    x: Iterable[int],
    y: Iterable[int],
    p: int,
    undeletable: Iterable[int] = (),
    stats: SolveStats | None = None,
) -> list[Separator]:
    """All important X->Y separators of size at most ``p``.

    Candidates come from the classic branching: push X up to the furthest
    minimum cut, pick the smallest cut vertex ``v``, then either put ``v`` in
    the separator or absorb it into X. Every important separator is a leaf of
    that tree; the leaves are then filtered down to the minimal, undominated
    ones. Output is sorted by size, then by sorted vertex ids.
    """
    sources, sinks = frozenset(x), frozenset(y)
    _check_terminals(g, sources, sinks)
    blocked = frozenset(undeletable)
    if p < 0 or not sources or not sinks:
        return [Separator(frozenset(), reach_set(g, sources))] if p >= 0 else []

    candidates: set[frozenset[int]] = set()

    def branch(h: MultiDigraph, x_side: frozenset[int], committed: frozenset[int], budget: int):
        if stats is not None:
            stats.nodes += 1
        result = _furthest_min_cut(h, x_side, sinks, blocked, limit=budget)
        if result is None:
            return
        size, cut, pushed = result
        if size > budget:
            return
        if size == 0:
            candidates.add(committed)
            return
        v = min(cut)
        branch(h.delete_vertices([v]), pushed, committed | {v}, budget - 1)
        branch(h, pushed | {v}, committed, budget)

    branch(g, sources, frozenset(), p)

    scored: list[Separator] = []
    for cut in candidates:
        if not _is_minimal(g, sources, sinks, cut):
            continue
        scored.append(Separator(cut, reach_set(g.delete_vertices(cut), sources)))

    important = [
        sep
        for sep in scored
        if not any(
            other.size <= sep.size and sep.reach_after < other.reach_after for other in scored
        )
    ]
    important.sort(key=Separator.sort_key)
    if stats is not None:
        stats.important_separators += len(important)
    return important


# =============================================================================
# Shadows and covering families
# =============================================================================


def shadow(
    g: MultiDigraph, t_set: Iterable[int], s_set: Iterable[int]
) -> tuple[frozenset[int], frozenset[int]]:
    """Forward and reverse shadow of ``s_set`` with respect to ``t_set``.

    Forward: vertices outside S and T that T cannot reach in ``g - S``.
    Reverse: vertices outside S and T that cannot reach T in ``g - S``.
    """
    terminals = frozenset(t_set) & g.vertices
    removed = frozenset(s_set)
    h = g.delete_vertices(removed & g.vertices)
    rest = h.vertices - terminals
    forward = rest - reach_set(h, terminals - removed, Direction.FORWARD)
    reverse = rest - reach_set(h, terminals - removed, Direction.BACKWARD)
    return forward, reverse


def shadow_capable(g: MultiDigraph, t_set: Iterable[int], k: int) -> frozenset[int]:
    """Vertices that can lie in the shadow of some deletion set of size <= ``k``.

    ``v`` qualifies when T->v or v->T can be cut with at most ``k`` vertices
    outside T.
    """
    terminals = frozenset(t_set) & g.vertices
    universe = g.vertices - terminals
    if not terminals:
        return universe
    capable = set()
    for v in sorted(universe):
        for x, y in ((terminals, frozenset([v])), (frozenset([v]), terminals)):
            result = _furthest_min_cut(g, x, y, frozenset(), limit=k)
            if result is not None and result[0] <= k:
                capable.add(v)
                break
    return frozenset(capable)


def _sampled_cover(
    g: MultiDigraph, terminals: frozenset[int], k: int, rng: random.Random
) -> frozenset[int]:
    """One draw of the random sampling of important separators.

    Each important v->T (and T->v) separator of size <= k is kept with
    probability ``4 ** -size``; the vertices it cuts off from T are added to Z.
    """
    cover: set[int] = set()
    universe = sorted(g.vertices - terminals)
    flipped = g.reversed()
    for v in universe:
        for graph in (g, flipped):
            for sep in enumerate_important_separators(graph, [v], terminals, k):
                if rng.random() < 4.0 ** -sep.size:
                    cut_off = reach_set(graph.delete_vertices(sep.vertices), [v])
                    cover |= cut_off - terminals
    return frozenset(cover)


def build_covering_family(
    g: MultiDigraph,
    t_set: Iterable[int],
    k: int,
    mode: CoveringMode = CoveringMode.EXHAUSTIVE,
    seed: int = 0,
    retries: int = 8,
    limit: int = 16,
) -> CoveringFamily:
    """Sets Z_1..Z_t with Z_i disjoint from T, one of which covers a solution's shadow.

    exhaustive: every subset of V - T, by size then lexicographically
    (complete; raises ``BudgetError`` above ``limit`` free vertices).
    randomized: the empty set plus ``retries`` sampled covers (one-sided error).
    none: just the empty set.
    """
    terminals = frozenset(t_set) & g.vertices
    universe = sorted(g.vertices - terminals)

    if mode is CoveringMode.NONE:
        return CoveringFamily([frozenset()], mode)

    if mode is CoveringMode.EXHAUSTIVE:
        if len(universe) > limit:
            raise BudgetError(
                f"exhaustive covering over {len(universe)} free vertices exceeds the limit of {limit}",
                limit=limit,
            )
        sets = [
            frozenset(chosen)
            for size in range(len(universe) + 1)
            for chosen in combinations(universe, size)
        ]
        return CoveringFamily(sets, mode)

    rng = random.Random(seed)
    sets: list[frozenset[int]] = [frozenset()]
    for _ in range(max(retries, 0)):
        cover = _sampled_cover(g, terminals, k, rng) if terminals else frozenset(universe)
        if cover not in sets:
            sets.append(cover)
    logger.debug("Randomized covering produced %d distinct sets", len(sets))
    return CoveringFamily(sets, mode, seed=seed, retries=retries)


__all__ = [
    "CoveringFamily",
    "Separator",
    "build_covering_family",
    "enumerate_important_separators",
    "min_vertex_cut",
    "shadow",
    "shadow_capable",
]
