"""
Multi-digraph core

Dense integer vertex ids, stable arc ids, and id-preserving deletion through
masked views. Every solver in the package works on these views: a child in a
search tree is a new view over the same immutable adjacency lists, so
branching never copies the graph.

Also hosts the strong-component machinery (iterative Tarjan with smallest-id
tie-breaking), reachability, and parallel-arc capping.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

from .errors import InputError

if TYPE_CHECKING:
    import networkx as nx

logger = logging.getLogger(__name__)


class Direction(Enum):
    """Traversal direction for reachability queries"""

    FORWARD = "forward"
    BACKWARD = "backward"


class Mode(Enum):
    """What a deletion set contains"""

    VERTEX = "vertex"
    ARC = "arc"


# =============================================================================
# Graph
# =============================================================================


class MultiDigraph:
    """Directed multigraph with parallel arcs and self-loops.

    Vertices are ``0..n-1``; arc ``i`` is the ``i``-th ``(tail, head)`` pair
    passed to the constructor. Deleting vertices or arcs returns a view that
    shares the adjacency lists and keeps every surviving id unchanged.
    """

    __slots__ = ("_n", "_arcs", "_out", "_in", "_vertices", "_dead_arcs")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        arc_list = tuple((int(u), int(v)) for u, v in arcs)
        out: list[list[int]] = [[] for _ in range(n)]
        into: list[list[int]] = [[] for _ in range(n)]
        for arc_id, (u, v) in enumerate(arc_list):
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"arc {arc_id} ({u}, {v}) has an endpoint outside 0..{n - 1}")
            out[u].append(arc_id)
            into[v].append(arc_id)
        self._n = n
        self._arcs = arc_list
        self._out = tuple(tuple(ids) for ids in out)
        self._in = tuple(tuple(ids) for ids in into)
        self._vertices: frozenset[int] = frozenset(range(n))
        self._dead_arcs: frozenset[int] = frozenset()

    def _view(self, vertices: frozenset[int], dead_arcs: frozenset[int]) -> MultiDigraph:
        view = object.__new__(MultiDigraph)
        view._n = self._n
        view._arcs = self._arcs
        view._out = self._out
        view._in = self._in
        view._vertices = vertices
        view._dead_arcs = dead_arcs
        return view

    # -------------------------------------------------------------------------
    # Read-only queries
    # -------------------------------------------------------------------------

    @property
    def n(self) -> int:
        """Size of the vertex id space (deleted vertices included)."""
        return self._n

    @property
    def vertices(self) -> frozenset[int]:
        """Surviving vertex ids."""
        return self._vertices

    @property
    def num_vertices(self) -> int:
        """Number of surviving vertices."""
        return len(self._vertices)

    @property
    def num_arcs(self) -> int:
        """Number of surviving arcs."""
        return sum(1 for _ in self._alive_arcs())

    @property
    def num_arc_ids(self) -> int:
        """Size of the arc id space (deleted arcs included)."""
        return len(self._arcs)

    def has_vertex(self, v: int) -> bool:
        """True if ``v`` survives in this view."""
        return v in self._vertices

    def has_arc(self, arc_id: int) -> bool:
        """True if the arc and both its endpoints survive."""
        if not 0 <= arc_id < len(self._arcs) or arc_id in self._dead_arcs:
            return False
        u, v = self._arcs[arc_id]
        return u in self._vertices and v in self._vertices

    def endpoints(self, arc_id: int) -> tuple[int, int]:
        """Tail and head of an arc id of the underlying graph."""
        if not 0 <= arc_id < len(self._arcs):
            raise InputError(f"arc id {arc_id} does not exist")
        return self._arcs[arc_id]

    def _alive_arcs(self) -> Iterator[int]:
        for arc_id, (u, v) in enumerate(self._arcs):
            if arc_id in self._dead_arcs:
                continue
            if u in self._vertices and v in self._vertices:
                yield arc_id

    def arc_ids(self) -> list[int]:
        """Surviving arc ids, ascending."""
        return list(self._alive_arcs())

    def arcs(self) -> list[tuple[int, int, int]]:
        """Surviving arcs as ``(arc_id, tail, head)`` in arc-id order."""
        return [(a, *self._arcs[a]) for a in self._alive_arcs()]

    def out_arcs(self, v: int) -> list[int]:
        """Surviving arc ids leaving ``v``, in arc-id order."""
        alive = self._vertices
        dead = self._dead_arcs
        return [a for a in self._out[v] if a not in dead and self._arcs[a][1] in alive]

    def in_arcs(self, v: int) -> list[int]:
        """Surviving arc ids entering ``v``, in arc-id order."""
        alive = self._vertices
        dead = self._dead_arcs
        return [a for a in self._in[v] if a not in dead and self._arcs[a][0] in alive]

    def successors(self, v: int) -> list[int]:
        """Heads of surviving out-arcs of ``v``, with multiplicity, in arc-id order."""
        return [self._arcs[a][1] for a in self.out_arcs(v)]

    def predecessors(self, v: int) -> list[int]:
        """Tails of surviving in-arcs of ``v``, with multiplicity."""
        return [self._arcs[a][0] for a in self.in_arcs(v)]

    def out_neighbors(self, v: int) -> list[int]:
        """Distinct heads of ``v``'s out-arcs, sorted."""
        return sorted(set(self.successors(v)))

    def in_neighbors(self, v: int) -> list[int]:
        """Distinct tails of ``v``'s in-arcs, sorted."""
        return sorted(set(self.predecessors(v)))

    def multiplicity(self, u: int, v: int) -> int:
        """Number of surviving ``u -> v`` arcs."""
        return sum(1 for w in self.successors(u) if w == v)

    def arc_count_within(self, vertex_set: Iterable[int]) -> int:
        """Number of surviving arcs with both endpoints in ``vertex_set``."""
        inside = frozenset(vertex_set)
        return sum(1 for u in inside for w in self.successors(u) if w in inside)

    # -------------------------------------------------------------------------
    # Surgery
    # -------------------------------------------------------------------------

    def delete_vertices(self, victims: Iterable[int]) -> MultiDigraph:
        """View without ``victims`` and their incident arcs."""
        doomed = frozenset(victims)
        if not doomed:
            return self
        unknown = doomed - self._vertices
        if unknown:
            raise InputError(f"cannot delete unknown vertices {sorted(unknown)}")
        return self._view(self._vertices - doomed, self._dead_arcs)

    def delete_arcs(self, victims: Iterable[int]) -> MultiDigraph:
        """View without the given arc ids."""
        doomed = frozenset(victims)
        if not doomed:
            return self
        unknown = sorted(a for a in doomed if not self.has_arc(a))
        if unknown:
            raise InputError(f"cannot delete unknown arcs {unknown}")
        return self._view(self._vertices, self._dead_arcs | doomed)

    def induced(self, keep: Iterable[int]) -> MultiDigraph:
        """Subgraph induced by ``keep`` (ids outside the graph are ignored)."""
        kept = frozenset(keep) & self._vertices
        if kept == self._vertices:
            return self
        return self._view(kept, self._dead_arcs)

    def reversed(self) -> MultiDigraph:
        """Same vertices and arc ids with every arc flipped."""
        flipped = MultiDigraph(self._n, ((v, u) for u, v in self._arcs))
        return flipped._view(self._vertices, self._dead_arcs)

    def to_networkx(self) -> nx.MultiDiGraph:
        """Export as a networkx multigraph keyed by arc id."""
        import networkx as nx  # optional extra

        graph = nx.MultiDiGraph()
        graph.add_nodes_from(sorted(self._vertices))
        for arc_id, u, v in self.arcs():
            graph.add_edge(u, v, key=arc_id)
        return graph

    def __repr__(self) -> str:
        return f"MultiDigraph(vertices={self.num_vertices}, arcs={self.num_arcs})"


# =============================================================================
# Strong components
# =============================================================================


@dataclass(frozen=True)
class SccDecomposition:
    """Strong components plus a topological order of them.

    ``components`` are listed in the order Tarjan closes them (sinks first);
    ``topo_order`` lists component indices so that every arc between two
    components goes from an earlier entry to a later one.
    """

    components: tuple[frozenset[int], ...]
    topo_order: tuple[int, ...]
    component_of: dict[int, int]

    def __len__(self) -> int:
        return len(self.components)

    def ordered(self) -> list[frozenset[int]]:
        """Components in topological order."""
        return [self.components[i] for i in self.topo_order]

    def nontrivial(self) -> list[frozenset[int]]:
        """Components with more than one vertex, in topological order."""
        return [c for c in self.ordered() if len(c) > 1]


def scc(g: MultiDigraph) -> SccDecomposition:
    """Tarjan's algorithm without recursion.

    Roots are tried in increasing id order and successors in arc-id order, so
    the output is a deterministic function of the graph.
    """
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    components: list[frozenset[int]] = []
    counter = 0

    for root in sorted(g.vertices):
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work: list[tuple[int, Iterator[int]]] = [(root, iter(g.successors(root)))]

        while work:
            v, successors = work[-1]
            descended = False
            for w in successors:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(g.successors(w))))
                    descended = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if descended:
                continue

            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                members = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    members.add(w)
                    if w == v:
                        break
                components.append(frozenset(members))

    component_of = {v: i for i, members in enumerate(components) for v in members}
    topo_order = tuple(range(len(components) - 1, -1, -1))
    return SccDecomposition(tuple(components), topo_order, component_of)


def reach_set(
    g: MultiDigraph, x: Iterable[int], direction: Direction = Direction.FORWARD
) -> frozenset[int]:
    """Vertices reachable from ``x`` (forward) or reaching ``x`` (backward), ``x`` included."""
    start = frozenset(x)
    unknown = start - g.vertices
    if unknown:
        raise InputError(f"reach_set: unknown vertices {sorted(unknown)}")
    step = g.successors if direction is Direction.FORWARD else g.predecessors
    seen = set(start)
    queue = deque(sorted(start))
    while queue:
        v = queue.popleft()
        for w in step(v):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def delete(g: MultiDigraph, victims: Iterable[int], mode: Mode = Mode.VERTEX) -> MultiDigraph:
    """``G - X`` for a vertex set or an arc-id set; surviving ids are unchanged."""
    if mode is Mode.VERTEX:
        return g.delete_vertices(victims)
    return g.delete_arcs(victims)


def cap_multiplicity(g: MultiDigraph, k: int) -> MultiDigraph:
    """Keep at most ``k + 1`` parallel arcs per ordered pair (lowest ids survive)."""
    if k < 0:
        raise InputError(f"budget must be non-negative, got {k}")
    seen: dict[tuple[int, int], int] = {}
    extra: list[int] = []
    for arc_id, u, v in g.arcs():
        count = seen.get((u, v), 0)
        if count > k:
            extra.append(arc_id)
        else:
            seen[(u, v)] = count + 1
    if extra:
        logger.debug("Capped %d parallel arcs at multiplicity %d", len(extra), k + 1)
    return g.delete_arcs(extra)


def is_strong(g: MultiDigraph) -> bool:
    """True for a non-empty graph with a single strong component."""
    if not g.vertices:
        return False
    first = min(g.vertices)
    return (
        reach_set(g, [first], Direction.FORWARD) == g.vertices
        and reach_set(g, [first], Direction.BACKWARD) == g.vertices
    )
