"""
Bounded Size Strong Component Deletion

Vertex version: iterative compression, then for every guess of the kept part
of the old solution T, candidate vectors describing the strong components of
the T-vertices, and one skew separator instance per ordering of the
representative components.

Arc version: cap parallel arcs, replace vertices by cliques and subdivide
arcs, and solve the resulting vertex instance. The reverse (vertex to arc)
transformation is provided as well.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import permutations

from .compression import iterative_compression
from .config import SolverConfig, SolveStats
from .errors import InputError
from .graph import Mode, MultiDigraph, cap_multiplicity, delete, is_strong, scc
from .problems import Problem, ProblemInstance, Transformation
from .skew import SkewSystem, solve_skew

logger = logging.getLogger(__name__)


def check_bssc(
    g: MultiDigraph, s: int, solution: Iterable[int], mode: Mode = Mode.VERTEX
) -> bool:
    """True iff every strong component of ``g - solution`` has at most ``s`` vertices."""
    remaining = delete(g, solution, mode)
    return all(len(component) <= s for component in scc(remaining).components)


def _largest_component(g: MultiDigraph) -> int:
    return max((len(c) for c in scc(g).components), default=0)


# =============================================================================
# Candidate vectors
# =============================================================================


@dataclass(frozen=True)
class CandidateVector:
    """One guessed strong component ``sets[h]`` per labeled T-vertex ``t_list[h]``."""

    t_list: tuple[int, ...]
    sets: tuple[frozenset[int], ...]

    def is_valid(self, g: MultiDigraph, s: int) -> bool:
        for t, members in zip(self.t_list, self.sets):
            if t not in members or len(members) > s:
                return False
            if not is_strong(g.induced(members)):
                return False
        for i, first in enumerate(self.sets):
            for second in self.sets[i + 1 :]:
                if first & second and first != second:
                    return False
        return True

    def representatives(self) -> dict[int, frozenset[int]]:
        """Smallest-labeled T-vertex of each distinct set, mapped to that set."""
        chosen: dict[int, frozenset[int]] = {}
        claimed: set[frozenset[int]] = set()
        for t, members in zip(self.t_list, self.sets):
            if members not in claimed:
                claimed.add(members)
                chosen[t] = members
        return chosen


def _qualifying_path(h: MultiDigraph, members: frozenset[int], room: int) -> list[int] | None:
    """Interior of a shortest path leaving ``members`` and coming back.

    Only paths with between 1 and ``room`` interior vertices qualify. Ties are
    broken towards small vertex ids.
    """
    parent: dict[int, int | None] = {}
    frontier: list[int] = []
    for a in sorted(members):
        for w in h.out_neighbors(a):
            if w not in members and w not in parent:
                parent[w] = None
                frontier.append(w)
    frontier.sort()
    depth = 1
    while frontier and depth <= room:
        for w in frontier:
            if any(x in members for x in h.successors(w)):
                path = [w]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])  # type: ignore[arg-type]
                path.reverse()
                return path
        following: list[int] = []
        for w in frontier:
            for x in h.out_neighbors(w):
                if x not in members and x not in parent:
                    parent[x] = w
                    following.append(x)
        frontier = sorted(following)
        depth += 1
    return None


def construct_candidate_vectors(
    g: MultiDigraph,
    t_list: Sequence[int],
    k: int,
    s: int,
    stats: SolveStats | None = None,
) -> list[CandidateVector]:
    """Every vector (C_1..C_{|T|}) that a solution disjoint from T can induce.

    Joint branching over all T-vertices with one shared deletion budget: find
    the first C_h with a qualifying closed path P, then either delete one
    interior vertex of P (not in T or any current C) or absorb P's interior
    into C_h. Deleted vertices only prune the search; they are not part of
    the output.
    """
    stats = stats or SolveStats()
    labels = tuple(t_list)
    terminals = frozenset(labels)
    found: dict[tuple[frozenset[int], ...], CandidateVector] = {}

    def branch(h: MultiDigraph, sets: tuple[frozenset[int], ...], used: int) -> None:
        stats.nodes += 1
        for index, members in enumerate(sets):
            room = s - len(members)
            if room <= 0:
                continue
            interior = _qualifying_path(h, members, room)
            if interior is None:
                continue
            if used < k:
                protected = terminals.union(*sets)
                for u in interior:
                    if u not in protected:
                        branch(h.delete_vertices([u]), sets, used + 1)
            grown = sets[:index] + (members | frozenset(interior),) + sets[index + 1 :]
            branch(h, grown, used)
            return
        if sets not in found:
            vector = CandidateVector(labels, sets)
            if vector.is_valid(g, s):
                found[sets] = vector

    branch(g, tuple(frozenset([t]) for t in labels), 0)
    logger.debug("Built %d candidate vectors for |T|=%d, k=%d, s=%d", len(found), len(labels), k, s)
    return list(found.values())


# =============================================================================
# Skew separator instances
# =============================================================================


@dataclass(frozen=True)
class SplitGraph:
    """``g`` with every distinct candidate set collapsed into an in/out pair.

    Vertices outside the candidate sets keep their ids; ``plus_of`` and
    ``minus_of`` give the new in-vertex and out-vertex of each representative.
    """

    g_prime: MultiDigraph
    plus_of: dict[int, int]
    minus_of: dict[int, int]
    back_map: dict[int, int]


def build_split_graph(g: MultiDigraph, vector: CandidateVector) -> SplitGraph:
    """Collapse each candidate set into a ``t+``/``t-`` pair; arcs inside a set vanish."""
    reps = vector.representatives()
    owner: dict[int, int] = {}
    plus_of: dict[int, int] = {}
    minus_of: dict[int, int] = {}
    back_map = {v: v for v in g.vertices}
    next_id = g.n
    for rep in sorted(reps):
        plus_of[rep], minus_of[rep] = next_id, next_id + 1
        back_map[next_id] = back_map[next_id + 1] = rep
        next_id += 2
        for v in reps[rep]:
            owner[v] = rep
            del back_map[v]

    arcs: list[tuple[int, int]] = []
    for _, u, v in g.arcs():
        tail_rep, head_rep = owner.get(u), owner.get(v)
        if tail_rep is not None and tail_rep == head_rep:
            continue
        tail = minus_of[tail_rep] if tail_rep is not None else u
        head = plus_of[head_rep] if head_rep is not None else v
        arcs.append((tail, head))

    keep = (g.vertices - owner.keys()) | set(range(g.n, next_id))
    g_prime = MultiDigraph(next_id, arcs).induced(keep)
    return SplitGraph(g_prime, plus_of, minus_of, back_map)


def _order_blocked(split: SplitGraph, order: Sequence[int]) -> bool:
    """A direct t_j^- -> t_h^+ arc with j not before h makes the ordering hopeless."""
    position = {rep: i for i, rep in enumerate(order)}
    for tail_rep, minus in split.minus_of.items():
        for head in split.g_prime.successors(minus):
            head_rep = split.back_map.get(head)
            if head_rep is not None and split.plus_of.get(head_rep) == head:
                if position[tail_rep] >= position[head_rep]:
                    return True
    return False


def _skew_system(split: SplitGraph, order: Sequence[int], k: int) -> SkewSystem:
    return SkewSystem.build(
        split.g_prime,
        [[split.minus_of[rep]] for rep in order],
        [[split.plus_of[rep]] for rep in order],
        k,
    )


def build_skew_system(
    g: MultiDigraph, vector: CandidateVector, order: Sequence[int], k: int
) -> SkewSystem:
    """Skew instance for one ordering of the vector's representatives."""
    split = build_split_graph(g, vector)
    if sorted(order) != sorted(split.plus_of):
        raise InputError(
            f"ordering {list(order)} is not a permutation of representatives {sorted(split.plus_of)}"
        )
    return _skew_system(split, order, k)


# =============================================================================
# Vertex deletion
# =============================================================================


def _solve_disjoint(
    g: MultiDigraph,
    t_set: frozenset[int],
    k: int,
    s: int,
    config: SolverConfig,
    stats: SolveStats,
) -> frozenset[int] | None:
    if check_bssc(g, s, ()):
        return frozenset()
    if k == 0:
        return None
    if _largest_component(g.induced(t_set)) > s or _largest_component(g.delete_vertices(t_set)) > s:
        return None

    for vector in construct_candidate_vectors(g, sorted(t_set), k, s, stats):
        split = build_split_graph(g, vector)
        for order in permutations(sorted(split.plus_of)):
            if _order_blocked(split, order):
                continue
            found = solve_skew(_skew_system(split, order, k), config.skew_backend, stats)
            if found is None:
                continue
            if not check_bssc(g, s, found):
                logger.warning("Skew separator %s does not bound the components", sorted(found))
                continue
            return found
    return None


def solve_bsscvd(
    g: MultiDigraph,
    k: int,
    s: int,
    config: SolverConfig | None = None,
    stats: SolveStats | None = None,
) -> frozenset[int] | None:
    """At most ``k`` vertices whose deletion leaves strong components of size <= ``s``."""
    if k < 0 or s < 1:
        raise InputError(f"need k >= 0 and s >= 1, got k={k}, s={s}")
    config = config or SolverConfig()
    stats = stats or SolveStats()

    def is_solution(h: MultiDigraph, removed: frozenset[int]) -> bool:
        return check_bssc(h, s, removed)

    def solve_disjoint(h: MultiDigraph, t_set: frozenset[int], budget: int) -> frozenset[int] | None:
        return _solve_disjoint(h, t_set, budget, s, config, stats)

    return iterative_compression(g, k, is_solution, solve_disjoint, stats)


# =============================================================================
# Arc deletion and the transformations between the two versions
# =============================================================================


def transform_arc_to_vertex(g: MultiDigraph, k: int, s: int) -> Transformation:
    """Clique-and-subdivision instance with budget ``k`` and bound ``(k+1) s^3``.

    Each vertex becomes a complete digraph on ``(k+1)s(s-1) + k + 1``
    vertices; each arc ``a = (v, w)`` becomes a vertex ``u_a`` entered from all
    of v's clique and leaving to all of w's. Self-loops never change a strong
    component's size and are dropped. Expects parallel arcs already capped at
    ``k + 1``.
    """
    if k < 0 or s < 1:
        raise InputError(f"need k >= 0 and s >= 1, got k={k}, s={s}")
    s_a = (k + 1) * s * (s - 1)
    block = s_a + k + 1
    order = sorted(g.vertices)
    start = {v: i * block for i, v in enumerate(order)}
    kept = [(a, u, v) for a, u, v in g.arcs() if u != v]
    base = len(order) * block

    arcs: list[tuple[int, int]] = []
    for v in order:
        first = start[v]
        arcs.extend(
            (first + i, first + j) for i in range(block) for j in range(block) if i != j
        )
    origin: dict[int, int] = {}
    for offset, (a, u, v) in enumerate(kept):
        subdivision = base + offset
        origin[subdivision] = a
        arcs.extend((start[u] + i, subdivision) for i in range(block))
        arcs.extend((subdivision, start[v] + i) for i in range(block))

    g_prime = MultiDigraph(base + len(kept), arcs)
    instance = ProblemInstance(Problem.BSSCVD, g_prime, k, (k + 1) * s**3)
    return Transformation(instance, origin)


def solve_bsscad(
    g: MultiDigraph,
    k: int,
    s: int,
    config: SolverConfig | None = None,
    stats: SolveStats | None = None,
) -> frozenset[int] | None:
    """At most ``k`` arc ids whose deletion leaves strong components of size <= ``s``."""
    capped = cap_multiplicity(g, k)
    transformed = transform_arc_to_vertex(capped, k, s)
    logger.debug(
        "Arc instance mapped to %d vertices with s'=%d",
        transformed.instance.graph.num_vertices,
        transformed.instance.size_bound,
    )
    found = solve_bsscvd(
        transformed.instance.graph, k, transformed.instance.size_bound, config, stats
    )
    if found is None:
        return None
    return transformed.lift(found)


def transform_vertex_to_arc(g: MultiDigraph, k: int, s: int) -> Transformation:
    """Split instance with budget ``k`` and bound ``2s``.

    Vertex ``v`` becomes ``v- -> v+``; every ordered pair (u, v) joined by
    at least one arc gets ``k + 1`` parallel arcs ``u+ -> v-``. ``origin``
    maps each inner arc to its vertex and every other arc to the vertex of
    its tail, which is the inner arc a solution can always swap it for.
    """
    if k < 0 or s < 1:
        raise InputError(f"need k >= 0 and s >= 1, got k={k}, s={s}")
    order = sorted(g.vertices)
    minus = {v: 2 * i for i, v in enumerate(order)}
    plus = {v: 2 * i + 1 for i, v in enumerate(order)}

    arcs: list[tuple[int, int]] = []
    origin: dict[int, int] = {}
    for v in order:
        origin[len(arcs)] = v
        arcs.append((minus[v], plus[v]))
    for u in order:
        for v in g.out_neighbors(u):
            for _ in range(k + 1):
                origin[len(arcs)] = u
                arcs.append((plus[u], minus[v]))

    g_prime = MultiDigraph(2 * len(order), arcs)
    instance = ProblemInstance(Problem.BSSCAD, g_prime, k, 2 * s)
    return Transformation(instance, origin)
