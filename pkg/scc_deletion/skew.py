"""
Skew separators

Given ordered source groups X_1..X_t and sink groups Y_1..Y_t, a skew
separator cuts every X_i -> Y_j path with i >= j while avoiding all terminals.

Two interchangeable backends:
- brute: subsets in nondecreasing size, the reference answer
- fpt: branch on important X_t -> (Y_1 u ... u Y_t) separators and recurse on
  the first t-1 groups (pushing argument: some minimum solution contains an
  important separator for the last source group)
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import combinations

from .config import SkewBackend, SolveStats
from .errors import InputError, SccDeletionError
from .graph import MultiDigraph, reach_set
from .separators import enumerate_important_separators

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SkewSystem:
    """A graph with ordered source/sink groups and a deletion budget."""

    g: MultiDigraph
    sources: tuple[frozenset[int], ...]
    sinks: tuple[frozenset[int], ...]
    k: int

    def __post_init__(self) -> None:
        if len(self.sources) != len(self.sinks):
            raise InputError(
                f"skew system needs as many source groups as sink groups "
                f"({len(self.sources)} != {len(self.sinks)})"
            )
        if self.k < 0:
            raise InputError(f"budget must be non-negative, got {self.k}")

    @classmethod
    def build(
        cls,
        g: MultiDigraph,
        sources: Sequence[Iterable[int]],
        sinks: Sequence[Iterable[int]],
        k: int,
    ) -> SkewSystem:
        return cls(g, tuple(map(frozenset, sources)), tuple(map(frozenset, sinks)), k)

    @property
    def t(self) -> int:
        return len(self.sources)

    @property
    def terminals(self) -> frozenset[int]:
        return frozenset().union(*self.sources, *self.sinks)


def is_skew_separator(system: SkewSystem, s_set: Iterable[int]) -> bool:
    """True iff ``s_set`` avoids every terminal and cuts every X_i -> Y_j with i >= j."""
    cut = frozenset(s_set)
    if cut & system.terminals or not cut <= system.g.vertices:
        return False
    h = system.g.delete_vertices(cut)
    blocked: frozenset[int] = frozenset()
    for x_group, y_group in zip(system.sources, system.sinks):
        blocked |= y_group
        if x_group and reach_set(h, x_group) & blocked:
            return False
    return True


def _solve_brute(system: SkewSystem, stats: SolveStats) -> frozenset[int] | None:
    candidates = sorted(system.g.vertices - system.terminals)
    for size in range(min(system.k, len(candidates)) + 1):
        for chosen in combinations(candidates, size):
            stats.nodes += 1
            if is_skew_separator(system, chosen):
                return frozenset(chosen)
    return None


def _solve_fpt(
    g: MultiDigraph,
    sources: tuple[frozenset[int], ...],
    sinks: tuple[frozenset[int], ...],
    k: int,
    terminals: frozenset[int],
    stats: SolveStats,
) -> frozenset[int] | None:
    stats.nodes += 1
    if not sources:
        return frozenset()
    last = sources[-1]
    targets = frozenset().union(*sinks)
    rest_sources, rest_sinks = sources[:-1], sinks[:-1]
    if not last or not targets:
        return _solve_fpt(g, rest_sources, rest_sinks, k, terminals, stats)
    if last & targets:
        return None
    undeletable = terminals - last - targets
    for sep in enumerate_important_separators(g, last, targets, k, undeletable, stats):
        found = _solve_fpt(
            g.delete_vertices(sep.vertices),
            rest_sources,
            rest_sinks,
            k - sep.size,
            terminals,
            stats,
        )
        if found is not None:
            return sep.vertices | found
    return None


def solve_skew(
    system: SkewSystem,
    backend: SkewBackend = SkewBackend.FPT,
    stats: SolveStats | None = None,
) -> frozenset[int] | None:
    """A skew separator of size <= k, or ``None`` when none exists."""
    stats = stats or SolveStats()
    stats.skew_calls += 1
    logger.debug("Skew system: t=%d, k=%d, backend=%s", system.t, system.k, backend.value)
    if backend is SkewBackend.BRUTE:
        return _solve_brute(system, stats)
    terminals = system.terminals
    if not terminals <= system.g.vertices:
        raise InputError(f"skew terminals {sorted(terminals - system.g.vertices)} are not in the graph")
    found = _solve_fpt(system.g, system.sources, system.sinks, system.k, terminals, stats)
    if found is not None and (len(found) > system.k or not is_skew_separator(system, found)):
        raise SccDeletionError(f"fpt skew backend produced an invalid separator {sorted(found)}")
    return found
