"""Problem tags and instance wrapper."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import InputError
from .graph import Mode, MultiDigraph


class Problem(Enum):
    """Problem tags accepted on the command line"""

    DFVS = "dfvs"
    DFAS = "dfas"
    BSSCVD = "bsscvd"
    BSSCAD = "bsscad"
    OORVD = "oorvd"
    OORAD = "oorad"

    @property
    def mode(self) -> Mode:
        if self in (Problem.DFVS, Problem.BSSCVD, Problem.OORVD):
            return Mode.VERTEX
        return Mode.ARC

    @property
    def bounded_size(self) -> bool:
        """True for the strong-component size problems (DFVS/DFAS included)."""
        return self not in (Problem.OORVD, Problem.OORAD)

    @property
    def canonical(self) -> Problem:
        """The general problem a special case is sugar for."""
        if self is Problem.DFVS:
            return Problem.BSSCVD
        if self is Problem.DFAS:
            return Problem.BSSCAD
        return self

    @property
    def fixed_s(self) -> int | None:
        return 1 if self in (Problem.DFVS, Problem.DFAS) else None


@dataclass(frozen=True)
class ProblemInstance:
    """A graph with its budget and, for size-bounded problems, the size bound.

    Special-case tags are normalised on construction: ``dfvs``/``dfas`` become
    the size-bounded problem with ``s = 1``.
    """

    problem: Problem
    graph: MultiDigraph
    k: int
    s: int | None = None

    def __post_init__(self) -> None:
        if self.k < 0:
            raise InputError(f"budget k must be non-negative, got {self.k}")
        if self.problem.fixed_s is not None:
            if self.s not in (None, self.problem.fixed_s):
                raise InputError(f"{self.problem.value} fixes s = 1, got s = {self.s}")
            object.__setattr__(self, "s", self.problem.fixed_s)
            object.__setattr__(self, "problem", self.problem.canonical)
        if self.problem.bounded_size:
            if self.s is None:
                raise InputError(f"{self.problem.value} needs a size bound s")
            if self.s < 1:
                raise InputError(f"size bound s must be at least 1, got {self.s}")
        elif self.s is not None:
            raise InputError(f"{self.problem.value} takes no size bound")

    @property
    def mode(self) -> Mode:
        return self.problem.mode

    @property
    def size_bound(self) -> int:
        """``s`` for size-bounded problems; raises for 1-out-regular ones."""
        if self.s is None:
            raise InputError(f"{self.problem.value} has no size bound")
        return self.s


@dataclass(frozen=True)
class Transformation:
    """A transformed instance plus the map from its items back to the original.

    ``origin`` maps vertices (vertex-mode targets) or arc ids (arc-mode
    targets) of the new graph to the original arc id or vertex they stand
    for. Items without an origin, such as clique padding, lift to nothing.
    """

    instance: ProblemInstance
    origin: dict[int, int]

    def lift(self, solution: frozenset[int]) -> frozenset[int]:
        return frozenset(self.origin[item] for item in solution if item in self.origin)
