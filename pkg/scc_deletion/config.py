"""Solver configuration and search telemetry."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from enum import Enum
from typing import Any

DEFAULT_COVERING_LIMIT = 16
DEFAULT_COVERING_RETRIES = 8
DEFAULT_ORACLE_LIMIT = 2_000_000


class CoveringMode(Enum):
    """How shadow-covering set families are produced"""

    EXHAUSTIVE = "exhaustive"
    RANDOMIZED = "randomized"
    NONE = "none"


class SkewBackend(Enum):
    """Skew separator subsolver"""

    BRUTE = "brute"
    FPT = "fpt"


@dataclass(frozen=True)
class SolverConfig:
    """Knobs shared by every solver entry point.

    All of them come from command-line flags; nothing is read from the
    environment so that a report's ``config`` echo fully reproduces a run.
    """

    covering: CoveringMode = CoveringMode.EXHAUSTIVE
    covering_retries: int = DEFAULT_COVERING_RETRIES
    covering_limit: int = DEFAULT_COVERING_LIMIT
    skew_backend: SkewBackend = SkewBackend.FPT
    seed: int = 0
    oracle_limit: int = DEFAULT_ORACLE_LIMIT

    def to_dict(self) -> dict[str, Any]:
        return {
            "covering": self.covering.value,
            "covering_retries": self.covering_retries,
            "covering_limit": self.covering_limit,
            "skew_backend": self.skew_backend.value,
            "seed": self.seed,
            "oracle_limit": self.oracle_limit,
        }


@dataclass
class SolveStats:
    """Counters threaded through a solve call"""

    nodes: int = 0
    skew_calls: int = 0
    important_separators: int = 0
    covering_sets: int = 0
    wall_ms: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["wall_ms"] = round(self.wall_ms, 3)
        return data

    def merge(self, other: SolveStats) -> None:
        """Add another run's counters into this one (bench aggregates)."""
        self.nodes += other.nodes
        self.skew_calls += other.skew_calls
        self.important_separators += other.important_separators
        self.covering_sets += other.covering_sets
        self.wall_ms += other.wall_ms
