"""Exact parameterized solvers for bounded-size and 1-out-regular strong component deletion."""

from .bounded_scc import check_bssc, solve_bsscad, solve_bsscvd
from .config import CoveringMode, SkewBackend, SolverConfig, SolveStats
from .errors import BudgetError, InputError, SccDeletionError
from .graph import Mode, MultiDigraph, scc
from .one_out_regular import check_oor, solve_oorad, solve_oorvd
from .problems import Problem, ProblemInstance

__version__ = "1.0.0"

__all__ = [
    "BudgetError",
    "CoveringMode",
    "InputError",
    "Mode",
    "MultiDigraph",
    "Problem",
    "ProblemInstance",
    "SccDeletionError",
    "SkewBackend",
    "SolveStats",
    "SolverConfig",
    "check_bssc",
    "check_oor",
    "scc",
    "solve_bsscad",
    "solve_bsscvd",
    "solve_oorad",
    "solve_oorvd",
]
