"""Integer programming path: model building, LP text, solving, interpretation."""

from .lpformat import emit_lp, parse_lp
from .model import (
    BINARY,
    GENERAL,
    UNWEIGHTED,
    WEIGHTED,
    Constraint,
    IlpModel,
    Variable,
    build_ilp,
)
from .solution import Solution, parse_solution, write_solution
from .solve import free_decisions, interpret, run_solver, solve_exhaustive

__all__ = [
    "BINARY",
    "GENERAL",
    "WEIGHTED",
    "UNWEIGHTED",
    "Variable",
    "Constraint",
    "IlpModel",
    "build_ilp",
    "emit_lp",
    "parse_lp",
    "Solution",
    "parse_solution",
    "write_solution",
    "solve_exhaustive",
    "interpret",
    "run_solver",
    "free_decisions",
]
