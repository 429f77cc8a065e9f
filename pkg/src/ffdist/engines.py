"""One entry point for the three ways of computing a distance."""

from typing import NamedTuple

from .diagram import build_ffrc
from .exact import Limits, ffd_exact, unwffd_exact
from .ilp import WEIGHTED, build_ilp, emit_lp, interpret, run_solver, solve_exhaustive
from .errors import ConfigError

ORACLE = "oracle"
EXHAUSTIVE = "exhaustive"
EXTERNAL = "external"
ENGINES = (ORACLE, EXHAUSTIVE, EXTERNAL)


class DistanceResult(NamedTuple):
    distance: object
    matching: list
    engine: str


def compute_distance(genome_a, genome_b, g, mode=WEIGHTED, engine=ORACLE, limits=Limits(),
                     solver_cmd=None, timeout=None):
    """Distance of ``(A, B)`` over similarity graph ``g`` (already thresholded)."""
    if engine == ORACLE:
        f = ffd_exact if mode == WEIGHTED else unwffd_exact
        r = f(genome_a, genome_b, g, limits)
        return DistanceResult(r.distance, r.matching, engine)
    if engine not in ENGINES:
        raise ConfigError(f"unknown engine {engine!r}")
    d = build_ffrc(genome_a, genome_b, g)
    m = build_ilp(d, mode)
    if engine == EXHAUSTIVE:
        sol = solve_exhaustive(m, limits)
    else:
        if not solver_cmd:
            raise ConfigError("the external engine needs a solver command (--solver-cmd or FFDIST_SOLVER_CMD)")
        sol = run_solver(emit_lp(m), solver_cmd, m, timeout)
    value, matching, _ = interpret(sol, d, m)
    return DistanceResult(value, matching, engine)
