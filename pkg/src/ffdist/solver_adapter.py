"""Run an LP file through ``scipy.optimize.milp`` (HiGHS) and write a solution file.

Usage: ``python -m ffdist.solver_adapter MODEL.lp SOLUTION.txt``, which fits
the ``{input} {output}`` solver template.  scipy is an optional dependency.
"""

import sys
from fractions import Fraction

from .ilp.lpformat import parse_lp
from .ilp.model import EQ, GE, LE
from .ilp.solution import ERROR, FEASIBLE, INFEASIBLE, OPTIMAL, Solution, write_solution


def solve_model(m, time_limit=None):
    import numpy as np
    from scipy.optimize import Bounds, LinearConstraint, milp
    from scipy.sparse import lil_matrix

    n = len(m.variables)
    c = np.zeros(n)
    for name, coef in m.objective:
        c[m.index[name]] += float(coef)
    a = lil_matrix((len(m.constraints), n))
    lo = np.full(len(m.constraints), -np.inf)
    hi = np.full(len(m.constraints), np.inf)
    for r, con in enumerate(m.constraints):
        for name, coef in con.terms:
            a[r, m.index[name]] += float(coef)
        if con.sense in (LE, EQ):
            hi[r] = float(con.rhs)
        if con.sense in (GE, EQ):
            lo[r] = float(con.rhs)
    upper = np.array([float(v.upper) for v in m.variables])
    options = {"time_limit": time_limit} if time_limit else {}
    res = milp(
        c,
        constraints=[LinearConstraint(a.tocsr(), lo, hi)] if m.constraints else [],
        integrality=np.ones(n),
        bounds=Bounds(np.zeros(n), upper),
        options=options,
    )
    if res.x is None:
        return Solution({}, None, INFEASIBLE if res.status == 2 else ERROR, constant=m.constant, exact=False)
    values = {v.name: Fraction(round(x)) for v, x in zip(m.variables, res.x) if round(x)}
    status = OPTIMAL if res.status == 0 else FEASIBLE
    gap = Fraction(0) if status == OPTIMAL else None
    return Solution(values, m.evaluate(values), status, gap, m.constant, exact=False)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 2:
        print("usage: python -m ffdist.solver_adapter MODEL.lp SOLUTION.txt", file=sys.stderr)
        return 2
    with open(argv[0]) as fh:
        m = parse_lp(fh.read())
    sol = solve_model(m)
    with open(argv[1], "w") as fh:
        fh.write(write_solution(sol, m))
    return 0 if sol.status in (OPTIMAL, FEASIBLE) else 1


if __name__ == "__main__":
    sys.exit(main())
