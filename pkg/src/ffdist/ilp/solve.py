"""Solving models: exhaustive in-process search, external solvers, interpretation."""

import os
import shlex
import subprocess
import tempfile
from fractions import Fraction
from math import lcm

from .. import kernels
from ..decomposition import CappingSet, SiblingSet, evaluate_unweighted, evaluate_weighted, induce
from ..diagram import CAP, INDEL_A, INDEL_B
from ..errors import ConfigError, DiagramError, ModelBug, SolverFailed, TooLarge
from ..exact import Limits
from ..numbers import format_decimal
from .lpformat import parse_lp
from .model import BINARY, EQ, GE, UNWEIGHTED, x_name
from .solution import FEASIBLE, INFEASIBLE, OPTIMAL, TOLERANCE, Solution, parse_solution

# branching priority by variable family; x variables by edge kind
_FAMILY_RANK = {"z": 3, "r": 4, "s": 5, "t": 6, "y": 7}
_X_RANK = {"ext": 0, CAP: 1, INDEL_A: 2, INDEL_B: 2}


def _scaled(terms, rhs):
    scale = lcm(*(c.denominator for _, c in terms), Fraction(rhs).denominator)
    return [(v, int(c * scale)) for v, c in terms], int(rhs * scale)


def _rank(v):
    if v.role is not None:
        family = v.role[0]
        if family == "x":
            return _X_RANK.get(v.role[2], 8)
        return _FAMILY_RANK.get(family, 8)
    head = v.name.rstrip("0123456789")
    return 0 if head == "x" else _FAMILY_RANK.get(head, 8)


def free_decisions(m):
    """Free x-variable classes once fixings and pairwise ties are applied.

    Indel edges are not counted: the degree constraints decide them.
    """
    fixed, parent = set(), {}

    def find(a):
        while parent.get(a, a) != a:
            a = parent[a]
        return a

    for c in m.constraints:
        if c.sense != EQ:
            continue
        if len(c.terms) == 1:
            fixed.add(c.terms[0][0])
        elif len(c.terms) == 2 and c.rhs == 0 and c.terms[0][1] == -c.terms[1][1]:
            a, b = find(c.terms[0][0]), find(c.terms[1][0])
            if a != b:
                parent[a] = b
    classes = set()
    for v in m.variables:
        if v.kind != BINARY or v.name in fixed:
            continue
        if v.role is not None:
            if v.role[0] != "x" or v.role[2] in (INDEL_A, INDEL_B):
                continue
        elif not v.name.startswith("x"):
            continue
        classes.add(find(v.name))
    return len(classes)


def solve_exhaustive(m, limits=Limits(), node_limit=0):
    """Provably optimal solution by depth-first branch and bound."""
    free = free_decisions(m)
    if free > limits.max_free:
        raise TooLarge(f"{free} free decisions exceed the exhaustive limit of {limits.max_free}")
    index = m.index
    n = len(m.variables)
    rows = []
    for c in m.constraints:
        terms, rhs = _scaled(c.terms, c.rhs)
        if c.sense in ("<=", EQ):
            rows.append((terms, rhs))
        if c.sense in (GE, EQ):
            rows.append(([(v, -a) for v, a in terms], -rhs))
    row_ptr, row_col, row_coef, rhs = [0], [], [], []
    by_var = [[] for _ in range(n)]
    for r, (terms, b) in enumerate(rows):
        for v, a in terms:
            row_col.append(index[v])
            row_coef.append(a)
            by_var[index[v]].append(r)
        row_ptr.append(len(row_col))
        rhs.append(b)
    var_ptr, var_rows = [0], []
    for lst in by_var:
        var_rows.extend(lst)
        var_ptr.append(len(var_rows))
    scale = lcm(1, *(c.denominator for _, c in m.objective))
    cobj = [0] * n
    for v, c in m.objective:
        cobj[index[v]] += int(c * scale)
    order = sorted(range(n), key=lambda j: (_rank(m.variables[j]), j))
    pref = [
        1 if cobj[j] < 0 or (cobj[j] == 0 and m.variables[j].kind != BINARY) else 0 for j in range(n)
    ]
    lo = [0] * n
    hi = [v.upper for v in m.variables]
    status, best, assign, nodes = kernels.bb_search(
        lo, hi, row_ptr, row_col, row_coef, rhs, var_ptr, var_rows, cobj, order, pref, node_limit
    )
    if assign is None:
        state = INFEASIBLE if status == kernels.STATUS_INFEASIBLE else "error"
        return Solution({}, None, state, None, m.constant)
    values = {m.variables[j].name: int(v) for j, v in enumerate(assign) if v}
    objective = Fraction(best, scale)
    if objective != m.evaluate(values):
        raise ModelBug("search objective disagrees with the assignment")
    state = OPTIMAL if status == kernels.STATUS_OPTIMAL else FEASIBLE
    sol = Solution(values, objective, state, Fraction(0) if state == OPTIMAL else None, m.constant)
    sol.nodes = nodes
    return sol


def interpret(sol, d, m=None):
    """Turn a solution back into ``(distance, matching, decomposition)``.

    The decomposition selected by the x variables is evaluated directly and
    must agree with the solution objective: exactly for in-process
    solutions, within 1e-6 for external ones.  Feasible but non-optimal
    solutions may only over-estimate.
    """
    if sol.status not in (OPTIMAL, FEASIBLE):
        raise SolverFailed(f"solver reported status {sol.status}")
    mode = getattr(m, "mode", m)
    picked = {k for k in range(len(d.edges)) if sol.value(x_name(k))}
    pairs = []
    for n, s in enumerate(d.siblings):
        t, h = s.tail_edge in picked, s.head_edge in picked
        if t != h:
            raise ModelBug(f"sibling edges of ({s.a}, {s.b}) selected apart")
        if t:
            pairs.append(n)
    perm = [None] * (2 * d.p_star)
    for k in picked:
        e = d.edges[k]
        if e.kind == CAP:
            i, j = e.ref
            if perm[i] is not None:
                raise ModelBug(f"A-cap {i + 1} joined twice")
            perm[i] = j
    try:
        q = induce(d, SiblingSet(frozenset(pairs)), CappingSet(tuple(perm)))
    except DiagramError as exc:
        raise ModelBug(f"selected edges are not a consistent decomposition: {exc}") from None
    if set(q.selected) != picked:
        raise ModelBug("selected indel edges do not match the unmatched markers")
    value = evaluate_unweighted(q) if mode == UNWEIGHTED else evaluate_weighted(q)
    total = sol.total
    tol = 0 if sol.exact else TOLERANCE
    if sol.status == OPTIMAL and abs(total - value) > tol:
        raise ModelBug(
            f"objective {format_decimal(total)} differs from decomposition value {format_decimal(value)}"
        )
    if sol.status == FEASIBLE and total < value - tol:
        raise ModelBug(
            f"objective {format_decimal(total)} below decomposition value {format_decimal(value)}"
        )
    return value, q.siblings.matching(d), q


def run_solver(lp_text, template, model=None, timeout=None):
    """Run an external solver command and parse its solution.

    ``template`` is split like a shell command; ``{input}`` and
    ``{output}`` are replaced by temporary file paths.  A template with
    neither placeholder reads the LP on stdin and writes the solution to
    stdout.
    """
    if model is None:
        model = parse_lp(lp_text)
    has_in, has_out = "{input}" in template, "{output}" in template
    if has_in != has_out:
        missing = "{output}" if has_in else "{input}"
        raise ConfigError(f"solver command template lacks the {missing} placeholder")
    try:
        argv = shlex.split(template)
    except ValueError as exc:
        raise ConfigError(f"cannot split solver command: {exc}") from None
    if not argv:
        raise ConfigError("empty solver command")
    with tempfile.TemporaryDirectory(prefix="ffdist-") as tmp:
        lp_path = os.path.join(tmp, "model.lp")
        sol_path = os.path.join(tmp, "model.sol")
        with open(lp_path, "w") as fh:
            fh.write(lp_text)
        if has_in:
            argv = [a.replace("{input}", lp_path).replace("{output}", sol_path) for a in argv]
        try:
            proc = subprocess.run(
                argv,
                input=None if has_in else lp_text,
                capture_output=True,
                text=True,
                timeout=timeout,
            )
        except FileNotFoundError:
            raise SolverFailed(f"solver executable not found: {argv[0]}") from None
        except subprocess.TimeoutExpired as exc:
            raise SolverFailed(f"solver timed out after {timeout} s", exc.stderr or "") from None
        if proc.returncode != 0:
            raise SolverFailed(f"solver exited with status {proc.returncode}", proc.stderr)
        if has_in:
            if not os.path.exists(sol_path):
                raise SolverFailed("solver wrote no solution file", proc.stderr)
            with open(sol_path) as fh:
                text = fh.read()
        else:
            text = proc.stdout
    sol = parse_solution(text, model)
    if sol.status not in (OPTIMAL, FEASIBLE):
        raise SolverFailed(f"solver reported status {sol.status}", proc.stderr)
    return sol
