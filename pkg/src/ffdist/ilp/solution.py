"""Solutions of an :class:`IlpModel` and the plain-text solution grammar.

::

    # status optimal
    # objective 4.1
    # gap 0
    x1 1
    y3 2

Absent variables are 0.  ``objective`` is the LP objective, without the
model constant.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import InvalidSolution, ObjectiveMismatch, ParseError
from ..numbers import format_decimal

OPTIMAL = "optimal"
FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
ERROR = "error"
STATUSES = (OPTIMAL, FEASIBLE, INFEASIBLE, ERROR)

TOLERANCE = Fraction(1, 10**6)


@dataclass
class Solution:
    values: dict
    objective: Fraction
    status: str = OPTIMAL
    gap: Fraction = None
    constant: Fraction = Fraction(0)
    # True when produced by exact in-process arithmetic
    exact: bool = field(default=True, compare=False)

    @property
    def total(self):
        """Objective including the model constant."""
        return None if self.objective is None else self.objective + self.constant

    def value(self, name):
        return self.values.get(name, 0)


def _number(token, lineno):
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a number: {token!r}", lineno) from None


def check_assignment(m, values, tol=Fraction(0)):
    """Round integer values, check domains and constraints; return the clean assignment."""
    clean = {}
    for name, raw in values.items():
        if name not in m.index:
            raise InvalidSolution(f"unknown variable {name!r}")
        v = m.variable(name)
        k = round(raw)
        if abs(raw - k) > tol:
            raise InvalidSolution(f"{name} = {format_decimal(raw)} is not integral")
        if not 0 <= k <= v.upper:
            raise InvalidSolution(f"{name} = {k} outside [0, {v.upper}]")
        if k:
            clean[name] = k
    for c in m.constraints:
        if not c.satisfied(clean):
            raise InvalidSolution(f"constraint {c.name} violated")
    return clean


def parse_solution(text, m):
    status, declared, gap = None, None, None
    values = {}
    seen_any = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        seen_any = True
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) != 2:
                raise ParseError(f"malformed header {line!r}", lineno)
            key, val = parts
            if key == "status":
                if val not in STATUSES:
                    raise ParseError(f"unknown status {val!r}", lineno)
                status = val
            elif key == "objective":
                declared = _number(val, lineno)
            elif key == "gap":
                gap = _number(val, lineno)
            else:
                raise ParseError(f"unknown header {key!r}", lineno)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'name value', got {line!r}", lineno)
        name, val = parts
        if name in values:
            raise ParseError(f"variable {name!r} listed twice", lineno)
        values[name] = _number(val, lineno)
    if not seen_any:
        raise ParseError("empty solution")
    if status is None:
        status = OPTIMAL if not gap else FEASIBLE
    if status in (INFEASIBLE, ERROR):
        return Solution({}, None, status, gap, m.constant, exact=False)
    clean = check_assignment(m, values, TOLERANCE)
    objective = m.evaluate(clean)
    if declared is not None and abs(declared - objective) > TOLERANCE:
        raise ObjectiveMismatch(
            f"declared objective {format_decimal(declared)} but assignment gives {format_decimal(objective)}"
        )
    return Solution(clean, objective, status, gap, m.constant, exact=False)


def write_solution(sol, m=None):
    lines = [f"# status {sol.status}"]
    if sol.objective is not None:
        lines.append(f"# objective {format_decimal(sol.objective)}")
    if sol.gap is not None:
        lines.append(f"# gap {format_decimal(sol.gap)}")
    names = [v.name for v in m.variables] if m is not None else sorted(sol.values)
    for name in names:
        v = sol.values.get(name, 0)
        if v:
            lines.append(f"{name} {format_decimal(v)}")
    return "\n".join(lines) + "\n"
