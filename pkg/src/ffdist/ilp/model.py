"""Integer programs over the capped diagram, weighted and unweighted."""

from dataclasses import dataclass, field
from fractions import Fraction

from ..diagram import ADJ_A, ADJ_B, EXT, INDEL_A, INDEL_B
from ..errors import DiagramError
from ..similarity import SIDE_A, SIDE_B

WEIGHTED = "weighted"
UNWEIGHTED = "unweighted"
BINARY = "binary"
GENERAL = "general"

LE, GE, EQ = "<=", ">=", "="


@dataclass(frozen=True)
class Variable:
    name: str
    upper: int = 1
    kind: str = BINARY
    # ("x", edge index, edge kind), ("y", vertex index), ... ; not part of equality
    role: tuple = field(default=None, compare=False)


@dataclass(frozen=True)
class Constraint:
    name: str
    terms: tuple  # ((variable name, Fraction), ...)
    sense: str
    rhs: Fraction

    def activity(self, values):
        return sum((c * values.get(v, 0) for v, c in self.terms), Fraction(0))

    def satisfied(self, values, tol=0):
        lhs = self.activity(values)
        if self.sense == LE:
            return lhs <= self.rhs + tol
        if self.sense == GE:
            return lhs >= self.rhs - tol
        return abs(lhs - self.rhs) <= tol


@dataclass
class IlpModel:
    variables: list
    constraints: list
    objective: tuple  # ((variable name, Fraction), ...)
    constant: Fraction = Fraction(0)
    mode: str = WEIGHTED

    def __post_init__(self):
        self.index = {v.name: k for k, v in enumerate(self.variables)}
        if len(self.index) != len(self.variables):
            raise ValueError("duplicate variable names")

    def variable(self, name):
        return self.variables[self.index[name]]

    def names(self, prefix):
        return [v.name for v in self.variables if v.name.startswith(prefix) and v.name[len(prefix):].isdigit()]

    def evaluate(self, values):
        """Objective value of ``values`` without the constant."""
        return sum((c * values.get(v, 0) for v, c in self.objective), Fraction(0))

    def counts(self):
        out = {}
        for v in self.variables:
            head = v.name.rstrip("0123456789")
            out[head] = out.get(head, 0) + 1
        return out


def x_name(edge):
    return f"x{edge + 1}"


def _edge_var(k):
    return f"t{k + 1}"


def build_ilp(d, mode=WEIGHTED):
    """Integer program whose optimum plus ``p*`` is the (un)weighted distance of ``d``."""
    if not d.capped:
        raise DiagramError("the ILP is defined on the capped diagram")
    if mode not in (WEIGHTED, UNWEIGHTED):
        raise ValueError(f"unknown mode {mode!r}")
    one = Fraction(1)
    nv = len(d.vertices)
    variables, constraints = [], []

    def add(name, terms, sense, rhs):
        merged = {}
        for v, c in terms:
            merged[v] = merged.get(v, 0) + Fraction(c)
        terms = tuple((v, c) for v, c in merged.items() if c != 0)
        constraints.append(Constraint(name, terms, sense, Fraction(rhs)))

    for k, e in enumerate(d.edges):
        variables.append(Variable(x_name(k), 1, BINARY, ("x", k, e.kind)))
    for i in range(1, nv + 1):
        variables.append(Variable(f"y{i}", i, GENERAL, ("y", i - 1)))
    for i in range(1, nv + 1):
        variables.append(Variable(f"z{i}", 1, BINARY, ("z", i - 1)))
    for i in range(1, nv + 1):
        variables.append(Variable(f"r{i}", 1, BINARY, ("r", i - 1)))
    for k, e in enumerate(d.edges):
        variables.append(Variable(_edge_var(k), 1, BINARY, ("t", k, e.kind)))
    circular = d.circular_chromosomes()
    for k in range(len(circular)):
        variables.append(Variable(f"s{k + 1}", 1, BINARY, ("s", k)))

    # adjacencies are always part of the decomposition
    for k, e in enumerate(d.edges):
        if e.kind in (ADJ_A, ADJ_B):
            add(f"adj{k + 1}", [(x_name(k), one)], EQ, 1)
    # every vertex has degree two
    for v in range(nv):
        add(f"deg{v + 1}", [(x_name(k), one) for k in d.incident[v]], EQ, 2)
    # siblings go together
    for n, s in enumerate(d.siblings):
        add(f"sib{n + 1}", [(x_name(s.tail_edge), one), (x_name(s.head_edge), -one)], EQ, 0)
    # cycle labels: equal along selected edges, at most the smallest index
    for k, e in enumerate(d.edges):
        i, j = e.u + 1, e.v + 1
        add(f"lab{k + 1}a", [(f"y{i}", one), (f"y{j}", -one), (x_name(k), i)], LE, i)
        add(f"lab{k + 1}b", [(f"y{j}", one), (f"y{i}", -one), (x_name(k), j)], LE, j)
    # labels vanish on cycles holding an indel edge
    for k, e in enumerate(d.edges):
        if e.kind in (INDEL_A, INDEL_B):
            i, j = e.u + 1, e.v + 1
            add(f"idl{k + 1}a", [(f"y{i}", one), (x_name(k), i)], LE, i)
            add(f"idl{k + 1}b", [(f"y{j}", one), (x_name(k), j)], LE, j)
    # z_i counts the cycle whose label equals its own index
    for i in range(1, nv + 1):
        add(f"cnt{i}", [(f"z{i}", i), (f"y{i}", -one)], LE, 0)
    # run labels: 0 next to selected A-indels, 1 next to selected B-indels
    for k, e in enumerate(d.edges):
        if e.kind == INDEL_A:
            for end, w in (("u", e.u), ("v", e.v)):
                add(f"ra{k + 1}{end}", [(f"r{w + 1}", one), (x_name(k), one)], LE, 1)
        elif e.kind == INDEL_B:
            for end, w in (("u", e.u), ("v", e.v)):
                add(f"rb{k + 1}{end}", [(f"r{w + 1}", one), (x_name(k), -one)], GE, 0)
    # a label change along a selected edge costs a transition
    for k, e in enumerate(d.edges):
        u, v = e.u + 1, e.v + 1
        add(f"tr{k + 1}a", [(_edge_var(k), one), (f"r{v}", -one), (f"r{u}", one), (x_name(k), -one)], GE, -1)
        add(f"tr{k + 1}b", [(_edge_var(k), one), (f"r{u}", -one), (f"r{v}", one), (x_name(k), -one)], GE, -1)
    # transitions only on A-adjacencies touching a selected A-indel
    for k, e in enumerate(d.edges):
        if e.kind == ADJ_A:
            touching = [
                (x_name(j), one)
                for j, f in enumerate(d.edges)
                if f.kind == INDEL_A and {f.u, f.v} & {e.u, e.v}
            ]
            add(f"tb{k + 1}", touching + [(_edge_var(k), -one)], GE, 0)
        else:
            add(f"tz{k + 1}", [(_edge_var(k), one)], EQ, 0)
    # circular singletons: all indel edges of a circular chromosome selected
    for n, (side, markers) in enumerate(circular):
        terms = [(x_name(d.indel_edge[(side, m)]), one) for m in markers]
        add(f"sng{n + 1}", terms + [(f"s{n + 1}", -one)], LE, len(markers) - 1)
    if mode == UNWEIGHTED:
        # an edge of the similarity graph may not have both markers deleted
        for n, s in enumerate(d.siblings):
            add(
                f"max{n + 1}",
                [(x_name(d.indel_edge[(SIDE_A, s.a)]), one), (x_name(d.indel_edge[(SIDE_B, s.b)]), one)],
                LE,
                1,
            )

    objective = []
    for k, e in enumerate(d.edges):
        if e.kind == EXT:
            c = Fraction(1, 2) if mode == UNWEIGHTED else 1 - e.weight / 2
        elif e.kind in (INDEL_A, INDEL_B) and mode == WEIGHTED:
            c = e.weight
        else:
            continue
        if c:
            objective.append((x_name(k), c))
    objective += [(f"z{i}", -one) for i in range(1, nv + 1)]
    objective += [(f"s{k + 1}", one) for k in range(len(circular))]
    objective += [(_edge_var(k), Fraction(1, 2)) for k in range(len(d.edges))]
    return IlpModel(variables, constraints, tuple(objective), Fraction(d.p_star), mode)


__all__ = [
    "WEIGHTED",
    "UNWEIGHTED",
    "BINARY",
    "GENERAL",
    "Variable",
    "Constraint",
    "IlpModel",
    "build_ilp",
    "x_name",
]
