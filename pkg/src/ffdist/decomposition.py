"""Sibling-sets, capping-sets and the consistent decompositions they induce."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .diagram import (
    AB_CYCLE,
    ADJACENCY_KINDS,
    CIRCULAR_SINGLETON,
    walk_components,
)
from .errors import CappedOnly, NotASiblingSet, NotMaximalCapping
from .similarity import SIDE_A, SIDE_B


@dataclass(frozen=True)
class SiblingSet:
    """Selected sibling pairs, as indices into ``diagram.siblings``."""

    pairs: frozenset = frozenset()

    @classmethod
    def from_matching(cls, d, matching):
        lookup = {(s.a, s.b): k for k, s in enumerate(d.siblings)}
        try:
            return cls(frozenset(lookup[(str(a), str(b))] for a, b in matching))
        except KeyError as exc:
            raise NotASiblingSet(f"{exc.args[0]} is not a similarity edge") from None

    def __len__(self):
        # number of extremity edges, two per pair
        return 2 * len(self.pairs)

    def matching(self, d):
        return sorted((d.siblings[k].a, d.siblings[k].b) for k in self.pairs)

    def weight(self, d):
        return 2 * sum((d.siblings[k].sigma for k in self.pairs), Fraction(0))


@dataclass(frozen=True)
class CappingSet:
    """``perm[i] = j`` joins A-cap ``i`` to B-cap ``j`` (0-based)."""

    perm: tuple = ()

    def edges(self, d):
        width = 2 * d.p_star
        first = min((k for k, e in enumerate(d.edges) if e.kind == "cap"), default=0)
        return [first + i * width + j for i, j in enumerate(self.perm)]


def check_sibling_set(d, s):
    used_a, used_b = set(), set()
    for k in s.pairs:
        if not 0 <= k < len(d.siblings):
            raise NotASiblingSet(f"no sibling pair with index {k}")
        a, b = d.siblings[k].a, d.siblings[k].b
        if a in used_a or b in used_b:
            raise NotASiblingSet(f"pair ({a}, {b}) shares a marker with another selected pair")
        used_a.add(a)
        used_b.add(b)
    return used_a, used_b


def check_capping_set(d, p):
    if sorted(p.perm) != list(range(2 * d.p_star)):
        raise NotMaximalCapping(f"capping-set must pair all {2 * d.p_star} caps of each genome")


@dataclass
class ConsistentDecomposition:
    diagram: object
    siblings: SiblingSet
    capping: CappingSet
    selected: tuple
    components: list
    w_s: Fraction
    w_tilde: Fraction

    @property
    def capped(self):
        return self.diagram.capped

    @property
    def size(self):
        return len(self.siblings)

    @property
    def cycles(self):
        return sum(1 for c in self.components if c.kind == AB_CYCLE)

    @property
    def indel_free_cycles(self):
        return sum(1 for c in self.components if c.kind == AB_CYCLE and c.indel_free)

    @property
    def singletons(self):
        return sum(1 for c in self.components if c.kind == CIRCULAR_SINGLETON)

    @property
    def transitions(self):
        return sum(c.transitions for c in self.components if c.cycle)

    def kinds(self):
        out = {}
        for c in self.components:
            out[c.kind] = out.get(c.kind, 0) + 1
        return out


def induce(d, s, p=None):
    """Decomposition made of all adjacencies, ``s``, the unmatched indel edges and ``p``."""
    used_a, used_b = check_sibling_set(d, s)
    if d.capped:
        if p is None:
            raise NotMaximalCapping("a capping-set is required on a capped diagram")
        check_capping_set(d, p)
    elif p is not None and p.perm:
        raise NotMaximalCapping("capping-set given for an uncapped diagram")
    selected = [k for k, e in enumerate(d.edges) if e.kind in ADJACENCY_KINDS]
    for k in sorted(s.pairs):
        selected += [d.siblings[k].tail_edge, d.siblings[k].head_edge]
    w_tilde = Fraction(0)
    for (side, m), k in d.indel_edge.items():
        if m not in (used_a if side == SIDE_A else used_b):
            selected.append(k)
            w_tilde += d.edges[k].weight
    if d.capped:
        selected += p.edges(d)
    p = p if p is not None else CappingSet()
    return ConsistentDecomposition(
        d, s, p, tuple(selected), walk_components(d, selected), s.weight(d), w_tilde
    )


def _require_capped(q):
    if not q.capped:
        raise CappedOnly("distance evaluation needs a decomposition of the capped diagram")


def evaluate_unweighted(q):
    _require_capped(q)
    return (
        q.diagram.p_star
        + Fraction(q.size, 2)
        - q.indel_free_cycles
        + q.singletons
        + Fraction(q.transitions, 2)
    )


def evaluate_weighted(q):
    _require_capped(q)
    return (
        q.diagram.p_star
        + q.size
        - q.indel_free_cycles
        + q.singletons
        + Fraction(q.transitions, 2)
        - q.w_s / 2
        + q.w_tilde
    )


def all_cappings(p_star):
    return [CappingSet(perm) for perm in permutations(range(2 * p_star))]


def best_over_cappings(d, s, weighted=True):
    """``(value, capping)`` minimizing the chosen evaluation for a fixed ``s``."""
    evaluate = evaluate_weighted if weighted else evaluate_unweighted
    best = None
    for p in all_cappings(d.p_star):
        v = evaluate(induce(d, s, p))
        if best is None or v < best[0]:
            best = (v, p)
    return best


__all__ = [
    "SiblingSet",
    "CappingSet",
    "ConsistentDecomposition",
    "induce",
    "evaluate_unweighted",
    "evaluate_weighted",
    "best_over_cappings",
    "all_cappings",
    "check_sibling_set",
    "check_capping_set",
]
