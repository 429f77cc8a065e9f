"""Exhaustive distances for small instances, used as the reference oracle.

Every sibling-set (matching of the similarity graph) is combined with every
maximal capping-set; nothing is pruned.  Matchings are enumerated over the
edges sorted by ``(idA, idB)``, leaving an edge out before taking it, and
cappings in lexicographic permutation order.  The first minimum found wins.
"""

from array import array
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import NamedTuple

from . import kernels
from .decomposition import CappingSet, SiblingSet, induce
from .diagram import CAP, EXT, INDEL_A, INDEL_B, build_ffrc
from .errors import NotBalanced, TooLarge
from .genome import Chromosome, Genome, Occurrence
from .similarity import SIDE_A, SimilarityGraph

_STEP = {EXT: kernels.EXT_STEP, CAP: kernels.CAP_STEP, INDEL_A: kernels.INDEL_A_STEP, INDEL_B: kernels.INDEL_B_STEP}


@dataclass(frozen=True)
class Limits:
    max_edges: int = 20
    max_caps: int = 3
    max_free: int = 24


class ExactResult(NamedTuple):
    distance: Fraction
    matching: list
    capping: CappingSet


def check_limits(g, p_star, limits):
    if len(g) > limits.max_edges:
        raise TooLarge(f"{len(g)} similarity edges exceed the oracle limit of {limits.max_edges}; use the ILP path")
    if p_star > limits.max_caps:
        raise TooLarge(f"{p_star} cap pairs exceed the oracle limit of {limits.max_caps}; use the ILP path")


def iter_matchings(d, maximal_only=False):
    """Sibling-index tuples of every matching, in the documented order."""
    sib = d.siblings
    n = len(sib)
    used_a, used_b = set(), set()
    chosen = []

    def maximal():
        return all(s.a in used_a or s.b in used_b for s in sib)

    def rec(i):
        if i == n:
            if not maximal_only or maximal():
                yield tuple(chosen)
            return
        yield from rec(i + 1)
        s = sib[i]
        if s.a not in used_a and s.b not in used_b:
            used_a.add(s.a)
            used_b.add(s.b)
            chosen.append(i)
            yield from rec(i + 1)
            chosen.pop()
            used_a.discard(s.a)
            used_b.discard(s.b)

    yield from rec(0)


class _Sweep:
    """Flat arrays describing a capped diagram for the cycle kernels."""

    def __init__(self, d):
        self.d = d
        n = len(d.vertices)
        self.adj_mate = array("q", [0] * n)
        for e in d.edges:
            if e.kind in ("adjA", "adjB"):
                self.adj_mate[e.u] = e.v
                self.adj_mate[e.v] = e.u
        self.caps_a = array("q", d.caps_a)
        self.caps_b = array("q", d.caps_b)
        perms = list(permutations(range(2 * d.p_star)))
        self.perms = perms
        self.flat = array("q", [j for p in perms for j in p])
        self.indel = {}  # (side, marker) -> edge
        for key, k in d.indel_edge.items():
            self.indel[key] = d.edges[k]

    def base(self, pairs):
        """``oth_mate``/``oth_kind`` for sibling pairs ``pairs`` (caps left unset)."""
        d = self.d
        n = len(d.vertices)
        mate = array("q", [0] * n)
        kind = array("q", [0] * n)
        used = set()
        for k in pairs:
            s = d.siblings[k]
            used.add((SIDE_A, s.a))
            used.add(("B", s.b))
            for ek in (s.tail_edge, s.head_edge):
                e = d.edges[ek]
                mate[e.u], mate[e.v] = e.v, e.u
                kind[e.u] = kind[e.v] = kernels.EXT_STEP
        w_tilde = Fraction(0)
        for key, e in self.indel.items():
            if key not in used:
                mate[e.u], mate[e.v] = e.v, e.u
                kind[e.u] = kind[e.v] = _STEP[e.kind]
                w_tilde += e.weight
        return mate, kind, w_tilde

    def best(self, pairs):
        """Smallest ``2*(-free + singletons) + transitions`` over cappings and its index."""
        mate, kind, w_tilde = self.base(pairs)
        out = array("q", [0] * (4 * len(self.perms)))
        kernels.capping_sweep(self.adj_mate, mate, kind, self.caps_a, self.caps_b, self.flat, out)
        best, arg = None, 0
        for k in range(len(self.perms)):
            v = 2 * (out[4 * k + 2] - out[4 * k + 1]) + out[4 * k + 3]
            if best is None or v < best:
                best, arg = v, k
        return best, arg, w_tilde


def _minimize(d, matchings, weighted):
    sweep = _Sweep(d)
    best = None
    for pairs in matchings:
        half, arg, w_tilde = sweep.best(pairs)
        size = 2 * len(pairs)
        if weighted:
            w_s = 2 * sum((d.siblings[k].sigma for k in pairs), Fraction(0))
            value = d.p_star + size - w_s / 2 + w_tilde + Fraction(half, 2)
        else:
            value = d.p_star + Fraction(size, 2) + Fraction(half, 2)
        if best is None or value < best[0]:
            best = (value, pairs, arg)
    value, pairs, arg = best
    matching = [(d.siblings[k].a, d.siblings[k].b) for k in pairs]
    return ExactResult(value, matching, CappingSet(sweep.perms[arg]))


def ffd_exact(genome_a, genome_b, g, limits=Limits()):
    """Weighted distance: minimum over all matchings and all cappings."""
    d = build_ffrc(genome_a, genome_b, g)
    check_limits(g, d.p_star, limits)
    return _minimize(d, iter_matchings(d), True)


def unwffd_exact(genome_a, genome_b, g, limits=Limits()):
    """Unweighted distance: minimum over maximal matchings and all cappings."""
    d = build_ffrc(genome_a, genome_b, g)
    check_limits(g, d.p_star, limits)
    return _minimize(d, iter_matchings(d, maximal_only=True), False)


def identity_similarities(genome_a, genome_b):
    common = set(genome_a.markers) & set(genome_b.markers)
    return SimilarityGraph.between(genome_a, genome_b, {(m, m): 1 for m in common})


def singular_dcj_indel_exact(genome_a, genome_b, limits=Limits()):
    """DCJ-indel distance of family-based singular genomes.

    All common markers are matched to themselves and only the capping is
    minimized over.
    """
    from .diagram import build_singular_diagram

    build_singular_diagram(genome_a, genome_b)  # rejects repeated markers
    g = identity_similarities(genome_a, genome_b)
    d = build_ffrc(genome_a, genome_b, g)
    if d.p_star > limits.max_caps:
        raise TooLarge(f"{d.p_star} cap pairs exceed the oracle limit of {limits.max_caps}")
    return _minimize(d, [tuple(range(len(d.siblings)))], False).distance


def iter_decompositions(genome_a, genome_b, g, maximal_only=False, limits=Limits()):
    """Every consistent decomposition of the capped diagram (slow, for checks)."""
    d = build_ffrc(genome_a, genome_b, g)
    check_limits(g, d.p_star, limits)
    perms = [CappingSet(p) for p in permutations(range(2 * d.p_star))]
    for pairs in iter_matchings(d, maximal_only):
        s = SiblingSet(frozenset(pairs))
        for p in perms:
            yield induce(d, s, p)


def balanced_reduction(genome_a, genome_b):
    """Family-free instance from two balanced family-based genomes.

    The ``k``-th occurrence of family ``m`` becomes marker ``m_a<k>`` in A
    and ``m_b<k>`` in B; similarity 1 joins every A and B occurrence of the
    same family.
    """
    ca, cb = Counter(genome_a.markers), Counter(genome_b.markers)
    if ca != cb:
        raise NotBalanced("genomes do not share the same multiset of markers")

    def rename(genome, tag):
        seen = Counter()
        chroms = []
        for c in genome.chromosomes:
            occs = []
            for o in c.markers:
                seen[o.marker] += 1
                occs.append(Occurrence(f"{o.marker}_{tag}{seen[o.marker]}", o.reverse))
            chroms.append(Chromosome(tuple(occs), c.topology))
        return Genome(genome.name, tuple(chroms))

    a, b = rename(genome_a, "a"), rename(genome_b, "b")
    edges = {}
    for m, count in sorted(ca.items()):
        for i in range(1, count + 1):
            for j in range(1, count + 1):
                edges[(f"{m}_a{i}", f"{m}_b{j}")] = 1
    return a, b, SimilarityGraph.between(a, b, edges, threshold=Fraction(1))
