"""Relational diagrams, their components, and the singular-genome distance formulas.

Three diagrams share one representation:

* the relational diagram of two family-based singular genomes,
* the family-free relational diagram over a similarity graph,
* its capped version, in which every telomere is tied to a cap extremity.

Vertices are marker extremities (``"A.<marker>.t"``/``"A.<marker>.h"``) and
cap extremities (``"A.cap<i>"``), numbered A-markers, B-markers, A-caps,
B-caps, each block in chromosome reading order.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import NamedTuple

from .errors import CyclesOnly, NotCanonical, NotCircular, NotDecomposed, NotSingular
from .genome import HEAD, TAIL, Extremity
from .similarity import SIDE_A, SIDE_B

ADJ_A = "adjA"
ADJ_B = "adjB"
EXT = "ext"
INDEL_A = "indelA"
INDEL_B = "indelB"
CAP = "cap"

ADJACENCY_KINDS = (ADJ_A, ADJ_B)
INDEL_KINDS = (INDEL_A, INDEL_B)

AB_CYCLE = "AB-cycle"
CIRCULAR_SINGLETON = "circular-singleton"
AB_PATH = "AB-path"
AA_PATH = "AA-path"
BB_PATH = "BB-path"


class Edge(NamedTuple):
    kind: str
    u: int
    v: int
    weight: Fraction = Fraction(0)
    # sibling index for ext edges, marker id for indel edges, (i, j) cap indices for cap edges
    ref: object = None

    def other(self, w):
        return self.v if w == self.u else self.u


class SiblingPair(NamedTuple):
    tail_edge: int
    head_edge: int
    a: str
    b: str
    sigma: Fraction


@dataclass
class RelationalDiagram:
    genome_a: object
    genome_b: object
    vertices: list
    edges: list
    siblings: list
    indel_edge: dict  # (side, marker) -> edge index
    singular: bool = False
    capped: bool = False
    p_star: int = 0
    caps_a: list = field(default_factory=list)
    caps_b: list = field(default_factory=list)

    def __post_init__(self):
        self.index = {v: i for i, v in enumerate(self.vertices)}
        self.side = [v[0] for v in self.vertices]
        self.incident = [[] for _ in self.vertices]
        for k, e in enumerate(self.edges):
            self.incident[e.u].append(k)
            self.incident[e.v].append(k)

    def vertex(self, side, marker, end):
        return self.index[f"{side}.{marker}.{end}"]

    def edges_of(self, *kinds):
        return [k for k, e in enumerate(self.edges) if e.kind in kinds]

    def count(self, kind):
        return sum(1 for e in self.edges if e.kind == kind)

    @property
    def kappa_a(self):
        return self.genome_a.kappa

    @property
    def kappa_b(self):
        return self.genome_b.kappa

    def circular_chromosomes(self):
        """``(side, markers)`` for every circular chromosome of A then B."""
        out = []
        for side, g in ((SIDE_A, self.genome_a), (SIDE_B, self.genome_b)):
            for c in g.chromosomes:
                if not c.linear:
                    out.append((side, [m.marker for m in c.markers]))
        return out

    def dump(self):
        """Line-oriented listing of vertices and typed edges."""
        lines = [f"vertex {i + 1} {v}" for i, v in enumerate(self.vertices)]
        for k, e in enumerate(self.edges):
            lines.append(
                f"edge {k + 1} {e.kind} {self.vertices[e.u]} {self.vertices[e.v]} {e.weight}"
            )
        return "\n".join(lines) + "\n"


def _vid(side, ext):
    return f"{side}.{ext.marker}.{ext.side}"


def _base(genome_a, genome_b):
    vertices = []
    for side, g in ((SIDE_A, genome_a), (SIDE_B, genome_b)):
        for c in g.chromosomes:
            vertices.extend(_vid(side, x) for x in c.extremities())
    index = {v: i for i, v in enumerate(vertices)}
    edges = []
    for side, g, kind in ((SIDE_A, genome_a, ADJ_A), (SIDE_B, genome_b, ADJ_B)):
        for p, q in g.adjacencies():
            edges.append(Edge(kind, index[_vid(side, p)], index[_vid(side, q)]))
    return vertices, index, edges


def _add_indels(edges, index, side, markers, weights):
    kind = INDEL_A if side == SIDE_A else INDEL_B
    out = {}
    for m in markers:
        out[(side, m)] = len(edges)
        edges.append(
            Edge(kind, index[f"{side}.{m}.{TAIL}"], index[f"{side}.{m}.{HEAD}"], weights.get(m, Fraction(0)), m)
        )
    return out


def _add_siblings(edges, index, pairs):
    siblings = []
    for a, b, sigma in pairs:
        ref = len(siblings)
        t = len(edges)
        edges.append(Edge(EXT, index[f"A.{a}.{TAIL}"], index[f"B.{b}.{TAIL}"], sigma, ref))
        edges.append(Edge(EXT, index[f"A.{a}.{HEAD}"], index[f"B.{b}.{HEAD}"], sigma, ref))
        siblings.append(SiblingPair(t, t + 1, a, b, sigma))
    return siblings


def build_singular_diagram(genome_a, genome_b):
    """Relational diagram of two family-based singular genomes."""
    for g in (genome_a, genome_b):
        ids = g.markers
        if len(ids) != len(set(ids)):
            raise NotSingular(f"genome {g.name!r} has a repeated marker")
    vertices, index, edges = _base(genome_a, genome_b)
    in_b = set(genome_b.markers)
    common = [m for m in genome_a.markers if m in in_b]
    common_set = set(common)
    siblings = _add_siblings(edges, index, [(m, m, Fraction(1)) for m in sorted(common)])
    indels = {}
    indels.update(_add_indels(edges, index, SIDE_A, [m for m in genome_a.markers if m not in common_set], {}))
    indels.update(_add_indels(edges, index, SIDE_B, [m for m in genome_b.markers if m not in common_set], {}))
    return RelationalDiagram(genome_a, genome_b, vertices, edges, siblings, indels, singular=True)


def build_ffr(genome_a, genome_b, g):
    """Family-free relational diagram over similarity graph ``g``."""
    vertices, index, edges = _base(genome_a, genome_b)
    pairs = g.sorted_edges()
    siblings = _add_siblings(edges, index, pairs)
    wa, wb = {}, {}
    for a, b, s in pairs:
        wa[a] = max(wa.get(a, s), s)
        wb[b] = max(wb.get(b, s), s)
    indels = {}
    indels.update(_add_indels(edges, index, SIDE_A, genome_a.markers, wa))
    indels.update(_add_indels(edges, index, SIDE_B, genome_b.markers, wb))
    return RelationalDiagram(genome_a, genome_b, vertices, edges, siblings, indels)


def cap(d, kappa_a=None, kappa_b=None):
    """Capped diagram: ``p* = max(kappa_A, kappa_B)`` caps and artificial adjacencies."""
    kappa_a = d.kappa_a if kappa_a is None else kappa_a
    kappa_b = d.kappa_b if kappa_b is None else kappa_b
    if (kappa_a, kappa_b) != (d.kappa_a, d.kappa_b):
        raise ValueError("kappa counts do not match the genomes")
    p = max(kappa_a, kappa_b)
    vertices = list(d.vertices)
    caps = {}
    for side in (SIDE_A, SIDE_B):
        caps[side] = list(range(len(vertices), len(vertices) + 2 * p))
        vertices.extend(f"{side}.cap{i}" for i in range(1, 2 * p + 1))
    index = {v: i for i, v in enumerate(vertices)}

    def cap_adjacencies(side, genome, kappa, kind):
        out = []
        for i, t in enumerate(genome.telomeres()):
            out.append(Edge(kind, index[_vid(side, t)], caps[side][i]))
        for i in range(2 * kappa, 2 * p, 2):
            out.append(Edge(kind, caps[side][i], caps[side][i + 1]))
        return out

    old = d.edges
    adj_a = [e for e in old if e.kind == ADJ_A] + cap_adjacencies(SIDE_A, d.genome_a, kappa_a, ADJ_A)
    adj_b = [e for e in old if e.kind == ADJ_B] + cap_adjacencies(SIDE_B, d.genome_b, kappa_b, ADJ_B)
    rest = [e for e in old if e.kind not in ADJACENCY_KINDS]
    caps_e = [
        Edge(CAP, caps[SIDE_A][i], caps[SIDE_B][j], Fraction(0), (i, j))
        for i in range(2 * p)
        for j in range(2 * p)
    ]
    edges = adj_a + adj_b + rest + caps_e
    shift = len(adj_a) + len(adj_b) - sum(1 for e in old if e.kind in ADJACENCY_KINDS)
    siblings = [
        SiblingPair(s.tail_edge + shift, s.head_edge + shift, s.a, s.b, s.sigma) for s in d.siblings
    ]
    indels = {k: v + shift for k, v in d.indel_edge.items()}
    return RelationalDiagram(
        d.genome_a,
        d.genome_b,
        vertices,
        edges,
        siblings,
        indels,
        singular=d.singular,
        capped=True,
        p_star=p,
        caps_a=caps[SIDE_A],
        caps_b=caps[SIDE_B],
    )


def build_ffrc(genome_a, genome_b, g):
    return cap(build_ffr(genome_a, genome_b, g))


# -- components ---------------------------------------------------------------


@dataclass(frozen=True)
class Component:
    kind: str
    cycle: bool
    edges: tuple
    vertices: tuple
    edge_kinds: tuple

    @property
    def indel_genomes(self):
        return tuple(k[-1] for k in self.edge_kinds if k in INDEL_KINDS)

    @property
    def n_ext(self):
        return sum(1 for k in self.edge_kinds if k == EXT)

    @property
    def n_cap(self):
        return sum(1 for k in self.edge_kinds if k == CAP)

    @property
    def indel_free(self):
        return not self.indel_genomes

    @property
    def singleton(self):
        """Whole chromosome made of adjacency and indel edges only."""
        return self.n_ext == 0 and self.n_cap == 0 and bool(self.indel_genomes)

    @property
    def runs(self):
        return count_runs(self)

    @property
    def transitions(self):
        return count_transitions(self)


def count_runs(c):
    """Number of maximal same-genome indel-edge stretches in ``c``."""
    seq = c.indel_genomes
    if not seq:
        return 0
    changes = sum(1 for i in range(1, len(seq)) if seq[i] != seq[i - 1])
    if c.cycle:
        if seq[0] != seq[-1]:
            changes += 1
        return max(changes, 1)
    return changes + 1


def count_transitions(c):
    """Indel-free segments lying between runs of different genomes."""
    kinds = c.edge_kinds
    if c.cycle:
        first = next((i for i, k in enumerate(kinds) if k in INDEL_KINDS), None)
        if first is None:
            return 0
        kinds = kinds[first:] + kinds[:first + 1]
    count, last = 0, None
    for k in kinds:
        if k in INDEL_KINDS:
            if last is not None and k != last:
                count += 1
            last = k
    return count


def indel_potential(runs):
    if runs < 0:
        raise ValueError("run count must be non-negative")
    return 0 if runs == 0 else ceil(Fraction(runs + 1, 2))


def lambda_via_transitions(c):
    """Indel-potential of a cycle as ``r(C) + transitions/2``."""
    if not c.cycle:
        raise CyclesOnly("the transition formula applies to cycles only")
    r = 0 if c.indel_free else 1
    return r + Fraction(count_transitions(c), 2)


def _classify(d, cycle, edge_seq, vertex_seq):
    kinds = tuple(d.edges[k].kind for k in edge_seq)
    if cycle:
        kind = AB_CYCLE if (EXT in kinds or CAP in kinds) else CIRCULAR_SINGLETON
    else:
        ends = {d.side[vertex_seq[0]], d.side[vertex_seq[-1]]}
        kind = AB_PATH if len(ends) == 2 else (AA_PATH if ends == {SIDE_A} else BB_PATH)
    return Component(kind, cycle, tuple(edge_seq), tuple(vertex_seq), kinds)


def walk_components(d, selected):
    """Split the selected edge subset into paths and cycles."""
    inc = [[] for _ in d.vertices]
    for k in selected:
        e = d.edges[k]
        inc[e.u].append(k)
        inc[e.v].append(k)
    for v, ks in enumerate(inc):
        if len(ks) > 2:
            raise NotDecomposed(f"vertex {d.vertices[v]} has degree {len(ks)}")
    seen = [False] * len(d.vertices)
    comps = []

    def follow(start, first_edge):
        vs, es = [start], []
        seen[start] = True
        v, k = start, first_edge
        while k is not None:
            es.append(k)
            w = d.edges[k].other(v)
            if w == start:
                return vs, es, True
            vs.append(w)
            seen[w] = True
            nxt = [j for j in inc[w] if j != k]
            v, k = w, (nxt[0] if nxt else None)
        return vs, es, False

    # paths first, from their lower-numbered end
    for v in range(len(d.vertices)):
        if not seen[v] and len(inc[v]) <= 1:
            vs, es, _ = follow(v, inc[v][0] if inc[v] else None)
            if vs[-1] < vs[0]:
                vs, es = vs[::-1], es[::-1]
            comps.append((vs[0], _classify(d, False, es, vs)))
    for v in range(len(d.vertices)):
        if not seen[v]:
            a, b = inc[v]
            first = min((a, b), key=lambda k: (d.edges[k].other(v), k))
            vs, es, closed = follow(v, first)
            assert closed
            comps.append((v, _classify(d, True, es, vs)))
    comps.sort(key=lambda item: item[0])
    return [c for _, c in comps]


def decompose(d):
    """Components of a diagram in which every vertex has degree at most two."""
    return walk_components(d, range(len(d.edges)))


# -- distances of family-based singular genomes --------------------------------


def _common_and_exclusive(genome_a, genome_b):
    ma, mb = set(genome_a.markers), set(genome_b.markers)
    return ma & mb, (ma - mb) | (mb - ma)


def _cycles_paths(genome_a, genome_b):
    comps = decompose(build_singular_diagram(genome_a, genome_b))
    c = sum(1 for x in comps if x.kind == AB_CYCLE)
    i = sum(1 for x in comps if x.kind == AB_PATH)
    return comps, c, i


def dcj_distance_canonical(genome_a, genome_b):
    common, exclusive = _common_and_exclusive(genome_a, genome_b)
    if exclusive:
        raise NotCanonical(f"exclusive markers present: {sorted(exclusive)}")
    _, c, i = _cycles_paths(genome_a, genome_b)
    return len(common) - c - Fraction(i, 2)


def dcj_indel_circular(genome_a, genome_b):
    if genome_a.kappa or genome_b.kappa:
        raise NotCircular("both genomes must be entirely circular")
    common, _ = _common_and_exclusive(genome_a, genome_b)
    comps, c, _ = _cycles_paths(genome_a, genome_b)
    return Fraction(len(common) - c + sum(indel_potential(x.runs) for x in comps))


def dcj_indel_upper_bound(genome_a, genome_b):
    common, _ = _common_and_exclusive(genome_a, genome_b)
    comps, c, i = _cycles_paths(genome_a, genome_b)
    return len(common) - c - Fraction(i, 2) + sum(indel_potential(x.runs) for x in comps)
