"""Seeded generator of genome pairs and similarity tables.

Random numbers come from SplitMix64 (Steele, Lea and Flood 2014), which is
short enough to re-implement anywhere:

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    output z ^ (z >> 31)

Bounded integers use rejection sampling on the full 64-bit output and
floats take the top 53 bits.

Construction order: genome A with markers ``a1..an``; duplications inside
A (the copy sits right after the original, with similarity 1 to the
original's partner); B as a relabeled copy ``b1..bn``; random DCJs on B;
single-marker insertions or deletions on B; similarities.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadParams
from .genome import CIRCULAR, HEAD, LINEAR, TAIL, Chromosome, Extremity, Genome, Occurrence
from .numbers import format_decimal

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & _MASK

    def next(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n):
        """Uniform integer in ``[0, n)``."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next()
            if x < limit:
                return x % n

    def random(self):
        return (self.next() >> 11) / float(1 << 53)

    def coin(self):
        return self.below(2) == 1

    def shuffle(self, items):
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


@dataclass(frozen=True)
class SimParams:
    markers: int = 10
    chromosomes: int = 1
    circular_fraction: float = 0.0
    dcj: int = 0
    indels: int = 0
    duplications: int = 0
    noise: float = 0.0
    name_a: str = "A"
    name_b: str = "B"

    def validate(self):
        if self.markers < 1:
            raise BadParams("need at least one marker")
        if not 1 <= self.chromosomes <= self.markers:
            raise BadParams("chromosome count must lie between 1 and the marker count")
        if not 0 <= self.circular_fraction <= 1:
            raise BadParams("circular fraction must lie in [0, 1]")
        if not 0 <= self.noise <= 1:
            raise BadParams("noise must lie in [0, 1]")
        for field_name in ("dcj", "indels", "duplications"):
            if getattr(self, field_name) < 0:
                raise BadParams(f"{field_name} must be non-negative")
        if self.indels > self.markers:
            raise BadParams("more indels than markers could delete every marker")
        if self.name_a == self.name_b:
            raise BadParams("the two genomes need distinct names")


def _adjacency_map(chroms):
    """Extremity -> neighbouring extremity for a list of ``(occurrences, topology)``."""
    adj = {}
    for occs, topo in chroms:
        ext = Chromosome(tuple(occs), LINEAR).extremities()
        for i in range(1, len(ext) - 1, 2):
            adj[ext[i]] = ext[i + 1]
            adj[ext[i + 1]] = ext[i]
        if topo == CIRCULAR:
            adj[ext[-1]] = ext[0]
            adj[ext[0]] = ext[-1]
    return adj


def _rebuild(order, adj):
    """Chromosomes from an adjacency map; linear ones first, by ``order``."""
    placed, chroms = set(), []

    def walk(start):
        occs, ext = [], start
        while True:
            m = ext.marker
            placed.add(m)
            occs.append(Occurrence(m, ext.side == HEAD))
            other = ext.other()
            if other not in adj:
                return occs, False
            ext = adj[other]
            if ext == start:
                return occs, True

    for m in order:
        for side in (TAIL, HEAD):
            ext = Extremity(m, side)
            if m not in placed and ext not in adj:
                occs, _ = walk(ext)
                chroms.append([occs, LINEAR])
    for m in order:
        if m not in placed:
            occs, _ = walk(Extremity(m, TAIL))
            chroms.append([occs, CIRCULAR])
    return chroms


def _random_dcj(rng, chroms, order):
    adj = _adjacency_map(chroms)
    elements = []
    seen = set()
    for occs, _ in chroms:
        for x in Chromosome(tuple(occs), LINEAR).extremities():
            if x in seen:
                continue
            if x in adj:
                seen.add(adj[x])
                elements.append((x, adj[x]))
            else:
                elements.append((x,))
            seen.add(x)
    if len(elements) < 2:
        raise BadParams("genome too small for a DCJ")
    i = rng.below(len(elements))
    j = rng.below(len(elements) - 1)
    if j >= i:
        j += 1
    first, second = elements[i], elements[j]
    for e in first + second:
        adj.pop(e, None)
    if len(first) == 2 and len(second) == 2:
        p, q = first
        r, s = second
        pairs = [(p, r), (q, s)] if rng.coin() else [(p, s), (q, r)]
    elif len(first) == 1 and len(second) == 1:
        pairs = [(first[0], second[0])]
    else:
        two, one = (first, second) if len(first) == 2 else (second, first)
        keep = rng.below(2)
        pairs = [(two[keep], one[0])]
    for u, v in pairs:
        adj[u] = v
        adj[v] = u
    return _rebuild(order, adj)


def _decimal(x):
    return Fraction(round(x * 1000), 1000)


def simulate_pair(params, seed):
    """``(genome A, genome B, similarity TSV text)`` drawn from ``seed``."""
    params.validate()
    rng = SplitMix64(seed)
    n = params.markers

    # genome A
    ids = [f"a{i}" for i in range(1, n + 1)]
    cuts = []
    if params.chromosomes > 1:
        positions = list(range(1, n))
        rng.shuffle(positions)
        cuts = sorted(positions[: params.chromosomes - 1])
    bounds = [0] + cuts + [n]
    chroms_a = []
    for k in range(params.chromosomes):
        occs = [Occurrence(m, rng.coin()) for m in ids[bounds[k]:bounds[k + 1]]]
        topo = CIRCULAR if rng.random() < params.circular_fraction else LINEAR
        chroms_a.append([occs, topo])

    partner = {f"a{i}": f"b{i}" for i in range(1, n + 1)}
    homologs = {}  # (a, b) -> sigma
    next_a = n + 1
    for _ in range(params.duplications):
        total = sum(len(c[0]) for c in chroms_a)
        pick = rng.below(total)
        for c in chroms_a:
            if pick < len(c[0]):
                orig = c[0][pick]
                copy = Occurrence(f"a{next_a}", orig.reverse)
                c[0].insert(pick + 1, copy)
                homologs[(copy.marker, partner[orig.marker])] = Fraction(1)
                next_a += 1
                break
            pick -= len(c[0])

    # genome B: relabeled copy of the original markers only
    chroms_b = []
    for occs, topo in chroms_a:
        kept = [Occurrence(partner[o.marker], o.reverse) for o in occs if o.marker in partner]
        if kept:
            chroms_b.append([kept, topo])
    order_b = [o.marker for c in chroms_b for o in c[0]]
    for _ in range(params.dcj):
        chroms_b = _random_dcj(rng, chroms_b, order_b)

    next_b = n + 1
    deleted = set()
    for _ in range(params.indels):
        total = sum(len(c[0]) for c in chroms_b)
        if rng.coin() and total > 1:
            pick = rng.below(total)
            for c in chroms_b:
                if pick < len(c[0]):
                    deleted.add(c[0].pop(pick).marker)
                    break
                pick -= len(c[0])
            chroms_b = [c for c in chroms_b if c[0]]
        else:
            k = rng.below(len(chroms_b))
            pos = rng.below(len(chroms_b[k][0]) + 1)
            chroms_b[k][0].insert(pos, Occurrence(f"b{next_b}", rng.coin()))
            next_b += 1

    genome_a = Genome(params.name_a, tuple(Chromosome(tuple(o), t) for o, t in chroms_a))
    genome_b = Genome(params.name_b, tuple(Chromosome(tuple(o), t) for o, t in chroms_b))

    edges = {}
    for a in ids:
        b = partner[a]
        if b not in deleted:
            edges[(a, b)] = max(_decimal(1 - params.noise * rng.random()), Fraction(1, 1000))
    for (a, b), s in homologs.items():
        if b not in deleted:
            edges[(a, b)] = s
    markers_a, markers_b = genome_a.markers, genome_b.markers
    spurious = round(params.noise * n)
    attempts = 0
    while spurious > 0 and attempts < 100 * (spurious + 1):
        attempts += 1
        a = markers_a[rng.below(len(markers_a))]
        b = markers_b[rng.below(len(markers_b))]
        if (a, b) in edges:
            continue
        edges[(a, b)] = max(_decimal(params.noise * rng.random() / 2), Fraction(1, 1000))
        spurious -= 1
    tsv = "".join(f"{a}\t{b}\t{format_decimal(s)}\n" for (a, b), s in sorted(edges.items()))
    return genome_a, genome_b, tsv
