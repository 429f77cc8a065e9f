"""Marker similarity graph between the markers of two genomes."""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DuplicatePair, ParseError, SimilarityRange, UnknownMarker
from .numbers import format_decimal, parse_decimal

SIDE_A = "A"
SIDE_B = "B"


@dataclass(frozen=True)
class SimilarityGraph:
    """Weighted bipartite graph; ``edges`` maps ``(idA, idB)`` to sigma.

    ``threshold`` is ``None`` for an unfiltered graph, otherwise the cutting
    threshold ``x`` the graph was produced with.
    """

    markers_a: frozenset
    markers_b: frozenset
    edges: dict = field(default_factory=dict, hash=False)
    threshold: Fraction = None

    def __post_init__(self):
        for (a, b), s in self.edges.items():
            if a not in self.markers_a or b not in self.markers_b:
                raise UnknownMarker(f"edge ({a}, {b}) leaves the genome marker sets")
            if not 0 <= s <= 1:
                raise SimilarityRange(f"similarity {s} of ({a}, {b}) outside [0, 1]")

    @classmethod
    def between(cls, genome_a, genome_b, edges=(), threshold=None):
        if isinstance(edges, dict):
            edges = edges.items()
        return cls(
            frozenset(genome_a.markers),
            frozenset(genome_b.markers),
            {(str(a), str(b)): Fraction(s) for (a, b), s in edges},
            threshold,
        )

    def __len__(self):
        return len(self.edges)

    def sorted_edges(self):
        """Edges as ``(a, b, sigma)`` sorted by ``(idA, idB)``."""
        return [(a, b, s) for (a, b), s in sorted(self.edges.items())]

    def incident(self, marker, side):
        if side == SIDE_A:
            return {b: s for (a, b), s in self.edges.items() if a == marker}
        return {a: s for (a, b), s in self.edges.items() if b == marker}

    def transposed(self):
        return SimilarityGraph(
            self.markers_b, self.markers_a, {(b, a): s for (a, b), s in self.edges.items()}, self.threshold
        )

    def to_tsv(self):
        return "".join(f"{a}\t{b}\t{format_decimal(s)}\n" for a, b, s in self.sorted_edges())


def parse_similarities(text, genome_a, genome_b):
    """Parse ``idA<TAB>idB<TAB>sigma`` rows into an unfiltered graph."""
    ma, mb = frozenset(genome_a.markers), frozenset(genome_b.markers)
    edges = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        cols = line.split()
        if len(cols) != 3:
            raise ParseError(f"expected 3 columns, got {len(cols)}", lineno)
        a, b, raw_sigma = cols
        try:
            sigma = parse_decimal(raw_sigma, max_digits=6)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        if a not in ma:
            raise UnknownMarker(f"marker {a!r} not in genome {genome_a.name!r}", lineno)
        if b not in mb:
            raise UnknownMarker(f"marker {b!r} not in genome {genome_b.name!r}", lineno)
        if not 0 <= sigma <= 1:
            raise SimilarityRange(f"similarity {raw_sigma} outside [0, 1]", lineno)
        if (a, b) in edges:
            raise DuplicatePair(f"pair ({a}, {b}) listed twice", lineno)
        edges[(a, b)] = sigma
    return SimilarityGraph(ma, mb, edges, None)


def apply_threshold(g, x):
    """Keep edges with sigma >= x; at x == 0 keep only sigma > 0."""
    x = Fraction(x)
    if x == 0:
        kept = {e: s for e, s in g.edges.items() if s > 0}
    else:
        kept = {e: s for e, s in g.edges.items() if s >= x}
    return SimilarityGraph(g.markers_a, g.markers_b, kept, x)


def indel_weight(marker, g, side=None):
    """Maximum similarity among the edges incident to ``marker`` (0 if none)."""
    if side is None:
        in_a, in_b = marker in g.markers_a, marker in g.markers_b
        if in_a == in_b:
            raise UnknownMarker(f"cannot tell which genome marker {marker!r} belongs to")
        side = SIDE_A if in_a else SIDE_B
    return max(g.incident(marker, side).values(), default=Fraction(0))
