"""Genomes, chromosomes and marker extremities, plus the genome file format.

File grammar (UniMoG style)::

    # comment
    >A
    1 -2 3 |        linear chromosome
    4 5 )           circular chromosome

A line starting with ``>`` opens a new genome; every following non-blank,
non-comment line holds exactly one chromosome whose last token is ``|``
(linear) or ``)`` (circular).  The terminator may also be glued to the last
marker (``3|``).  Marker ids are opaque strings.
"""

import re
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import DuplicateMarker, EmptyChromosome, ParseError

LINEAR = "linear"
CIRCULAR = "circular"
TAIL = "t"
HEAD = "h"

_TERMINATORS = {"|": LINEAR, ")": CIRCULAR}
_MARKER_TOKEN = re.compile(r"^([+-]?)([^\s|()#>+-][^\s|()#>]*)$")


class Occurrence(NamedTuple):
    """A marker read in direct (``reverse=False``) or reverse orientation."""

    marker: str
    reverse: bool = False

    def flipped(self):
        return Occurrence(self.marker, not self.reverse)

    def __str__(self):
        return ("-" if self.reverse else "") + self.marker


class Extremity(NamedTuple):
    marker: str
    side: str  # TAIL or HEAD

    def other(self):
        return Extremity(self.marker, HEAD if self.side == TAIL else TAIL)


def occ(token):
    """Shorthand: ``occ("-3")`` is marker 3 in reverse orientation."""
    token = str(token)
    if token.startswith("-"):
        return Occurrence(token[1:], True)
    return Occurrence(token.lstrip("+"), False)


def _canonical_circle(markers):
    ids = [m.marker for m in markers]
    first = min(ids)
    k = ids.index(first)
    if markers[k].reverse:
        markers = [m.flipped() for m in reversed(markers)]
        k = len(markers) - 1 - k
    return tuple(markers[k:] + markers[:k])


@dataclass(frozen=True)
class Chromosome:
    markers: tuple
    topology: str = LINEAR

    def __post_init__(self):
        markers = [m if isinstance(m, Occurrence) else occ(m) for m in self.markers]
        if not markers:
            raise EmptyChromosome("chromosome without markers")
        if self.topology not in (LINEAR, CIRCULAR):
            raise ValueError(f"unknown topology {self.topology!r}")
        if self.topology == CIRCULAR:
            markers = _canonical_circle(markers)
        object.__setattr__(self, "markers", tuple(markers))

    @property
    def linear(self):
        return self.topology == LINEAR

    def __len__(self):
        return len(self.markers)

    def extremities(self):
        """Extremities in reading order (tail before head for direct markers)."""
        out = []
        for m in self.markers:
            t, h = Extremity(m.marker, TAIL), Extremity(m.marker, HEAD)
            out.extend((h, t) if m.reverse else (t, h))
        return out

    def adjacencies(self):
        ext = self.extremities()
        pairs = [(ext[i], ext[i + 1]) for i in range(1, len(ext) - 1, 2)]
        if not self.linear:
            pairs.append((ext[-1], ext[0]))
        return pairs

    def telomeres(self):
        if not self.linear:
            return []
        ext = self.extremities()
        return [ext[0], ext[-1]]

    def reversed(self):
        return Chromosome(tuple(m.flipped() for m in reversed(self.markers)), self.topology)

    def render(self):
        return " ".join(map(str, self.markers)) + (" |" if self.linear else " )")


@dataclass(frozen=True)
class Genome:
    name: str
    chromosomes: tuple = ()
    unique: bool = field(default=True, compare=False)

    def __post_init__(self):
        chroms = tuple(
            c if isinstance(c, Chromosome) else Chromosome(tuple(c)) for c in self.chromosomes
        )
        object.__setattr__(self, "chromosomes", chroms)
        if self.unique:
            seen = set()
            for c in chroms:
                for m in c.markers:
                    if m.marker in seen:
                        raise DuplicateMarker(f"marker {m.marker!r} occurs twice in genome {self.name!r}")
                    seen.add(m.marker)

    @classmethod
    def from_strings(cls, name, *chromosomes, unique=True):
        """Build from strings like ``"1 -2 3 |"`` or ``"4 5 )"``."""
        return cls(name, tuple(_chromosome_from_text(c, None) for c in chromosomes), unique=unique)

    @property
    def markers(self):
        return [m.marker for c in self.chromosomes for m in c.markers]

    @property
    def kappa(self):
        """Number of linear chromosomes."""
        return sum(1 for c in self.chromosomes if c.linear)

    def __len__(self):
        return sum(len(c) for c in self.chromosomes)

    def adjacencies(self):
        return [a for c in self.chromosomes for a in c.adjacencies()]

    def telomeres(self):
        return [t for c in self.chromosomes for t in c.telomeres()]

    def renamed(self, name):
        return Genome(name, self.chromosomes, unique=self.unique)

    def relabeled(self, mapping, name=None):
        chroms = tuple(
            Chromosome(tuple(Occurrence(mapping[m.marker], m.reverse) for m in c.markers), c.topology)
            for c in self.chromosomes
        )
        return Genome(self.name if name is None else name, chroms, unique=self.unique)

    def render(self):
        lines = [f">{self.name}"] + [c.render() for c in self.chromosomes]
        return "\n".join(lines) + "\n"


def genome_stats(g):
    """Return ``(markers, linear chromosomes, circular chromosomes, telomeres)``."""
    kappa = g.kappa
    return len(g), kappa, len(g.chromosomes) - kappa, 2 * kappa


def _chromosome_from_text(text, lineno):
    tokens = text.split()
    if not tokens:
        raise EmptyChromosome("empty chromosome", lineno)
    last = tokens[-1]
    if last in _TERMINATORS:
        tokens.pop()
    elif last[-1] in _TERMINATORS:
        tokens[-1] = last[:-1]
    else:
        raise ParseError(f"chromosome must end with '|' or ')': {text.strip()!r}", lineno)
    topology = _TERMINATORS[last[-1]]
    if not tokens:
        raise EmptyChromosome("empty chromosome", lineno)
    markers = []
    for tok in tokens:
        match = _MARKER_TOKEN.match(tok)
        if not match:
            raise ParseError(f"malformed marker token {tok!r}", lineno)
        markers.append(Occurrence(match.group(2), match.group(1) == "-"))
    return Chromosome(tuple(markers), topology)


def parse_genomes(text, unique=True):
    """Parse genome file contents into a list of :class:`Genome`."""
    genomes = []
    name, chroms, start = None, [], 0

    def close():
        if name is None:
            return
        try:
            genomes.append(Genome(name, tuple(chroms), unique=unique))
        except DuplicateMarker as exc:
            raise DuplicateMarker(str(exc), start) from None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith(">"):
            close()
            name, chroms, start = line[1:].strip(), [], lineno
            if not name:
                raise ParseError("genome header without a name", lineno)
            continue
        if name is None:
            raise ParseError("chromosome before any '>' genome header", lineno)
        chroms.append(_chromosome_from_text(line, lineno))
    close()
    return genomes


parse_genome = parse_genomes


def render_genomes(genomes):
    return "".join(g.render() for g in genomes)
