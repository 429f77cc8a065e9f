"""Small hand-checked instances shared by the test modules."""

from fractions import Fraction
from pathlib import Path

from ffdist.genome import Genome
from ffdist.similarity import SimilarityGraph, apply_threshold

DATA = Path(__file__).parent / "data"

# five markers against six, eleven similarity edges
TOY_EDGES = {
    ("1", "6"): "0.6",
    ("1", "7"): "0.1",
    ("1", "9"): "0.5",
    ("2", "7"): "0.3",
    ("2", "8"): "0.2",
    ("3", "7"): "0.3",
    ("3", "9"): "0.9",
    ("4", "8"): "0.9",
    ("4", "10"): "0.3",
    ("5", "10"): "0.7",
    ("5", "11"): "0.8",
}

M1 = [("1", "9"), ("2", "8"), ("3", "7"), ("5", "10")]
M2 = [("1", "6"), ("2", "7"), ("3", "9"), ("4", "8"), ("5", "11")]
M3 = [("1", "6"), ("3", "9"), ("4", "8"), ("5", "11")]
# maximal at threshold 0.1, reaches unweighted distance 2
M_BEST_UNWEIGHTED = [("1", "9"), ("2", "8"), ("3", "7"), ("4", "10"), ("5", "11")]

# two matchings of the graph at threshold 0.5
M1_HALF = [("1", "9"), ("4", "8"), ("5", "10")]
M2_HALF = M3


def toy_genomes():
    return Genome.from_strings("A", "1 2 3 4 5 |"), Genome.from_strings("B", "6 -7 -8 -9 10 11 |")


def toy(x="0.1"):
    a, b = toy_genomes()
    g = SimilarityGraph.between(a, b, TOY_EDGES)
    return a, b, apply_threshold(g, Fraction(x))


def two_chromosome_pair():
    """Singular genomes with common and exclusive markers on two chromosomes each."""
    return (
        Genome.from_strings("A", "-6 1 5 3 4 |", "2 8 9 |"),
        Genome.from_strings("B", "-6 5 -3 4 -7 2 |", "9 8 |"),
    )


def four_run_pair():
    """Its singular diagram contains a BB-path with four runs."""
    return Genome.from_strings("A", "3 -a2 5 -a0 4 -a1 |"), Genome.from_strings("B", "-3 -4 -b0 5 -b1 |")


def chroms(genome):
    """Genome as ``[(signed tokens, circular)]`` for the oracles."""
    return [([str(m) for m in c.markers], not c.linear) for c in genome.chromosomes]
