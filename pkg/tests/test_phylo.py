import random
from fractions import Fraction

import pytest

from fixtures import toy
from oracles import edge_splits, nested_edges, random_tree, tree_distances
from ffdist.errors import InvalidMatrix, MissingSimilarities, ParseError, TooLarge
from ffdist.exact import Limits
from ffdist.genome import Genome
from ffdist.phylo import (
    DistanceMatrix,
    Node,
    Tree,
    lookup_similarities,
    neighbor_joining,
    pairwise_matrix,
    parse_newick,
    parse_phylip,
    reroot_outgroup,
    write_newick,
    write_phylip,
)
from ffdist.similarity import SimilarityGraph

FOUR = DistanceMatrix(
    ("a", "b", "c", "d"),
    ((0, 3, 5, 6), (3, 0, 6, 7), (5, 6, 0, 7), (6, 7, 7, 0)),
)


def canonical_splits(tree):
    taxa, edges = nested_edges(tree.root)
    # put the smallest name first so the anchor is stable
    k = taxa.index(min(taxa))
    swap = {k: 0, 0: k}
    taxa = [taxa[swap.get(i, i)] for i in range(len(taxa))]
    edges = [(swap.get(u, u), swap.get(v, v), w) for u, v, w in edges]
    return edge_splits(taxa, edges)


def test_four_taxa():
    t = neighbor_joining(FOUR)
    assert write_newick(t) == "((a:1,b:2):1,c:3,d:4);"
    assert canonical_splits(t)[frozenset({"c", "d"})] == 1
    assert t.path_lengths()[("a", "d")] == 6


def test_three_taxa_solve_three_point_equations():
    m = DistanceMatrix(("x", "y", "z"), ((0, 5, 9), (5, 0, 10), (9, 10, 0)))
    t = neighbor_joining(m)
    lengths = {child.name: w for child, w in t.root.children}
    assert lengths == {"x": 2, "y": 3, "z": 7}


def test_two_and_one_taxa():
    t = neighbor_joining(DistanceMatrix(("a", "b"), ((0, 1), (1, 0))))
    assert write_newick(t) == "(a:0.5,b:0.5);"
    assert write_newick(neighbor_joining(DistanceMatrix(("a",), ((0,),)))) == "a;"


def test_equal_distances_are_stable():
    m = DistanceMatrix(tuple("abcde"), tuple(tuple(0 if i == j else 2 for j in range(5)) for i in range(5)))
    texts = {write_newick(neighbor_joining(m)) for _ in range(3)}
    assert texts == {"(((a:1,b:1):0,c:1):0,d:1,e:1);"}


@pytest.mark.parametrize("seed", range(10))
def test_random_additive(seed):
    rng = random.Random(seed)
    taxa, edges = random_tree(rng, rng.randint(4, 6))
    m = DistanceMatrix(tuple(taxa), tuple(map(tuple, tree_distances(taxa, edges))))
    t = neighbor_joining(m)
    assert canonical_splits(t) == edge_splits(taxa, edges)


@pytest.mark.parametrize(
    "taxa, rows",
    [
        (("a", "b"), ((0, 1), (2, 0))),
        (("a", "b"), ((0, -1), (-1, 0))),
        (("a", "b"), ((1, 1), (1, 0))),
        (("a", "a"), ((0, 1), (1, 0))),
        (("a", "b"), ((0, 1),)),
    ],
)
def test_invalid_matrix(taxa, rows):
    with pytest.raises(InvalidMatrix):
        DistanceMatrix(taxa, rows)


def test_newick_roundtrip_and_quoting():
    t = neighbor_joining(FOUR)
    back = parse_newick(write_newick(t))
    assert write_newick(back) == write_newick(t)
    odd = Tree(Node(None, [(Node("it's (x)"), Fraction(1, 2)), (Node("plain"), Fraction(3))]))
    text = write_newick(odd)
    assert text == "('it''s (x)':0.5,plain:3);"
    assert parse_newick(text).leaves() == ["it's (x)", "plain"]


@pytest.mark.parametrize("text", ["(a:1,b:2)", "(a:1,b:x);", "(a:1;b);", "('a:1);"])
def test_newick_errors(text):
    with pytest.raises(ParseError):
        parse_newick(text)


def test_outgroup():
    t = reroot_outgroup(neighbor_joining(FOUR), "d")
    assert write_newick(t) == "(d:2,((a:1,b:2):1,c:3):2);"
    with pytest.raises(InvalidMatrix):
        reroot_outgroup(neighbor_joining(FOUR), "zz")


def test_phylip_roundtrip():
    m = DistanceMatrix(("a", "b"), ((0, Fraction(51, 10)), (Fraction(51, 10), 0)))
    text = write_phylip(m)
    assert text == "2\na 0 5.1\nb 5.1 0\n"
    assert parse_phylip(text) == m
    with pytest.raises(InvalidMatrix):
        write_phylip(DistanceMatrix(("a b",), ((0,),)))
    with pytest.raises(ParseError):
        parse_phylip("3\na 0\n")
    with pytest.raises(ParseError):
        parse_phylip("")


def test_pairwise_toy():
    a, b, g = toy("0")
    m = pairwise_matrix([a, b], {("A", "B"): g}, Fraction(1, 10))
    assert m.taxa == ("A", "B")
    assert m.get("A", "B") == Fraction("5.1")
    # either orientation of the table is accepted
    m2 = pairwise_matrix([b, a], {("A", "B"): g}, Fraction(1, 10))
    assert m2.get("A", "B") == Fraction("5.1")


def test_pairwise_single_taxon():
    a, _, _ = toy()
    m = pairwise_matrix([a], {}, 0)
    assert m.d == ((0,),)


def test_pairwise_relabeled_copies_parallel():
    base = Genome.from_strings("G", "1 -2 3 |", "4 )")
    genomes = [base.relabeled({m: f"{p}{m}" for m in base.markers}, name=p) for p in "PQR"]
    sims = {}
    for x in genomes:
        for y in genomes:
            if x.name < y.name:
                sims[(x.name, y.name)] = SimilarityGraph.between(
                    x, y, {(f"{x.name}{m}", f"{y.name}{m}"): 1 for m in base.markers}
                )
    m = pairwise_matrix(genomes, sims, Fraction(1, 2), jobs=2)
    assert all(v == 0 for row in m.d for v in row)


def test_pairwise_errors():
    a, b, g = toy("0")
    with pytest.raises(MissingSimilarities):
        pairwise_matrix([a, b], {}, 0)
    with pytest.raises(TooLarge, match=r"\(A, B\)"):
        pairwise_matrix([a, b], {("A", "B"): g}, 0, limits=Limits(max_edges=2))


def test_lookup_transposes():
    a, b, g = toy()
    assert lookup_similarities({("A", "B"): g}, b, a).edges[("9", "3")] == Fraction(9, 10)
