from fractions import Fraction

import pytest

from fixtures import M3, M_BEST_UNWEIGHTED, chroms, toy, two_chromosome_pair
from oracles import dcj_formula, dcj_indel_bfs, induced_pair
from ffdist.decomposition import evaluate_weighted
from ffdist.diagram import dcj_distance_canonical, dcj_indel_circular, dcj_indel_upper_bound
from ffdist.errors import NotBalanced, NotSingular, TooLarge
from ffdist.exact import (
    Limits,
    balanced_reduction,
    ffd_exact,
    identity_similarities,
    iter_decompositions,
    iter_matchings,
    singular_dcj_indel_exact,
    unwffd_exact,
)
from ffdist.diagram import build_ffrc
from ffdist.genome import Genome
from ffdist.similarity import SimilarityGraph


def test_weighted_toy():
    a, b, g = toy()
    r = ffd_exact(a, b, g)
    assert r.distance == Fraction("5.1")
    assert sorted(r.matching) == sorted(M3)
    assert r.capping.perm == (0, 1)


def test_unweighted_toy():
    a, b, g = toy()
    r = unwffd_exact(a, b, g)
    assert r.distance == 2
    assert r.matching == M_BEST_UNWEIGHTED


def test_unweighted_toy_witness_by_search():
    # the matching attaining 2 needs one inversion and one insertion
    a, b, _ = toy()
    ia, ib = induced_pair(chroms(a), chroms(b), M_BEST_UNWEIGHTED)
    assert dcj_indel_bfs(ia, ib) == 2


def test_unweighted_half_threshold():
    a, b, g = toy("0.5")
    assert unwffd_exact(a, b, g).distance == 3


def test_empty_graph():
    a, b, _ = toy()
    g = SimilarityGraph.between(a, b, {})
    assert ffd_exact(a, b, g).distance == 2
    r = unwffd_exact(a, b, g)
    assert r.distance == 2 and r.matching == []


def test_relabeled_copy_is_zero():
    a = Genome.from_strings("A", "1 -2 3 |", "4 5 )")
    b = a.relabeled({m: "b" + m for m in a.markers}, name="B")
    g = SimilarityGraph.between(a, b, {(m, "b" + m): 1 for m in a.markers})
    assert ffd_exact(a, b, g).distance == 0
    assert unwffd_exact(a, b, g).distance == 0


def test_limits():
    a, b, g = toy()
    with pytest.raises(TooLarge):
        ffd_exact(a, b, g, Limits(max_edges=5))
    with pytest.raises(TooLarge):
        unwffd_exact(a, b, g, Limits(max_caps=0))


def test_matching_enumeration():
    a, b, g = toy()
    d = build_ffrc(a, b, g)
    everything = list(iter_matchings(d))
    maximal = list(iter_matchings(d, maximal_only=True))
    assert everything[0] == ()
    assert len(set(everything)) == len(everything)
    assert set(maximal) <= set(everything)
    assert len(maximal) == 20
    assert () not in maximal


@pytest.mark.parametrize(
    "a, b",
    [
        (["1 2 3 |"], ["3 -1 2 |"]),
        (["1 -2 |", "3 4 |"], ["1 4 |", "3 -2 |"]),
        (["-6 1 7 8 -4 |", "3 -5 2 |"], ["-6 1 2 |", "3 -5 7 8 -4 |"]),
    ],
)
def test_singular_canonical(a, b):
    ga, gb = Genome.from_strings("A", *a), Genome.from_strings("B", *b)
    assert singular_dcj_indel_exact(ga, gb) == dcj_distance_canonical(ga, gb) == dcj_formula(chroms(ga), chroms(gb))


@pytest.mark.parametrize("a, b", [(["1 2 3 )"], ["1 3 )"]), (["1 2 )"], ["3 4 )"]), (["1 2 )", "3 )"], ["1 -3 2 )"])])
def test_singular_circular(a, b):
    ga, gb = Genome.from_strings("A", *a), Genome.from_strings("B", *b)
    value = singular_dcj_indel_exact(ga, gb)
    assert value == dcj_indel_circular(ga, gb)
    assert value == dcj_indel_bfs(chroms(ga), chroms(gb))


def test_singular_two_chromosome_pair():
    a, b = two_chromosome_pair()
    value = singular_dcj_indel_exact(a, b)
    assert value <= dcj_indel_upper_bound(a, b)
    assert value == 6


def test_singular_rejects_repeats():
    a = Genome.from_strings("A", "1 1 |", unique=False)
    with pytest.raises(NotSingular):
        singular_dcj_indel_exact(a, Genome.from_strings("B", "1 |"))


def test_identity_similarities():
    g = identity_similarities(Genome.from_strings("A", "1 2 |"), Genome.from_strings("B", "2 3 |"))
    assert g.edges == {("2", "2"): 1}


def test_iter_decompositions_minimum():
    a, b, g = toy("0.5")
    values = [evaluate_weighted(q) for q in iter_decompositions(a, b, g)]
    assert min(values) == ffd_exact(a, b, g).distance


def test_balanced_reduction_shapes():
    a, b, g = balanced_reduction(
        Genome.from_strings("A", "1 1 |", unique=False), Genome.from_strings("B", "1 1 |", unique=False)
    )
    assert len(g) == 4 and set(g.edges.values()) == {1}
    assert ffd_exact(a, b, g).distance == 0
    a, b, g = balanced_reduction(Genome.from_strings("A", "1 2 |"), Genome.from_strings("B", "2 1 |"))
    assert len(g) == 2


def test_balanced_reduction_rejects_unbalanced():
    with pytest.raises(NotBalanced):
        balanced_reduction(Genome.from_strings("A", "1 1 |", unique=False), Genome.from_strings("B", "1 |"))
