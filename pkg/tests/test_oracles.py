"""The reference oracles checked on small cases, then used against the package."""

import random
from fractions import Fraction

import pytest

from fixtures import chroms, toy
from oracles import dcj_formula, dcj_indel_bfs, induced_pair, maximal_matchings, to_adj, to_chroms, from_chroms
from ffdist.diagram import build_ffrc
from ffdist.decomposition import SiblingSet, best_over_cappings
from ffdist.exact import unwffd_exact
from ffdist.genome import Chromosome, Genome, Occurrence
from ffdist.similarity import SimilarityGraph


def test_adjacency_roundtrip():
    g = to_adj([(["1", "-2", "3"], False), (["4", "5"], True)])
    assert from_chroms(to_chroms(g)) == g
    assert len(g) == 2 + 2 + 2


@pytest.mark.parametrize(
    "a, b, d",
    [
        ([(["1", "2"], False)], [(["1", "2"], False)], 0),
        ([(["1", "2"], False)], [(["1", "-2"], False)], 1),
        ([(["1", "2", "3"], False)], [(["3", "1", "2"], False)], 2),
        ([(["1", "2"], True)], [(["1", "-2"], True)], 1),
        ([(["1"], False), (["2"], False)], [(["1", "2"], False)], 1),
        ([(["1", "2", "3"], True)], [(["1"], True), (["2", "3"], True)], 1),
    ],
)
def test_formula_matches_search_without_indels(a, b, d):
    assert dcj_formula(a, b) == d
    assert dcj_indel_bfs(a, b) == d


@pytest.mark.parametrize(
    "a, b, d",
    [
        ([(["1", "2", "3"], False)], [(["1", "3"], False)], 1),
        ([(["1"], False)], [(["2"], False)], 2),
        ([(["1", "2"], True)], [(["3", "4"], True)], 2),
        ([(["1", "x", "2", "y", "3"], False)], [(["1", "2", "3"], False)], 2),
        ([(["1", "2"], False)], [(["1", "z", "-2"], False)], 2),
    ],
)
def test_search_with_indels(a, b, d):
    assert dcj_indel_bfs(a, b) == d


def test_search_limit():
    assert dcj_indel_bfs([(["1"], False)], [(["2"], False)], limit=1) is None


def test_maximal_matchings():
    edges = [("a", "x"), ("a", "y"), ("b", "x")]
    assert sorted(map(sorted, maximal_matchings(edges))) == [[("a", "x")], [("a", "y"), ("b", "x")]]


def random_genome(rng, name, prefix, most):
    n = rng.randint(1, most)
    ids = [f"{prefix}{i}" for i in range(1, n + 1)]
    rng.shuffle(ids)
    out, i = [], 0
    while i < n:
        k = rng.randint(1, n - i)
        occs = tuple(Occurrence(m, rng.random() < 0.5) for m in ids[i:i + k])
        out.append(Chromosome(occs, "linear" if rng.random() < 0.7 else "circular"))
        i += k
    return Genome(name, tuple(out))


def test_unweighted_matches_search():
    rng = random.Random(5)
    for _ in range(30):
        a = random_genome(rng, "A", "a", 3)
        b = random_genome(rng, "B", "b", 3)
        pairs = [(x, y) for x in a.markers for y in b.markers]
        rng.shuffle(pairs)
        edges = pairs[: rng.randint(0, 4)]
        g = SimilarityGraph.between(a, b, {e: 1 for e in edges})
        expected = min(
            dcj_indel_bfs(*induced_pair(chroms(a), chroms(b), m), limit=6) for m in maximal_matchings(edges)
        )
        assert unwffd_exact(a, b, g).distance == expected


@pytest.mark.slow
def test_toy_matchings_match_search():
    a, b, g = toy()
    d = build_ffrc(a, b, g)
    edges = sorted(g.edges)
    for m in maximal_matchings(edges):
        found = dcj_indel_bfs(*induced_pair(chroms(a), chroms(b), m), limit=4)
        value = best_over_cappings(d, SiblingSet.from_matching(d, m), weighted=False)[0]
        if found is None:
            assert value > 4
        else:
            assert found == value
