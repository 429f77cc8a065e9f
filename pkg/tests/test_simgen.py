from collections import Counter

import pytest

from fixtures import chroms
from oracles import dcj_indel_bfs, induced_pair
from ffdist.errors import BadParams
from ffdist.exact import ffd_exact
from ffdist.genome import parse_genomes, render_genomes
from ffdist.simgen import SimParams, SplitMix64, simulate_pair
from ffdist.similarity import parse_similarities


def test_splitmix_reference_outputs():
    r = SplitMix64(1234567)
    assert [r.next() for _ in range(5)] == [
        6457827717110365317,
        3203168211198807973,
        9817491932198370423,
        4593380528125082431,
        16408922859458223821,
    ]


def test_splitmix_helpers():
    r = SplitMix64(3)
    xs = [r.below(6) for _ in range(600)]
    assert set(xs) == set(range(6))
    assert all(0 <= r.random() < 1 for _ in range(100))
    items = list(range(10))
    r.shuffle(items)
    assert sorted(items) == list(range(10))
    with pytest.raises(ValueError):
        r.below(0)


def graph_of(a, b, tsv):
    return parse_similarities(tsv, a, b)


@pytest.mark.parametrize("seed", range(5))
def test_identity_copy(seed):
    a, b, tsv = simulate_pair(SimParams(markers=6, chromosomes=2, circular_fraction=0.5), seed)
    mapping = {m: "b" + m[1:] for m in a.markers}
    assert a.relabeled(mapping, name="B") == b
    assert ffd_exact(a, b, graph_of(a, b, tsv)).distance == 0


@pytest.mark.parametrize("seed", range(8))
def test_single_dcj(seed):
    a, b, tsv = simulate_pair(SimParams(markers=5, chromosomes=2, dcj=1), seed)
    g = graph_of(a, b, tsv)
    value = ffd_exact(a, b, g).distance
    assert value in (0, 1)
    homologs = [(x, "b" + x[1:]) for x in a.markers]
    ia, ib = induced_pair(chroms(a), chroms(b), homologs)
    assert dcj_indel_bfs(ia, ib, limit=1) == value


@pytest.mark.parametrize("seed", range(5))
def test_one_duplication(seed):
    a, b, tsv = simulate_pair(SimParams(markers=5, duplications=1), seed)
    g = graph_of(a, b, tsv)
    per_b = Counter(y for _, y in g.edges)
    assert sorted(per_b.values()) == [1, 1, 1, 1, 2]
    assert len(a) == 6 and len(b) == 5


def test_indels_change_sizes():
    a, b, tsv = simulate_pair(SimParams(markers=8, indels=3), 11)
    g = graph_of(a, b, tsv)
    assert len(a) == 8
    assert len(g) <= 8
    assert len(b) != 8 or len(g) < 8


def test_noise_adds_weak_edges():
    a, b, tsv = simulate_pair(SimParams(markers=10, noise=0.5), 4)
    g = graph_of(a, b, tsv)
    assert len(g) == 15
    assert all(0 < s <= 1 for s in g.edges.values())


def test_deterministic():
    p = SimParams(markers=12, chromosomes=3, circular_fraction=0.3, dcj=4, indels=2, duplications=2, noise=0.2)
    first = simulate_pair(p, 99)
    assert simulate_pair(p, 99) == first
    assert simulate_pair(p, 100) != first
    a, b, _ = first
    assert parse_genomes(render_genomes([a, b])) == [a, b]


@pytest.mark.parametrize(
    "params",
    [
        SimParams(markers=0),
        SimParams(markers=3, chromosomes=4),
        SimParams(markers=3, circular_fraction=1.5),
        SimParams(markers=3, dcj=-1),
        SimParams(markers=3, noise=2.0),
        SimParams(markers=2, indels=5),
        SimParams(markers=3, name_a="X", name_b="X"),
    ],
)
def test_bad_params(params):
    with pytest.raises(BadParams):
        simulate_pair(params, 0)
