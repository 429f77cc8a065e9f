import os
import random
import subprocess
import sys
from array import array

import pytest

from fixtures import toy
from ffdist import kernels
from ffdist.diagram import build_ffrc
from ffdist.exact import ffd_exact, unwffd_exact
from ffdist.ilp import UNWEIGHTED, WEIGHTED, build_ilp, solve_exhaustive

IMPLS = kernels.implementations()
IDS = [k.IMPLEMENTATION for k in IMPLS]


def test_compiled_kernels_are_built():
    assert IDS == ["python", "cython"]
    assert kernels.IMPLEMENTATION == "cython"


def test_fallback_selected_by_environment():
    env = dict(os.environ, FFDIST_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from ffdist import kernels; print(kernels.IMPLEMENTATION)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def random_cover(rng, n_pairs):
    """Random perfect matchings of adjacency and other edges over 2*n_pairs vertices."""
    n = 2 * n_pairs
    verts = list(range(n))
    adj = [0] * n
    for k in range(0, n, 2):
        adj[k], adj[k + 1] = k + 1, k
    rng.shuffle(verts)
    oth = [0] * n
    kind = [0] * n
    for k in range(0, n, 2):
        u, v = verts[k], verts[k + 1]
        oth[u], oth[v] = v, u
        kind[u] = kind[v] = rng.randrange(4)
    return adj, oth, kind


@pytest.mark.parametrize("seed", range(20))
def test_cycle_stats_parity(seed):
    rng = random.Random(seed)
    adj, oth, kind = random_cover(rng, rng.randint(1, 12))
    results = [impl.cycle_stats(array("q", adj), array("q", oth), array("q", kind)) for impl in IMPLS]
    assert all(r == results[0] for r in results)
    summaries = {impl.cycle_summary(array("q", adj), array("q", oth), array("q", kind)) for impl in IMPLS}
    assert len(summaries) == 1
    # every vertex is on exactly one cycle
    assert sum(r[0] + r[1] + r[2] + r[3] for r in results[0]) == len(adj) // 2


def test_cycle_stats_small_cases():
    for impl in IMPLS:
        # one cycle: adjacency 0-1, indel A on 1-0
        assert impl.cycle_stats([1, 0], [1, 0], [2, 2]) == [(0, 0, 1, 0, 1, 0)]
        # alternating A and B indels around a single cycle
        adj = [1, 0, 3, 2]
        oth = [3, 2, 1, 0]
        assert impl.cycle_stats(adj, oth, [2, 3, 3, 2]) == [(0, 0, 1, 1, 2, 2)]


def test_capping_sweep_parity():
    rng = random.Random(7)
    adj, oth, kind = random_cover(rng, 8)
    caps_a = array("q", [0, 2])
    caps_b = array("q", [4, 6])
    perms = array("q", [0, 1, 1, 0])
    outs = []
    for impl in IMPLS:
        out = array("q", [0] * 8)
        impl.capping_sweep(array("q", adj), array("q", oth), array("q", kind), caps_a, caps_b, perms, out)
        outs.append(list(out))
    assert outs[0] == outs[1]


def knapsack(impl):
    # maximize 3a + 4b + 5c subject to 2a + 3b + 4c <= 6, binaries
    lo, hi = [0, 0, 0], [1, 1, 1]
    return impl.bb_search(
        lo, hi, [0, 3], [0, 1, 2], [2, 3, 4], [6], [0, 1, 2, 3], [0, 0, 0],
        [-3, -4, -5], [0, 1, 2], [1, 1, 1], 0,
    )


@pytest.mark.parametrize("impl", IMPLS, ids=IDS)
def test_bb_search_knapsack(impl):
    status, value, assign, nodes = knapsack(impl)
    assert status == kernels.STATUS_OPTIMAL
    assert value == -8
    assert list(assign) in ([1, 0, 1],)


@pytest.mark.parametrize("impl", IMPLS, ids=IDS)
def test_bb_search_infeasible(impl):
    # x >= 2 with x <= 1
    status, value, assign, nodes = impl.bb_search([0], [1], [0, 1], [0], [-1], [-2], [0, 1], [0], [1], [0], [0], 0)
    assert status == kernels.STATUS_INFEASIBLE and assign is None


@pytest.mark.parametrize("impl", IMPLS, ids=IDS)
def test_bb_search_general_and_negative_coefficients(impl):
    # minimize -x - y with x - 2y <= 0, x + y <= 5, x <= 4, y <= 3 (integers)
    status, value, assign, _ = impl.bb_search(
        [0, 0], [4, 3], [0, 2, 4], [0, 1, 0, 1], [1, -2, 1, 1], [0, 5], [0, 2, 4], [0, 1, 0, 1],
        [-1, -1], [0, 1], [1, 1], 0,
    )
    assert status == kernels.STATUS_OPTIMAL
    assert value == -5


@pytest.mark.parametrize("impl", IMPLS, ids=IDS)
def test_bb_search_node_limit(impl):
    status, value, assign, nodes = impl.bb_search(
        [0, 0, 0], [1, 1, 1], [0, 3], [0, 1, 2], [2, 3, 4], [6], [0, 1, 2, 3], [0, 0, 0],
        [-3, -4, -5], [0, 1, 2], [0, 0, 0], 2,
    )
    assert status == kernels.STATUS_LIMIT
    assert nodes == 3


@pytest.mark.parametrize("mode", [WEIGHTED, UNWEIGHTED])
def test_search_parity_on_toy_models(monkeypatch, mode):
    a, b, g = toy()
    m = build_ilp(build_ffrc(a, b, g), mode)
    results = []
    for impl in IMPLS:
        monkeypatch.setattr(kernels, "bb_search", impl.bb_search)
        sol = solve_exhaustive(m)
        results.append((sol.objective, sol.values, sol.nodes))
    assert results[0] == results[1]


def test_oracle_parity(monkeypatch):
    a, b, g = toy()
    results = []
    for impl in IMPLS:
        monkeypatch.setattr(kernels, "capping_sweep", impl.capping_sweep)
        results.append((ffd_exact(a, b, g), unwffd_exact(a, b, g)))
    assert results[0] == results[1]
