from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from apasp.additive import build_fi_edges, plus2w1, plus2wi
from apasp.covering import build_hierarchy
from apasp.graph import from_edges, gen_random, parse_graph
from apasp.guarantee import guarantee_for
from apasp.validate import exact_apsp, validate

from conftest import floyd_warshall, graphs

# Found by searching 3000 seeded random graphs: the smallest one on which the
# ascending sweep order misses a pair that the descending order gets right.
ASCENDING_COUNTEREXAMPLE = """12 9
1 6 1
1 8 4
2 8 0
2 10 0
3 5 1
4 5 5
5 6 1
7 11 5
8 10 4
"""


def check(g, d, algo, k=0, tie="min"):
    rep = validate(g, d, guarantee_for(algo, k=k), exact_apsp(g, tie))
    assert rep.passed, rep.violations[:3]
    return rep


def test_single_edge_exact():
    g = from_edges(2, [(0, 1, 7)])
    assert plus2w1(g).values[0, 1] == 7
    assert plus2wi(g, 1).values[0, 1] == 7


def test_unit_weights_within_two():
    g = gen_random(40, 0.1, 1, 1, 3)
    fw = floyd_warshall(g)
    d = plus2w1(g).values
    fin = np.isfinite(fw)
    assert np.all(d[fin] <= fw[fin] + 2) and np.all(d >= fw)


@pytest.mark.parametrize("seed", range(3))
def test_plus2w1_random_weighted(seed):
    g = gen_random(64, 0.15, 1, 100, seed)
    check(g, plus2w1(g), "plus2w1")
    check(g, plus2w1(g), "plus2w1", tie="max")


@pytest.mark.parametrize("k", [0, 1, 2])
def test_fi_edges_match_exhaustive_frontier(k):
    top = 3 * k + 2
    for i in range(top + 1):
        ok = {(j, l) for j in range(top + 1) for l in range(top + 1) if i + j + l >= 3 * k + 1}
        # brute-force frontier: admitted pairs with no other admitted pair below them in both indices
        frontier = {p for p in ok if not any(q != p and q[0] <= p[0] and q[1] <= p[1] for q in ok)}
        assert set(build_fi_edges(None, i, k)) == frontier


def test_fi_edges_examples():
    assert build_fi_edges(None, 2, 0) == [(0, 0)]
    assert build_fi_edges(None, 5, 1) == [(0, 0)]
    assert build_fi_edges(None, 0, 0) == [(0, 1), (1, 0)]
    assert build_fi_edges(None, 1, 1) == [(0, 3), (1, 2), (2, 1), (3, 0)]


def test_fi_edges_checks_levels():
    g = gen_random(10, 0.3, 1, 5, 0)
    with pytest.raises(ValueError):
        build_fi_edges(build_hierarchy(g, [0.5]), 0, 1)
    with pytest.raises(ValueError):
        build_fi_edges(None, 6, 1)


def test_unit_weights_k2_within_six():
    g = gen_random(60, 0.08, 1, 1, 11)
    fw = floyd_warshall(g)
    d = plus2wi(g, 2).values
    fin = np.isfinite(fw)
    assert np.all(d[fin] <= fw[fin] + 6) and np.all(d >= fw)


def test_two_edge_path_within_three_times():
    g = from_edges(3, [(0, 1, 4), (1, 2, 6)])
    d = plus2wi(g, 1).values
    assert 10 <= d[0, 2] <= 3 * 10


@pytest.mark.parametrize("seed", range(2))
def test_plus2wi_k1_random(seed):
    g = gen_random(96, 0.1, 1, 50, seed)
    check(g, plus2wi(g, 1), "plus2wi", k=1)


@pytest.mark.parametrize("k", [1, 2])
def test_parallel_mode_valid(k):
    g = gen_random(48, 0.12, 1, 30, 8)
    check(g, plus2wi(g, k, parallel=True), "plus2wi", k=k)
    check(g, plus2w1(g, parallel=True), "plus2w1")


@given(graphs(min_n=2, max_n=14), st.integers(0, 2))
def test_guarantee_on_small_graphs(g, k):
    check(g, plus2wi(g, k), "plus2wi", k=k)


def test_descending_passes_ascending_fails_on_counterexample():
    g = parse_graph(ASCENDING_COUNTEREXAMPLE)
    fw = floyd_warshall(g)
    assert fw[2, 4] == 11
    check(g, plus2w1(g), "plus2w1")
    rep = validate(g, plus2w1(g, order="ascending"), guarantee_for("plus2w1"))
    assert not rep.passed
    assert any((v["u"], v["v"]) == (2, 4) and v["kind"] == "above-bound" for v in rep.violations)


def test_bad_parameters():
    g = gen_random(10, 0.3, 1, 5, 0)
    with pytest.raises(ValueError):
        plus2w1(g, beta=0)
    with pytest.raises(ValueError):
        plus2w1(g, beta=0.6, gamma=0.6)
    with pytest.raises(ValueError):
        plus2wi(g, -1)
    with pytest.raises(ValueError):
        plus2wi(g, 1, beta=1.2)
    with pytest.raises(ValueError):
        plus2w1(g, order="sideways")
