from __future__ import annotations

import json

import numpy as np
import pytest
from hypothesis import given

from apasp.graph import from_edges, gen_random
from apasp.guarantee import MixedGuarantee, evaluate_guarantee, guarantee_for, tradeoff_guarantee
from apasp.sssp import DistanceMatrix
from apasp.validate import canonical_path, exact_apsp, heavy_weights, path_weights, validate

from conftest import floyd_warshall, graphs


def test_oracle_examples():
    assert exact_apsp(from_edges(2, [(0, 1, 3)])).dist[0, 1] == 3
    tri = from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 3)])
    assert exact_apsp(tri).dist[0, 2] == 2


@given(graphs(min_n=1, max_n=16))
def test_oracle_equals_floyd_warshall(g):
    for tie in ("min", "max"):
        assert np.array_equal(exact_apsp(g, tie).dist, floyd_warshall(g))


def test_oracle_rejects_bad_tie():
    with pytest.raises(ValueError):
        exact_apsp(from_edges(1, []), tie="random")


@given(graphs(min_n=2, max_n=14))
def test_canonical_paths_sum_to_distance(g):
    o = exact_apsp(g)
    for u in range(g.n):
        for v in range(g.n):
            p = canonical_path(o, u, v)
            if np.isfinite(o.dist[u, v]):
                assert p[0] == u and p[-1] == v
                assert sum(path_weights(g, o, u, v)) == o.dist[u, v]
            else:
                assert p == []


def test_tie_breaking_choice():
    # two equal routes 0-1-3 and 0-2-3
    g = from_edges(4, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1)])
    assert canonical_path(exact_apsp(g, "min"), 0, 3) == [0, 1, 3]
    assert canonical_path(exact_apsp(g, "max"), 0, 3) == [0, 2, 3]


def test_heavy_weight_examples():
    g = from_edges(4, [(0, 1, 5), (1, 2, 2), (2, 3, 7)])
    o = exact_apsp(g)
    assert heavy_weights(g, o, 0, 3, 3) == [7, 5, 2]
    assert heavy_weights(g, o, 0, 1, 3) == [5, 0, 0]
    with pytest.raises(ValueError):
        heavy_weights(from_edges(2, []), exact_apsp(from_edges(2, [])), 0, 1, 1)


def test_evaluate_examples():
    assert evaluate_guarantee(MixedGuarantee(1.0, "2W1"), 10, [3]) == 16
    # alpha = beta = 1, k = 1 gives (9/5, W1 + W2)
    t = tradeoff_guarantee(1)
    assert t.alpha == pytest.approx(9 / 5) and t.coef == 1 and t.terms == 2
    assert evaluate_guarantee(t, 10, [4, 2]) == pytest.approx(24)
    near = guarantee_for("near-additive", eps=0.2)
    assert evaluate_guarantee(near, 10, [5, 1]) == pytest.approx(16)
    assert evaluate_guarantee(near, 10, [5], path_edges=1) == pytest.approx(22)
    with pytest.raises(ValueError):
        evaluate_guarantee(near, 10, [5])


def test_tradeoff_family():
    # alpha = beta = 1 gives (6k+3)/(3k+2) with sum of W_i
    for k in range(4):
        assert tradeoff_guarantee(k).alpha == pytest.approx((6 * k + 3) / (3 * k + 2))
    # k = 2, alpha = 2 beta: (13/6, 2/3 (W1 + W2 + W3))
    t = tradeoff_guarantee(2, 2, 1)
    assert t.alpha == pytest.approx(13 / 6) and t.coef == pytest.approx(2 / 3) and t.terms == 3
    # k = 1 reaches 11/5 at alpha = 3 beta, where the coefficient is 1/2
    t = tradeoff_guarantee(1, 3, 1)
    assert t.alpha == pytest.approx(11 / 5) and t.coef == pytest.approx(1 / 2)
    with pytest.raises(ValueError):
        tradeoff_guarantee(1, 0, 1)


def test_guarantee_lookup():
    assert guarantee_for("framework", ell=3).alpha == pytest.approx(13 / 5)
    assert guarantee_for("frac73", eps=0.1).alpha == pytest.approx(7 / 3 + 0.1)
    assert guarantee_for("plus2wi", k=0).label() == "2W1"
    assert guarantee_for("plus2wi", k=2).label() == "2*(W1+W2+W3)"
    with pytest.raises(ValueError):
        guarantee_for("quantum")
    with pytest.raises(ValueError):
        MixedGuarantee(1.0, "3W1")
    with pytest.raises(ValueError):
        MixedGuarantee(1.0, "sum", 2.0, 0)


def test_validate_oracle_passes():
    g = gen_random(30, 0.2, 1, 9, 0)
    o = exact_apsp(g)
    rep = validate(g, o.matrix(), guarantee_for("exact"), o)
    assert rep.passed and rep.max_ratio == 1.0 and rep.pairs + rep.infinite_pairs == 30 * 29 // 2


def test_validate_tripled_matrix_fails_every_positive_pair():
    g = gen_random(20, 0.3, 1, 9, 1)
    o = exact_apsp(g)
    rep = validate(g, 3 * o.dist, MixedGuarantee(2.0), o, max_listed=None)
    positive = int(np.sum(np.triu(np.isfinite(o.dist) & (o.dist > 0), 1)))
    assert len(rep.violations) == positive and positive > 0
    assert rep.max_ratio == pytest.approx(3.0)


def test_validate_flags_each_kind():
    g = from_edges(4, [(0, 1, 2), (1, 2, 2)])
    d = exact_apsp(g).dist.copy()
    d[0, 1] = d[1, 0] = 1
    d[0, 3] = d[3, 0] = 5
    d[0, 2] = d[2, 0] = 9
    rep = validate(g, DistanceMatrix(d), MixedGuarantee(2.0))
    kinds = {(v["u"], v["v"]): v["kind"] for v in rep.violations}
    assert kinds == {(0, 1): "below-distance", (0, 2): "above-bound", (0, 3): "finite-unreachable"}


def test_validate_truncates_listing():
    g = gen_random(20, 0.5, 1, 9, 1)
    rep = validate(g, 10 * exact_apsp(g).dist, MixedGuarantee(1.0), max_listed=5)
    assert len(rep.violations) == 6 and rep.violations[-1]["kind"] == "truncated"


def test_validate_shape_check():
    with pytest.raises(ValueError):
        validate(from_edges(3, []), np.zeros((2, 2)), MixedGuarantee(1.0))


def test_report_serializes():
    g = gen_random(10, 0.3, 1, 9, 2)
    rep = validate(g, exact_apsp(g).dist, guarantee_for("plus2w1"), seed=4)
    data = json.loads(json.dumps(rep.to_dict()))
    assert set(data) >= {"algorithm", "alpha", "additive_form", "n", "m", "seed", "pairs",
                         "violations", "max_ratio", "max_excess", "ms", "passed"}
    assert data["seed"] == 4 and data["additive_form"] == "2W1"


def test_slack_absorbs_roundoff():
    g = from_edges(2, [(0, 1, 0.1)])
    d = exact_apsp(g).dist + 1e-12
    assert validate(g, d, MixedGuarantee(1.0)).passed
