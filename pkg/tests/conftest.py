"""Shared oracles and strategies for the test suite."""

from __future__ import annotations

import math
import sys

import numpy as np
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from apasp.graph import from_edges

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def floyd_warshall(g) -> np.ndarray:
    """Cubic all-pairs oracle, independent of every Dijkstra in the package."""
    n = g.n
    d = [[math.inf] * n for _ in range(n)]
    for i in range(n):
        d[i][i] = 0.0
    for u, v, w in g.edges:
        d[u][v] = d[v][u] = min(d[u][v], w)
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik == math.inf:
                continue
            di = d[i]
            for j in range(n):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return np.array(d)


def brute_minplus(a, b) -> np.ndarray:
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    out = np.full((a.shape[0], b.shape[1]), math.inf)
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            for k in range(a.shape[1]):
                out[i, j] = min(out[i, j], a[i, k] + b[k, j])
    return out


def path_graph(n: int, w: float = 1):
    return from_edges(n, [(i, i + 1, w) for i in range(n - 1)])


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 14, max_w: int = 9, min_w: int = 0):
    """Small undirected graphs with integer weights, possibly disconnected."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=3 * n)) if pairs else []
    ws = draw(st.lists(st.integers(min_w, max_w), min_size=len(chosen), max_size=len(chosen)))
    return from_edges(n, [(u, v, w) for (u, v), w in zip(chosen, ws)])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for num in sorted(results):
            terminalreporter.write_line(results[num])
