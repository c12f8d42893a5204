"""Purely additive all-pairs estimates: +2W1 and +2(W1 + ... + W_{k+1}).

Both algorithms build a hitting-set hierarchy and run SSSP from every member
of each level, top level first, over the level's light edges plus auxiliary
edges weighted by the estimates found so far. The top-down order matters:
each level relies on distances already computed from the sparser levels.
"""

from __future__ import annotations

from .covering import HittingHierarchy, build_hierarchy
from .graph import Graph
from .sssp import ComposedSpec, DistanceMatrix, level_sweep

ORDERS = ("descending", "ascending")


def init_estimates(g: Graph, h: HittingHierarchy) -> DistanceMatrix:
    """Edge weights plus the exact distance from every vertex to each of its pivots."""
    d = DistanceMatrix.from_graph(g)
    for i in range(1, h.depth + 1):
        for u in range(g.n):
            p = h.pivot[i][u]
            if p >= 0:
                d.lower(u, int(p), float(h.pivot_dist[i][u]))
    return d


def _levels(top: int, order: str) -> list[int]:
    if order not in ORDERS:
        raise ValueError(f"order must be one of {ORDERS}")
    levels = list(range(top, -1, -1))
    return levels if order == "descending" else levels[::-1]


def _check_exponent(name: str, x: float) -> None:
    if not 0 < x < 1:
        raise ValueError(f"{name} must lie in (0, 1), got {x}")


def plus2w1(g: Graph, beta: float = 1 / 3, gamma: float = 1 / 3,
            parallel: bool = False, order: str = "descending") -> DistanceMatrix:
    """Estimates with d <= dist + 2 * (heaviest edge on a shortest path)."""
    _check_exponent("beta", beta)
    _check_exponent("gamma", gamma)
    if beta + gamma > 1:
        raise ValueError("beta + gamma must not exceed 1")
    h = build_hierarchy(g, [beta, beta + gamma])
    d = init_estimates(g, h)
    for i in _levels(2, order):
        spec = ComposedSpec(base=i + 1, fan=True, pivots=True, blocks=((2, 0),))
        level_sweep(g, d, h, i, spec, parallel=parallel)
    return d


def build_fi_edges(h: HittingHierarchy | None, i: int, k: int) -> list[tuple[int, int]]:
    """Minimal level pairs (j, l) with i + j + l >= 3k + 1.

    Since S_0 >= S_1 >= ..., the block S_j x S_l contains every block with
    larger indices, so only the minimal pairs are needed.
    """
    top = 3 * k + 2
    if h is not None and h.depth != top:
        raise ValueError(f"hierarchy has {h.depth} levels, expected {top}")
    if not 0 <= i <= top:
        raise ValueError(f"level {i} outside [0, {top}]")

    def ok(j, l):
        return i + j + l >= 3 * k + 1

    return [(j, l) for j in range(top + 1) for l in range(top + 1)
            if ok(j, l) and (j == 0 or not ok(j - 1, l)) and (l == 0 or not ok(j, l - 1))]


def plus2wi(g: Graph, k: int, beta: float | None = None,
            parallel: bool = False, order: str = "descending") -> DistanceMatrix:
    """Estimates with d <= dist + 2 * (sum of the k+1 heaviest edges on a shortest path)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return plus2w1(g, parallel=parallel, order=order)
    top = 3 * k + 2
    beta = 1.0 / top if beta is None else beta
    _check_exponent("beta", beta)
    h = build_hierarchy(g, [min(i * beta, 1.0) for i in range(1, top + 1)])
    d = init_estimates(g, h)
    for i in _levels(top, order):
        spec = ComposedSpec(base=i + 1, fan=True, pivots=True,
                            blocks=tuple(build_fi_edges(h, i, k)))
        level_sweep(g, d, h, i, spec, parallel=parallel)
    return d
