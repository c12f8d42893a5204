"""(1+eps, min{2 W1, 4 W2}) estimates and the additive/multiplicative trade-off."""

from __future__ import annotations

import math

import numpy as np

from .additive import init_estimates, plus2wi
from .covering import build_hierarchy
from .graph import Graph, check_weight_class
from .guarantee import MixedGuarantee, evaluate_guarantee, tradeoff_guarantee
from .minplus import ampmm, msasp, submatrix
from .multiplicative import FrameworkConfig, framework
from .sssp import ComposedSpec, DistanceMatrix, level_sweep

__all__ = ["MixedGuarantee", "combine_tradeoff", "evaluate_guarantee", "msasp_eps", "near_additive",
           "product_eps", "tradeoff", "tradeoff_guarantee"]


def product_eps(eps: float) -> float:
    """Accuracy handed to each approximate min-plus product."""
    return min(eps / 4, math.sqrt(1 + eps / 2) - 1)


def msasp_eps(eps: float) -> float:
    """Accuracy for the multi-source stage.

    Its error compounds with one product, and a single heavy edge can carry
    almost the whole path, so the two factors together are kept to 1 + eps/3.
    """
    return (1 + eps / 3) / (1 + product_eps(eps)) - 1


def near_additive(g: Graph, eps: float, beta: float = 0.15135313, gamma: float = 0.15135313,
                  backend: str = "exact", parallel: bool = False,
                  swap_products: bool = False) -> DistanceMatrix:
    """Estimates with dist <= d <= (1+eps) * dist + min(2 W1, 4 W2).

    Stages: multi-source distances from S_2; the product d[V,S_2] * d[S_2,V];
    SSSP from S_1, S_0, S_1, S_0; the product d[V,S_1] * d[S_1,S_1]; a last
    SSSP from S_0. ``swap_products`` exchanges the two product stages and
    exists only to study the effect of the order.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    check_weight_class(g)
    if not (0 < beta < 1 and 0 < gamma < 1 and beta + gamma <= 1):
        raise ValueError("need beta, gamma in (0, 1) with beta + gamma <= 1")
    h = build_hierarchy(g, [beta, beta + gamma])
    d = init_estimates(g, h)
    every = list(range(g.n))
    s1, s2 = list(h.sets[1]), list(h.sets[2])
    e_prod = product_eps(eps)

    def through_s2():
        if s2:
            c = ampmm(submatrix(d, every, s2), submatrix(d, s2, every), e_prod)
            d.merge_block(every, every, c.values)

    def through_s1():
        if s1:
            c = ampmm(submatrix(d, every, s1), submatrix(d, s1, s1), e_prod)
            d.merge_block(every, s1, c.values)

    def sweep(i):
        level_sweep(g, d, h, i, ComposedSpec(base=i + 1, fan=True, pivots=True), parallel=parallel)

    first, second = (through_s1, through_s2) if swap_products else (through_s2, through_s1)
    if s2:
        m = msasp(g, s2, msasp_eps(eps), backend)
        d.merge_block(m.rows, m.cols, m.values)
    first()
    for i in (1, 0, 1, 0):
        sweep(i)
    second()
    sweep(0)
    return d


def combine_tradeoff(dA: DistanceMatrix, dB: DistanceMatrix) -> DistanceMatrix:
    """Pointwise minimum of two valid estimate matrices."""
    if dA.n != dB.n:
        raise ValueError(f"dimension mismatch: {dA.n} vs {dB.n}")
    return DistanceMatrix(np.minimum(dA.values, dB.values))


def tradeoff(g: Graph, k: int, parallel: bool = False) -> DistanceMatrix:
    """Run the +2(W1..W_{k+1}) algorithm and the l = 3k framework; keep the better entry."""
    additive = plus2wi(g, k, parallel=parallel)
    multiplicative = framework(g, FrameworkConfig(ell=3 * k, parallel=parallel))
    return combine_tradeoff(additive, multiplicative)
