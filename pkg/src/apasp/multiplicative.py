"""Multiplicative estimates: the 7/3 algorithm and its (3l+4)/(l+2) generalization.

Pipeline for a parameter l (levels S_1..S_{l+1}):

1. hierarchy, pivots, and exact distances to every bunch member;
2. seed estimates from pivots across each edge;
3. SSSP from S_0..S_l over light edges, the source fan and pivot edges;
4. multi-source distances from S_{l+1} (approximate when eps > 0);
5. route every pair through bunch members and pivots.

The level-i bunch of u is the set of S_i members strictly closer to u than
its level-(i+1) pivot. Using this distance cut (rather than a fixed count of
nearest members) is what makes a member outside the bunch at least as far as
the next pivot, which is the step the stretch argument rests on.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate

import numpy as np

from .additive import init_estimates
from .covering import Bunches, HittingHierarchy, build_bunches, build_hierarchy
from .graph import Graph, check_weight_class
from .minplus import msasp
from .sssp import ComposedSpec, DistanceMatrix, level_sweep

# published level exponents for l = 0, 1, 2 (one value per level)
PUBLISHED_BETAS = {0: 0.21235201, 1: 0.15135313, 2: 0.1185119}


def default_betas(ell: int) -> tuple[float, ...]:
    beta = PUBLISHED_BETAS.get(ell, 1.0 / (ell + 2))
    return (beta,) * (ell + 1)


@dataclass(frozen=True)
class FrameworkConfig:
    ell: int = 1
    eps: float = 0.0
    betas: tuple[float, ...] | None = None
    backend: str = "exact"
    parallel: bool = False
    msasp_first: bool = False

    @property
    def target(self) -> float:
        return (3 * self.ell + 4) / (self.ell + 2) + self.eps

    @property
    def inner_eps(self) -> float:
        return (self.ell + 2) * self.eps / (3 * self.ell + 4)

    def level_betas(self) -> tuple[float, ...]:
        betas = default_betas(self.ell) if self.betas is None else tuple(self.betas)
        if len(betas) != self.ell + 1:
            raise ValueError(f"need {self.ell + 1} level exponents, got {len(betas)}")
        if any(not 0 < b < 1 for b in betas):
            raise ValueError("level exponents must lie in (0, 1)")
        if sum(betas) > 1 + 1e-12:
            raise ValueError("level exponents must sum to at most 1")
        return betas


def seed_pivot_edges(g: Graph, d: DistanceMatrix, h: HittingHierarchy, bunches: Bunches, level: int) -> None:
    """Seed estimates from pivots across every edge.

    For an edge (x, y) and each v that is y itself or in y's level-(level-1)
    bunch, every t among v and its pivots p_j(v), j >= level, gets
    d[t, x] <= d[t, v] + d[v, y] + d[x, y]. Both orientations of each edge
    are covered since y ranges over all vertices.
    """
    if not 1 <= level <= h.depth:
        raise ValueError(f"seeding level {level} outside [1, {h.depth}]")
    top = h.depth
    for y in range(g.n):
        if not g.adj[y]:
            continue
        near = dict(bunches.members(h, y, level - 1))
        near[y] = 0.0
        cost: dict[int, float] = {}
        for v, dvy in near.items():
            for t in [v] + [int(h.pivot[j][v]) for j in range(level, top + 1)]:
                if t < 0:
                    continue
                c = d.values[t, v] + dvy
                if c < cost.get(t, np.inf):
                    cost[t] = c
        ts = np.fromiter(cost.keys(), dtype=np.int64)
        cs = np.fromiter(cost.values(), dtype=np.float64)
        xs = np.array([x for x, _ in g.adj[y]], dtype=np.int64)
        d.merge_block(ts, xs, cs[:, None] + d.values[xs, y][None, :])


def final_updates(g: Graph, d: DistanceMatrix, h: HittingHierarchy, bunches: Bunches) -> None:
    """d[u, v] <= d[u, s] + d[s, v] for s in u's bunches, all of S_top, and u's pivots."""
    top = h.depth
    for u in range(g.n):
        via = set(h.sets[top])
        for i in range(1, top):
            via.update(x for x, _ in bunches.members(h, u, i))
        via.update(int(p) for p in h.pivot[1:top + 1, u] if p >= 0)
        via.discard(u)
        if not via:
            continue
        idx = np.array(sorted(via), dtype=np.int64)
        cand = (d.values[u, idx][:, None] + d.values[idx, :]).min(axis=0)
        d.min_merge(u, cand)


def framework(g: Graph, cfg: FrameworkConfig = FrameworkConfig()) -> DistanceMatrix:
    """Estimates with dist <= d <= ((3l+4)/(l+2) + eps) * dist."""
    if cfg.ell < 0:
        raise ValueError("ell must be nonnegative")
    if cfg.eps < 0:
        raise ValueError("eps must be nonnegative")
    if cfg.eps > 0:
        check_weight_class(g)
    betas = cfg.level_betas()
    h = build_hierarchy(g, [min(a, 1.0) for a in accumulate(betas)])
    bunches = build_bunches(g, h)
    d = init_estimates(g, h)
    for u in range(g.n):
        for x, dx in bunches.dist[u].items():
            d.lower(u, x, dx)
    for i in range(1, h.depth + 1):
        seed_pivot_edges(g, d, h, bunches, i)

    def sweeps():
        for i in range(cfg.ell + 1):
            spec = ComposedSpec(base=i + 1, fan=True, pivots=True)
            level_sweep(g, d, h, i, spec, parallel=cfg.parallel)

    def multi_source():
        top = h.sets[h.depth]
        if top:
            m = msasp(g, top, cfg.inner_eps, cfg.backend)
            d.merge_block(m.rows, m.cols, m.values)

    stages = (multi_source, sweeps) if cfg.msasp_first else (sweeps, multi_source)
    for stage in stages:
        stage()
    final_updates(g, d, h, bunches)
    return d


def frac73(g: Graph, eps: float = 0.0, beta: float = 0.15135313, gamma: float = 0.15135313,
           backend: str = "exact", parallel: bool = False) -> DistanceMatrix:
    """Estimates with dist <= d <= (7/3 + eps) * dist; the l = 1 framework."""
    return framework(g, FrameworkConfig(1, eps, (beta, gamma), backend, parallel))


def tz_walk(h: HittingHierarchy, bunches: Bunches, u: int, v: int, r: int) -> int:
    """Alternating pivot walk from level r; returns the halting level f.

    Starting with x = u, y = v, stop at the first level i where p_i(x) lies in
    the level-i bunch of y, else move up a level and swap x and y. The top
    level bunch holds every reachable top-level member, so the walk stops by
    level L at the latest.
    """
    top = h.depth
    if not 0 <= r <= top:
        raise ValueError(f"start level {r} outside [0, {top}]")
    x, y, i = u, v, r
    while i < top:
        p = int(h.pivot[i][x])
        if bunches.contains(h, y, i, p):
            return i
        i += 1
        x, y = y, x
    assert i == top
    return i
