"""Exact all-pairs oracle, canonical shortest paths and guarantee checking."""

from __future__ import annotations

import heapq
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .graph import INF, Graph
from .guarantee import MixedGuarantee, evaluate_guarantee
from .sssp import DistanceMatrix

SLACK = 1e-9


@dataclass(frozen=True)
class Oracle:
    """Exact distances and one predecessor tree per source (``pred[s, v]``)."""

    dist: np.ndarray
    pred: np.ndarray
    tie: str = "min"

    def matrix(self) -> DistanceMatrix:
        return DistanceMatrix(self.dist)


def _sssp_tree(g: Graph, s: int, prefer_small: bool):
    dist = [INF] * g.n
    pred = [-1] * g.n
    done = [False] * g.n
    dist[s] = 0.0
    heap = [(0.0, s)]
    while heap:
        du, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, w in g.adj[u]:
            if done[v]:
                continue
            nd = du + w
            if nd < dist[v]:
                dist[v], pred[v] = nd, u
                heapq.heappush(heap, (nd, v))
            elif nd == dist[v] and (u < pred[v] if prefer_small else u > pred[v]):
                pred[v] = u
    return dist, pred


def exact_apsp(g: Graph, tie: str = "min") -> Oracle:
    """Dijkstra from every vertex; equal-length predecessors resolved by id."""
    if tie not in ("min", "max"):
        raise ValueError("tie must be 'min' or 'max'")
    dist = np.full((g.n, g.n), INF)
    pred = np.full((g.n, g.n), -1, dtype=np.int64)
    for s in range(g.n):
        dist[s], pred[s] = _sssp_tree(g, s, tie == "min")
    return Oracle(dist, pred, tie)


def canonical_path(oracle: Oracle, u: int, v: int) -> list[int]:
    """Vertices of the tree path from u to v, or [] when v is unreachable."""
    if not np.isfinite(oracle.dist[u, v]):
        return []
    path = [v]
    while path[-1] != u:
        path.append(int(oracle.pred[u, path[-1]]))
    return path[::-1]


def _weights(g: Graph) -> dict[tuple[int, int], float]:
    return {(a, b): w for a, b, w in g.edges} | {(b, a): w for a, b, w in g.edges}


def path_weights(g: Graph, oracle: Oracle, u: int, v: int, _w=None) -> list[float]:
    w = _weights(g) if _w is None else _w
    p = canonical_path(oracle, u, v)
    return [w[a, b] for a, b in zip(p, p[1:])]


def heavy_weights(g: Graph, oracle: Oracle, u: int, v: int, count: int, _w=None) -> list[float]:
    """The ``count`` heaviest edge weights on the canonical path, padded with 0."""
    if not np.isfinite(oracle.dist[u, v]):
        raise ValueError(f"{v} is unreachable from {u}")
    ws = sorted(path_weights(g, oracle, u, v, _w), reverse=True)
    return (ws + [0.0] * count)[:count]


@dataclass
class StretchReport:
    algorithm: str
    alpha: float
    additive_form: str
    n: int
    m: int
    seed: int | None
    pairs: int
    infinite_pairs: int
    violations: list[dict] = field(default_factory=list)
    max_ratio: float = 1.0
    max_excess: float = 0.0
    ms: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        return out


def _slack(x: float) -> float:
    return SLACK * max(1.0, abs(x))


def validate(g: Graph, d, gspec: MixedGuarantee, oracle: Oracle | None = None,
             algorithm: str | None = None, seed: int | None = None,
             max_listed: int | None = 100) -> StretchReport:
    """Check dist <= d <= bound for every pair; unreachable pairs must stay inf."""
    start = time.perf_counter()
    values = d.values if isinstance(d, DistanceMatrix) else np.asarray(d, dtype=np.float64)
    if values.shape != (g.n, g.n):
        raise ValueError(f"matrix shape {values.shape} does not match n={g.n}")
    oracle = exact_apsp(g) if oracle is None else oracle
    wmap = _weights(g)
    need = max(gspec.heavy_needed, 2)
    rep = StretchReport(algorithm or gspec.provenance, gspec.alpha, gspec.label(),
                        g.n, g.m, seed, 0, 0)
    found = []
    for u in range(g.n):
        for v in range(u + 1, g.n):
            delta, x = float(oracle.dist[u, v]), float(values[u, v])
            if not np.isfinite(delta):
                rep.infinite_pairs += 1
                if np.isfinite(x):
                    found.append(dict(u=u, v=v, delta=delta, d=x, bound=INF, kind="finite-unreachable"))
                continue
            rep.pairs += 1
            if x < delta - _slack(delta):
                found.append(dict(u=u, v=v, delta=delta, d=x, bound=delta, kind="below-distance"))
                continue
            ws = sorted(path_weights(g, oracle, u, v, wmap), reverse=True)
            heavy = (ws + [0.0] * need)[:need]
            bound = evaluate_guarantee(gspec, delta, heavy, len(ws))
            if x > bound + _slack(bound):
                found.append(dict(u=u, v=v, delta=delta, d=x, bound=bound, kind="above-bound"))
            if delta > 0:
                rep.max_ratio = max(rep.max_ratio, x / delta)
            rep.max_excess = max(rep.max_excess, x - gspec.alpha * delta)
    rep.violations = found if max_listed is None else found[:max_listed]
    if found and max_listed is not None and len(found) > max_listed:
        rep.violations.append(dict(kind="truncated", total=len(found)))
    rep.ms = (time.perf_counter() - start) * 1000.0
    return rep
