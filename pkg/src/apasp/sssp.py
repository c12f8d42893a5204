"""Distance-estimate matrix and Dijkstra over composed graphs.

A composed graph is a base edge subset plus auxiliary edge families whose
weights are read from the current estimate matrix ``d``. Every entry of ``d``
is the weight of some real path, so any walk in a composed graph is too.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .covering import HittingHierarchy
from .graph import INF, Graph

MAGIC = b"APASP-D"


class DistanceMatrix:
    """Symmetric n x n matrix of upper estimates; entries only ever decrease."""

    def __init__(self, values: np.ndarray):
        values = np.array(values, dtype=np.float64)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise ValueError("distance matrix must be square")
        self.values = values

    @classmethod
    def from_graph(cls, g: Graph) -> "DistanceMatrix":
        """Edge weights, 0 on the diagonal, inf elsewhere."""
        w = g.weight_matrix()
        np.fill_diagonal(w, 0.0)
        return cls(w)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def __getitem__(self, key):
        return self.values[key]

    def copy(self) -> "DistanceMatrix":
        return DistanceMatrix(self.values.copy())

    def lower(self, u: int, v: int, x: float) -> None:
        """d[u,v] = d[v,u] = min(d[u,v], x)."""
        if x < self.values[u, v]:
            self.values[u, v] = self.values[v, u] = x

    def min_merge(self, source: int, dist: np.ndarray) -> None:
        min_merge(self, source, dist)

    def merge_block(self, rows: Sequence[int], cols: Sequence[int], block: np.ndarray) -> None:
        """Pointwise-min a rows x cols block into d, mirrored to keep symmetry."""
        rows, cols = np.asarray(rows, dtype=np.int64), np.asarray(cols, dtype=np.int64)
        block = np.asarray(block, dtype=np.float64)
        if block.shape != (rows.size, cols.size):
            raise ValueError("block shape does not match its labels")
        ix = np.ix_(rows, cols)
        self.values[ix] = np.minimum(self.values[ix], block)
        ix_t = np.ix_(cols, rows)
        self.values[ix_t] = np.minimum(self.values[ix_t], block.T)

    def to_bytes(self) -> bytes:
        iu = np.triu_indices(self.n)
        return b"%s %d\n" % (MAGIC, self.n) + self.values[iu].astype("<f8").tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> "DistanceMatrix":
        head, sep, body = data.partition(b"\n")
        parts = head.split()
        if not sep or len(parts) != 2 or parts[0] != MAGIC:
            raise ValueError("not an APASP-D distance matrix")
        n = int(parts[1])
        tri = np.frombuffer(body, dtype="<f8")
        if tri.size != n * (n + 1) // 2:
            raise ValueError(f"expected {n * (n + 1) // 2} values, found {tri.size}")
        values = np.zeros((n, n))
        iu = np.triu_indices(n)
        values[iu] = tri
        values.T[iu] = tri
        return cls(values)

    def save(self, path) -> None:
        Path(path).write_bytes(self.to_bytes())

    @classmethod
    def load(cls, path) -> "DistanceMatrix":
        return cls.from_bytes(Path(path).read_bytes())


def min_merge(d: DistanceMatrix, source: int, dist: np.ndarray) -> None:
    """d[source, v] = d[v, source] = min(old, dist[v]) for every v."""
    dist = np.asarray(dist, dtype=np.float64)
    if dist.shape != (d.n,):
        raise ValueError(f"vector of length {dist.shape} does not match n={d.n}")
    row = np.minimum(d.values[source], dist)
    d.values[source] = row
    d.values[:, source] = row


@dataclass(frozen=True)
class ComposedSpec:
    """One SSSP instance: base edges plus auxiliary families weighted by ``d``.

    ``base`` is a hierarchy level i (meaning the light edges E_{S_i}), ``"all"``
    for every edge or ``"none"``. ``fan`` adds the edges {s} x V, ``pivots``
    adds every (u, p_j(u)), and ``blocks`` lists level pairs (a, b) whose
    cross products S_a x S_b are added.
    """

    base: int | str = "all"
    fan: bool = True
    pivots: bool = False
    blocks: tuple[tuple[int, int], ...] = ()


def compile_mask(g: Graph, spec: ComposedSpec, h: HittingHierarchy | None = None) -> np.ndarray:
    """Symmetric mask of the non-fan edges of a composed graph."""
    if spec.base == "all":
        mask = g.edge_mask()
    elif spec.base == "none":
        mask = np.zeros((g.n, g.n), dtype=bool)
    else:
        if h is None:
            raise ValueError("a level base needs a hierarchy")
        mask = h.light_mask[int(spec.base)].copy()
    if spec.pivots:
        mask |= h.pivot_edge_mask()
    for a, b in spec.blocks:
        block = np.outer(h.member[a], h.member[b])
        mask |= block | block.T
    np.fill_diagonal(mask, False)
    return mask


def dijkstra_dense(weights: np.ndarray, source: int) -> np.ndarray:
    """Dijkstra on a dense weight matrix (inf = no edge).

    The next vertex is the open one of least tentative distance, smallest id
    first, which is the order of a (distance, id) priority queue.
    """
    n = weights.shape[0]
    dist = np.full(n, INF)
    dist[source] = 0.0
    closed = np.zeros(n, dtype=bool)
    for _ in range(n):
        tent = np.where(closed, INF, dist)
        u = int(np.argmin(tent))
        if tent[u] == INF:
            break
        closed[u] = True
        np.minimum(dist, dist[u] + weights[u], out=dist)
    return dist


def _composed_weights(values: np.ndarray, mask: np.ndarray, fan: bool, source: int) -> np.ndarray:
    w = np.where(mask, values, INF)
    if fan:
        w[source] = values[source]
        w[:, source] = values[:, source]
    return w


def dijkstra_composed(g: Graph, d: DistanceMatrix, spec: ComposedSpec, source: int,
                      h: HittingHierarchy | None = None, mask: np.ndarray | None = None) -> np.ndarray:
    """Exact distances from ``source`` in the composed graph, weights read from d now."""
    if mask is None:
        mask = compile_mask(g, spec, h)
    return dijkstra_dense(_composed_weights(d.values, mask, spec.fan, source), source)


def worker_count() -> int:
    cap = os.environ.get("APASP_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise ValueError(f"APASP_THREADS must be an integer, got {cap!r}") from None
    return n


def level_sweep(g: Graph, d: DistanceMatrix, h: HittingHierarchy, level: int, spec: ComposedSpec,
                sources: Iterable[int] | None = None, parallel: bool = False) -> None:
    """SSSP from every member of S_level, merging each result into d.

    Sequential mode (the default) runs sources in ascending id order, each one
    seeing the merges of those before it. Parallel mode computes every source
    against a snapshot taken at the start of the level and merges afterwards.
    """
    order = list(h.sets[level]) if sources is None else list(sources)
    if not order:
        return
    mask = compile_mask(g, spec, h)
    if not parallel:
        for s in order:
            d.min_merge(s, dijkstra_dense(_composed_weights(d.values, mask, spec.fan, s), s))
        return
    snapshot = d.values.copy()

    def run(s):
        return dijkstra_dense(_composed_weights(snapshot, mask, spec.fan, s), s)

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        results = list(pool.map(run, order))
    for s, dist in zip(order, results):
        d.min_merge(s, dist)
