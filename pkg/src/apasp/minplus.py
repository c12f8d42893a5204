"""Min-plus products, exact and (1+eps)-approximate, and multi-source distances."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import INF, Graph
from .sssp import DistanceMatrix, dijkstra_dense


@dataclass(frozen=True)
class MinPlusMatrix:
    """Rectangular matrix over (min, +) with optional vertex labels for rows and columns."""

    values: np.ndarray
    rows: tuple[int, ...] | None = None
    cols: tuple[int, ...] | None = None

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape


def _values(m) -> np.ndarray:
    return np.asarray(m.values if isinstance(m, MinPlusMatrix) else m, dtype=np.float64)


def _labels(m, axis: int):
    if isinstance(m, MinPlusMatrix):
        return m.rows if axis == 0 else m.cols
    return None


def _kernel(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Cubic min-plus product; the middle index is the explicit loop."""
    c = np.full((a.shape[0], b.shape[1]), INF)
    for k in range(a.shape[1]):
        np.minimum(c, a[:, k:k + 1] + b[k], out=c)
    return c


def mpmm_exact(A, B) -> MinPlusMatrix:
    a, b = _values(A), _values(B)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    return MinPlusMatrix(_kernel(a, b), _labels(A, 0), _labels(B, 1))


def ampmm(A, B, eps: float, W: float | None = None) -> MinPlusMatrix:
    """(1+eps)-approximate min-plus product by scaling.

    For each power-of-two scale, entries up to the scale are rounded up to
    multiples of scale/R with R = 2^ceil(log2(4/eps)), giving small integers;
    the exact products of those are rescaled and the minimum is taken over
    scales. Rounding only goes up, so the result never drops below the exact
    product, and at the scale matching the optimal pair the rounding adds at
    most 4/R of its value. All arithmetic is on dyadic numbers, so it is exact.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    a, b = _values(A), _values(B)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    if (a < 0).any() or (b < 0).any():
        raise ValueError("entries must be nonnegative")
    finite = np.concatenate([a[np.isfinite(a)], b[np.isfinite(b)]])
    if W is not None and finite.size and finite.max() > W:
        raise ValueError(f"entry {finite.max()} exceeds the declared bound {W}")
    rows, cols = _labels(A, 0), _labels(B, 1)
    positive = finite[finite > 0]
    if positive.size == 0:
        return MinPlusMatrix(_kernel(a, b), rows, cols)
    R = 2.0 ** math.ceil(math.log2(4.0 / eps))
    lo = math.floor(math.log2(positive.min()))
    hi = math.ceil(math.log2(positive.max()))
    out = np.full((a.shape[0], b.shape[1]), INF)
    for r in range(lo, hi + 1):
        step = 2.0 ** r / R
        ar = np.where(a <= 2.0 ** r, np.ceil(a / step), INF)
        br = np.where(b <= 2.0 ** r, np.ceil(b / step), INF)
        np.minimum(out, _kernel(ar, br) * step, out=out)
    return MinPlusMatrix(out, rows, cols)


def msasp(g: Graph, sources: Sequence[int], eps: float = 0.0, backend: str = "exact") -> MinPlusMatrix:
    """Distances from each source, each within a (1+eps) factor of exact.

    ``exact`` runs Dijkstra per source. ``scaled`` squares the adjacency matrix
    ceil(log2(n-1)) times with ampmm at an internal eps' chosen so that the
    per-squaring factors compound to at most 1+eps.
    """
    sources = tuple(int(s) for s in sources)
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    adj = DistanceMatrix.from_graph(g).values
    if backend not in ("exact", "scaled"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "exact" or eps == 0:
        rows = [dijkstra_dense(adj, s) for s in sources]
        vals = np.array(rows) if rows else np.zeros((0, g.n))
        return MinPlusMatrix(vals, sources, tuple(range(g.n)))
    rounds = math.ceil(math.log2(g.n - 1)) if g.n > 2 else 0
    cur = adj
    if rounds:
        inner = (1.0 + eps) ** (1.0 / rounds) - 1.0
        for _ in range(rounds):
            cur = ampmm(cur, cur, inner).values
    return MinPlusMatrix(cur[list(sources)] if sources else np.zeros((0, g.n)),
                         sources, tuple(range(g.n)))


def submatrix(d: DistanceMatrix, rows: Sequence[int], cols: Sequence[int]) -> MinPlusMatrix:
    rows = tuple(int(r) for r in rows)
    cols = tuple(int(c) for c in cols)
    return MinPlusMatrix(d.values[np.ix_(rows, cols)].copy(), rows, cols)
