"""Weighted undirected graphs: normalization, generators and edge-list I/O."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

INF = math.inf


class GraphFormatError(ValueError):
    """Raised when an edge-list file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Graph:
    """Immutable undirected graph with nonnegative finite weights.

    ``edges`` holds each edge once as ``(u, v, w)`` with ``u < v``, sorted.
    ``adj[u]`` lists ``(neighbor, weight)`` pairs sorted by neighbor id.
    """

    n: int
    edges: tuple[tuple[int, int, float], ...]
    adj: tuple[tuple[tuple[int, float], ...], ...] = field(repr=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def weight_matrix(self) -> np.ndarray:
        """Dense n x n matrix of edge weights, inf where there is no edge."""
        w = np.full((self.n, self.n), INF)
        for u, v, x in self.edges:
            w[u, v] = w[v, u] = x
        return w

    def edge_mask(self) -> np.ndarray:
        mask = np.zeros((self.n, self.n), dtype=bool)
        for u, v, _ in self.edges:
            mask[u, v] = mask[v, u] = True
        return mask

    def is_integer_weighted(self) -> bool:
        return all(float(w).is_integer() for _, _, w in self.edges)

    def max_weight(self) -> float:
        return max((w for _, _, w in self.edges), default=0.0)


def from_edges(n: int, edges) -> Graph:
    """Build a normalized graph: drop self loops, keep the lightest parallel edge."""
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    best: dict[tuple[int, int], float] = {}
    for u, v, w in edges:
        u, v, w = int(u), int(v), float(w)
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"vertex id out of range in edge ({u}, {v})")
        if w < 0 or not math.isfinite(w):
            raise ValueError(f"weight must be finite and nonnegative, got {w}")
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        if key not in best or w < best[key]:
            best[key] = w
    edge_list = tuple(sorted((u, v, w) for (u, v), w in best.items()))
    nbrs: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for u, v, w in edge_list:
        nbrs[u].append((v, w))
        nbrs[v].append((u, w))
    adj = tuple(tuple(sorted(a)) for a in nbrs)
    return Graph(n, edge_list, adj)


def check_weight_class(g: Graph, bound: float | None = None) -> None:
    """Raise unless every weight is an integer in ``[0, bound]``."""
    for u, v, w in g.edges:
        if not float(w).is_integer():
            raise ValueError(f"edge ({u}, {v}) has non-integer weight {w}; "
                             "approximate (eps > 0) runs need integer weights")
        if bound is not None and w > bound:
            raise ValueError(f"edge ({u}, {v}) weight {w} exceeds bound {bound}")


def _parse_number(tok: str, lineno: int, what: str) -> float:
    try:
        return float(tok)
    except ValueError:
        raise GraphFormatError(f"bad {what} {tok!r}", lineno) from None


def _parse_id(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphFormatError(f"bad vertex id {tok!r}", lineno) from None


def parse_graph(text: str) -> Graph:
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if header is None:
            if len(toks) != 2:
                raise GraphFormatError("header must be 'n m'", lineno)
            n, m = _parse_id(toks[0], lineno), _parse_id(toks[1], lineno)
            if n < 0 or m < 0:
                raise GraphFormatError("negative count in header", lineno)
            header = (n, m)
            continue
        if len(toks) != 3:
            raise GraphFormatError("edge line must be 'u v w'", lineno)
        u, v = _parse_id(toks[0], lineno), _parse_id(toks[1], lineno)
        w = _parse_number(toks[2], lineno, "weight")
        n = header[0]
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex id out of range [0, {n})", lineno)
        if w < 0 or not math.isfinite(w):
            raise GraphFormatError(f"weight must be finite and nonnegative, got {toks[2]}", lineno)
        edges.append((u, v, w))
    if header is None:
        raise GraphFormatError("missing header")
    if len(edges) != header[1]:
        raise GraphFormatError(f"header declares {header[1]} edges, found {len(edges)}")
    return from_edges(header[0], edges)


def load_graph(path) -> Graph:
    return parse_graph(Path(path).read_text())


def format_weight(w: float) -> str:
    # repr round-trips doubles exactly; integers print without a fraction
    return str(int(w)) if float(w).is_integer() and abs(w) < 2**53 else repr(float(w))


def dump_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v} {format_weight(w)}" for u, v, w in g.edges]
    return "\n".join(lines) + "\n"


def save_graph(g: Graph, path) -> None:
    Path(path).write_text(dump_graph(g))


def gen_random(n: int, p: float, wmin: int, wmax: int, seed: int) -> Graph:
    """Erdos-Renyi G(n, p) with integer weights drawn uniformly from [wmin, wmax]."""
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    if not 0 <= wmin <= wmax:
        raise ValueError("need 0 <= wmin <= wmax")
    rng = np.random.default_rng(seed)
    iu, iv = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    weights = rng.integers(wmin, wmax, size=int(keep.sum()), endpoint=True)
    return from_edges(n, zip(iu[keep].tolist(), iv[keep].tolist(), weights.tolist()))


def gen_grid(rows: int, cols: int, wmin: int, wmax: int, seed: int) -> Graph:
    """rows x cols lattice with integer weights uniform in [wmin, wmax]."""
    if rows < 1 or cols < 1:
        raise ValueError("grid dimensions must be positive")
    if not 0 <= wmin <= wmax:
        raise ValueError("need 0 <= wmin <= wmax")
    rng = np.random.default_rng(seed)
    pairs = []
    for r in range(rows):
        for c in range(cols):
            u = r * cols + c
            if c + 1 < cols:
                pairs.append((u, u + 1))
            if r + 1 < rows:
                pairs.append((u, u + cols))
    weights = rng.integers(wmin, wmax, size=len(pairs), endpoint=True).tolist()
    return from_edges(rows * cols, ((u, v, w) for (u, v), w in zip(pairs, weights)))
