"""Neighborhoods, hitting sets, pivots, light edges and nested hitting-set hierarchies."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graph import INF, Graph


@dataclass(frozen=True)
class Neighborhood:
    """Nearest vertices to ``owner`` as ``(vertex, exact distance)``, nearest first."""

    owner: int
    members: tuple[tuple[int, float], ...]

    def vertices(self) -> list[int]:
        return [x for x, _ in self.members]

    def __len__(self) -> int:
        return len(self.members)


def settle_order(g: Graph, source: int):
    """Yield ``(vertex, distance)`` in the order a heap Dijkstra settles them."""
    dist = {source: 0.0}
    done = set()
    heap = [(0.0, source)]
    while heap:
        du, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        yield u, du
        for v, w in g.adj[u]:
            nd = du + w
            if v not in done and nd < dist.get(v, INF):
                dist[v] = nd
                heapq.heappush(heap, (nd, v))


def _nearest(g: Graph, u: int, k: int, accept) -> Neighborhood:
    # Keep settling past the k-th hit until the distance grows, so that
    # zero-weight edges cannot smuggle a smaller id past the tie rule.
    found: list[tuple[float, int]] = []
    for x, dx in settle_order(g, u):
        if len(found) >= k and dx > found[k - 1][0]:
            break
        if x != u and accept(x):
            found.append((dx, x))
    found.sort()
    return Neighborhood(u, tuple((x, dx) for dx, x in found[:k]))


def k_nearest(g: Graph, u: int, k: int) -> Neighborhood:
    """The k nearest vertices to u, excluding u, ties by vertex id."""
    if k < 1:
        return Neighborhood(u, ())
    return _nearest(g, u, k, lambda x: True)


def k_nearest_restricted(g: Graph, u: int, A: Iterable[int], k: int) -> Neighborhood:
    """The k nearest members of A to u, excluding u, ties by vertex id."""
    members = set(A)
    if k < 1 or not members:
        return Neighborhood(u, ())
    return _nearest(g, u, k, members.__contains__)


def within_radius(g: Graph, u: int, radius: float) -> dict[int, float]:
    """Exact distances from u to every vertex strictly closer than ``radius`` (u included)."""
    out = {}
    for x, dx in settle_order(g, u):
        if dx >= radius:
            break
        out[x] = dx
    return out


def _greedy(sets: Sequence[Sequence[int]], n: int, candidates: np.ndarray | None):
    """Greedy max-coverage; returns (chosen ids, indices of sets left uncovered)."""
    holders: list[list[int]] = [[] for _ in range(n)]
    count = np.zeros(n, dtype=np.int64)
    for j, s in enumerate(sets):
        for x in set(s):
            holders[x].append(j)
            count[x] += 1
    if candidates is not None:
        count[~candidates] = 0
    covered = np.zeros(len(sets), dtype=bool)
    left = len(sets)
    chosen = []
    while left:
        x = int(np.argmax(count))  # first maximum, i.e. smallest id
        if count[x] == 0:
            break
        chosen.append(x)
        for j in holders[x]:
            if not covered[j]:
                covered[j] = True
                left -= 1
                for y in set(sets[j]):
                    if count[y] > 0:
                        count[y] -= 1
    return sorted(chosen), np.flatnonzero(~covered).tolist()


def greedy_hitting_set(sets: Sequence[Iterable[int]], n: int) -> frozenset[int]:
    """Deterministic hitting set: repeatedly take the vertex in most unhit sets."""
    sets = [list(s) for s in sets]
    for j, s in enumerate(sets):
        if not s:
            raise ValueError(f"input set {j} is empty")
        if min(s) < 0 or max(s) >= n:
            raise ValueError(f"input set {j} has an element outside [0, {n})")
    chosen, left = _greedy(sets, n, None)
    assert not left
    return frozenset(chosen)


def pivots_and_distances(g: Graph, S: Iterable[int]) -> tuple[np.ndarray, np.ndarray]:
    """Nearest member of S for every vertex, ties to the smallest pivot id.

    One Dijkstra from a virtual source joined to S by 0-weight edges; labels
    are compared as (distance, pivot). Pivot is -1 and distance inf when S is
    out of reach.
    """
    S = sorted(set(S))
    pivot = np.full(g.n, -1, dtype=np.int64)
    dist = np.full(g.n, INF)
    heap = []
    for s in S:
        pivot[s], dist[s] = s, 0.0
        heap.append((0.0, s, s))
    heapq.heapify(heap)
    done = np.zeros(g.n, dtype=bool)
    while heap:
        du, pu, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, w in g.adj[u]:
            if done[v]:
                continue
            # members relay labels too, so a zero-weight route through one
            # member can still hand a smaller-id pivot to the vertices beyond
            label = (du + w, pu)
            if label < (dist[v], pivot[v]):
                dist[v], pivot[v] = label
                heapq.heappush(heap, (label[0], pu, v))
    for s in S:
        pivot[s], dist[s] = s, 0.0
    return pivot, dist


def light_edges(g: Graph, pivot_dist: np.ndarray) -> frozenset[tuple[int, int]]:
    """Edges lighter than the pivot distance of at least one endpoint."""
    return frozenset((u, v) for u, v, w in g.edges
                     if w < pivot_dist[u] or w < pivot_dist[v])


def level_sizes(n: int, exponents: Sequence[float]) -> list[int]:
    """Neighborhood size per level: ceil(n ** alpha) clamped to [1, n - 1]."""
    top = max(n - 1, 1)
    # the small tolerance keeps exact powers such as 64 ** (1/3) from rounding up
    return [min(max(math.ceil(n ** a - 1e-9), 1), top) for a in exponents]


@dataclass(frozen=True)
class HittingHierarchy:
    """Nested sets V = S_0 >= S_1 >= ... >= S_L >= S_{L+1} = {} with pivot data.

    Arrays are indexed by level first. Level 0 pivots every vertex to itself;
    level L+1 has no pivots and every edge is light.
    """

    n: int
    exponents: tuple[float, ...]
    sizes: tuple[int, ...]
    sets: tuple[tuple[int, ...], ...]
    member: np.ndarray
    pivot: np.ndarray
    pivot_dist: np.ndarray
    light: tuple[frozenset, ...]
    light_mask: np.ndarray

    @property
    def depth(self) -> int:
        """Number of nontrivial levels L."""
        return len(self.exponents)

    def pivot_edge_mask(self) -> np.ndarray:
        """Symmetric mask of the pairs (u, p_j(u)) over all levels j."""
        mask = np.zeros((self.n, self.n), dtype=bool)
        for j in range(1, self.depth + 1):
            us = np.flatnonzero(self.pivot[j] >= 0)
            ps = self.pivot[j][us]
            mask[us, ps] = True
            mask[ps, us] = True
        np.fill_diagonal(mask, False)
        return mask


def build_hierarchy(g: Graph, exponents: Sequence[float]) -> HittingHierarchy:
    exponents = tuple(float(a) for a in exponents)
    if not exponents:
        raise ValueError("need at least one level exponent")
    for a in exponents:
        if not 0 < a <= 1:
            raise ValueError(f"level exponent {a} outside (0, 1]")
    if any(b < a for a, b in zip(exponents, exponents[1:])):
        raise ValueError("level exponents must be nondecreasing")
    n, L = g.n, len(exponents)
    sizes = level_sizes(n, exponents)

    hoods = [k_nearest(g, u, sizes[-1]).vertices() for u in range(n)]
    levels: list[set[int]] = [set(range(n))]
    for k in sizes:
        sets = [h[:k] for h in hoods if h]
        pool = np.zeros(n, dtype=bool)
        pool[list(levels[-1])] = True
        chosen, left = _greedy(sets, n, pool)
        chosen = set(chosen)
        if left:
            extra, _ = _greedy([sets[j] for j in left], n, None)
            chosen.update(extra)
            for coarser in levels[1:]:
                coarser.update(extra)
        levels.append(chosen)
    levels.append(set())

    member = np.zeros((L + 2, n), dtype=bool)
    pivot = np.full((L + 2, n), -1, dtype=np.int64)
    pdist = np.full((L + 2, n), INF)
    for i, s in enumerate(levels):
        member[i, sorted(s)] = True
        pivot[i], pdist[i] = pivots_and_distances(g, s)

    light = []
    masks = np.zeros((L + 2, n, n), dtype=bool)
    for i in range(L + 2):
        e = light_edges(g, pdist[i])
        light.append(e)
        if e:
            us, vs = np.array(sorted(e)).T
            masks[i, us, vs] = True
            masks[i, vs, us] = True
    return HittingHierarchy(n, exponents, tuple(sizes),
                            tuple(tuple(sorted(s)) for s in levels),
                            member, pivot, pdist, tuple(light), masks)


@dataclass(frozen=True)
class Bunches:
    """Exact distances from each vertex to everything closer than its top-level pivot.

    The level-i bunch of u is ``{s in S_i : dist(u, s) < dist(u, S_{i+1})}``;
    for the top level that is every reachable member of S_L.
    """

    dist: tuple[dict[int, float], ...]
    component: np.ndarray

    def members(self, h: HittingHierarchy, u: int, i: int) -> list[tuple[int, float]]:
        if i >= h.depth:
            raise ValueError("top-level bunch distances are not stored")
        bound = h.pivot_dist[i + 1][u]
        return sorted((x, dx) for x, dx in self.dist[u].items()
                      if dx < bound and h.member[i, x])

    def contains(self, h: HittingHierarchy, u: int, i: int, s: int) -> bool:
        if s < 0 or not h.member[i, s]:
            return False
        if i >= h.depth:
            return bool(self.component[u] == self.component[s])
        dx = self.dist[u].get(s)
        return dx is not None and dx < h.pivot_dist[i + 1][u]


def components(g: Graph) -> np.ndarray:
    label = np.full(g.n, -1, dtype=np.int64)
    for r in range(g.n):
        if label[r] >= 0:
            continue
        label[r] = r
        stack = [r]
        while stack:
            x = stack.pop()
            for y, _ in g.adj[x]:
                if label[y] < 0:
                    label[y] = r
                    stack.append(y)
    return label


def build_bunches(g: Graph, h: HittingHierarchy) -> Bunches:
    top = h.depth
    dist = tuple(within_radius(g, u, h.pivot_dist[top][u]) for u in range(g.n))
    return Bunches(dist, components(g))
