"""Weighted undirected graphs and exact shortest-path oracles."""
from __future__ import annotations

import hashlib
import heapq
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import NegativeWeightError, OracleCapError, UsageError

INF = math.inf
ORACLE_CAP = 2000


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Simple undirected graph on vertices ``0..n-1`` with nonnegative weights.

    Build instances with :meth:`from_edges`; it collapses parallel edges to
    their minimum weight and drops self-loops. ``edges`` is canonical: each
    entry is ``(u, v, w)`` with ``u < v``, sorted by ``(u, v)``.
    """

    n: int
    edges: tuple[tuple[int, int, float], ...]
    adjacency: tuple[tuple[tuple[int, float], ...], ...] = field(repr=False)
    # original vertex labels when a loader remapped sparse ids
    labels: tuple | None = field(default=None, repr=False)
    self_loops_dropped: int = field(default=0, repr=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence], labels=None) -> "WeightedGraph":
        if n < 0:
            raise UsageError(f"vertex count must be nonnegative, got {n}")
        best: dict[tuple[int, int], float] = {}
        loops = 0
        for u, v, w in edges:
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < n and 0 <= v < n):
                raise UsageError(f"edge ({u}, {v}) out of range for n={n}")
            if not w >= 0 or math.isnan(w):
                raise NegativeWeightError(f"edge ({u}, {v}) has invalid weight {w!r}")
            if u == v:
                loops += 1
                continue
            key = (u, v) if u < v else (v, u)
            old = best.get(key)
            if old is None or w < old:
                best[key] = w
        canon = tuple((u, v, w) for (u, v), w in sorted(best.items()))
        adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for u, v, w in canon:
            adj[u].append((v, w))
            adj[v].append((u, w))
        return cls(
            n=n,
            edges=canon,
            adjacency=tuple(tuple(a) for a in adj),
            labels=tuple(labels) if labels is not None else None,
            self_loops_dropped=loops,
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def is_unweighted(self) -> bool:
        return all(w == 1.0 for _, _, w in self.edges)

    def check_invariants(self) -> None:
        """Full rescan of the adjacency index against the edge list."""
        seen = set()
        for u, v, w in self.edges:
            assert 0 <= u < v < self.n, (u, v)
            assert w >= 0
            assert (u, v) not in seen
            seen.add((u, v))
        rebuilt = {}
        for x, nbrs in enumerate(self.adjacency):
            for y, w in nbrs:
                rebuilt[(x, y)] = w
        assert len(rebuilt) == 2 * len(self.edges)
        for u, v, w in self.edges:
            assert rebuilt[(u, v)] == w and rebuilt[(v, u)] == w

    @cached_property
    def arcs(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Both orientations of every edge as ``(tail, head, weight)`` arrays."""
        if not self.edges:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty, np.zeros(0)
        e = np.array(self.edges, dtype=np.float64)
        u = e[:, 0].astype(np.int64)
        v = e[:, 1].astype(np.int64)
        w = e[:, 2]
        return np.concatenate([u, v]), np.concatenate([v, u]), np.concatenate([w, w])

    def serialize(self) -> str:
        """Canonical edge-list text; ``repr`` keeps weights round-trip exact."""
        lines = [f"# n={self.n}"]
        lines.extend(f"{u} {v} {w!r}" for u, v, w in self.edges)
        return "\n".join(lines) + "\n"

    @cached_property
    def fingerprint(self) -> str:
        return hashlib.sha256(self.serialize().encode()).hexdigest()


@dataclass(frozen=True)
class DistanceVector:
    """Multi-source shortest-path distances.

    ``parent[v]`` is ``-1`` at sources and unreachable vertices. ``origin[v]``
    is the nearest source, smallest id among ties, or ``-1`` if unreachable.
    """

    sources: tuple[int, ...]
    dist: np.ndarray
    parent: np.ndarray
    origin: np.ndarray

    @property
    def source(self) -> int:
        return self.sources[0]


def dijkstra(g: WeightedGraph, sources) -> DistanceVector:
    """Multi-source Dijkstra with deterministic origin tie-breaking.

    Heap keys are ``(distance, origin)`` compared lexicographically, so every
    vertex ends up attached to the smallest-id source among those at minimum
    distance. Works with zero-weight edges.
    """
    if isinstance(sources, (int, np.integer)):
        sources = (int(sources),)
    srcs = tuple(sorted({int(s) for s in sources}))
    if not srcs:
        raise UsageError("dijkstra needs at least one source")
    n = g.n
    for s in srcs:
        if not 0 <= s < n:
            raise UsageError(f"source {s} out of range for n={n}")
    adj = g.adjacency
    dist = [INF] * n
    origin = [-1] * n
    parent = [-1] * n
    done = [False] * n
    heap = []
    for s in srcs:
        dist[s] = 0.0
        origin[s] = s
        heap.append((0.0, s, s))
    heapq.heapify(heap)
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        d, o, x = pop(heap)
        if done[x] or d != dist[x] or o != origin[x]:
            continue
        done[x] = True
        for y, w in adj[x]:
            nd = d + w
            dy = dist[y]
            if nd < dy or (nd == dy and o < origin[y] and not done[y]):
                dist[y] = nd
                origin[y] = o
                parent[y] = x
                push(heap, (nd, o, y))
    return DistanceVector(
        sources=srcs,
        dist=np.array(dist, dtype=np.float64),
        parent=np.array(parent, dtype=np.int64),
        origin=np.array(origin, dtype=np.int64),
    )


def all_pairs_distances(g: WeightedGraph, cap: int = ORACLE_CAP) -> np.ndarray:
    """Dense distance matrix by Floyd-Warshall.

    Deliberately shares no code with :func:`dijkstra` so the two can check
    each other.
    """
    n = g.n
    if n > cap:
        raise OracleCapError(f"all-pairs oracle refused: n={n} exceeds cap {cap}")
    d = np.full((n, n), INF)
    for u, v, w in g.edges:
        d[u, v] = d[v, u] = w
    np.fill_diagonal(d, 0.0)
    for x in range(n):
        np.minimum(d, d[:, x, None] + d[None, x, :], out=d)
    return d
