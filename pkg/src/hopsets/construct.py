"""Hopset construction: pivots, bunches, and the per-level edge sets.

For a vertex ``v`` whose top level is ``i``, its bunch is every vertex of
``V_i`` strictly closer to ``v`` than ``v``'s nearest ``V_{i+1}`` vertex
(its pivot). Level ``i`` of the hopset joins ``v`` to each bunch member and
to the pivot, weighted by the exact graph distance. When ``V_{i+1}`` is
empty, or unreachable from ``v``, the threshold is infinite.
"""
from __future__ import annotations

import heapq
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import UsageError
from .graph import INF, WeightedGraph, dijkstra
from .hierarchy import LevelAssignment, assign_levels

log = logging.getLogger(__name__)

METHODS = ("cluster", "definition")


@dataclass(frozen=True, eq=False)
class PivotTable:
    """``pivot_dist[i][v]`` = dist(v, V_i) and ``pivot[i][v]`` = p_i(v) or -1.

    Indexed ``0..k+1``. Row 0 is trivial (V_0 = V) and row ``k+1`` is all
    infinity, so thresholds can be read as ``pivot_dist[i + 1]`` at every level.
    """

    pivot_dist: tuple[np.ndarray, ...]
    pivot: tuple[np.ndarray, ...]

    @property
    def k(self) -> int:
        return len(self.pivot) - 2


def compute_pivots(g: WeightedGraph, levels: LevelAssignment) -> PivotTable:
    if levels.n != g.n:
        raise UsageError(f"level assignment has n={levels.n}, graph has n={g.n}")
    n, k = g.n, levels.k
    dists = [np.zeros(n)]
    pivs = [np.arange(n, dtype=np.int64)]
    for i in range(1, k + 1):
        sources = np.flatnonzero(levels.level >= i)
        if len(sources) == 0:
            dists.append(np.full(n, INF))
            pivs.append(np.full(n, -1, dtype=np.int64))
            continue
        dv = dijkstra(g, sources.tolist())
        piv = dv.origin.copy()
        # members pivot to themselves even when a zero-weight edge ties them
        # with a smaller member; the smallest id only breaks ties elsewhere
        piv[sources] = sources
        dists.append(dv.dist)
        pivs.append(piv)
    dists.append(np.full(n, INF))
    pivs.append(np.full(n, -1, dtype=np.int64))
    return PivotTable(tuple(dists), tuple(pivs))


def _bunch_by_definition(adj, v, i, level, threshold):
    """Truncated Dijkstra from v; members of V_i popped below the threshold."""
    out = {}
    dist = {v: 0.0}
    done = set()
    heap = [(0.0, v)]
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        d, x = pop(heap)
        if x in done:
            continue
        if d >= threshold:
            break
        done.add(x)
        if level[x] >= i:
            out[x] = d
        for y, w in adj[x]:
            nd = d + w
            if nd < threshold and nd < dist.get(y, INF):
                dist[y] = nd
                push(heap, (nd, y))
    return out


def _grow_cluster(adj, w, i, level, thresh, dist, done):
    """Vertices x of level exactly i with dist(w, x) < thresh[x].

    A vertex at or beyond its own threshold is never expanded: by the
    triangle inequality nothing behind it can be inside the cluster.
    ``dist``/``done`` are scratch arrays, restored to (INF, False) on return.
    """
    out = {}
    dist[w] = 0.0
    touched = [w]
    heap = [(0.0, w)]
    pop, push = heapq.heappop, heapq.heappush
    while heap:
        d, x = pop(heap)
        if done[x]:
            continue
        done[x] = True
        if not d < thresh[x]:
            continue
        if level[x] == i:
            out[x] = d
        for y, wt in adj[x]:
            nd = d + wt
            if nd < dist[y]:
                if dist[y] == INF:
                    touched.append(y)
                dist[y] = nd
                push(heap, (nd, y))
    for x in touched:
        dist[x] = INF
        done[x] = False
    return out


def compute_bunches(g: WeightedGraph, levels: LevelAssignment, pivots: PivotTable,
                    i: int, method: str = "definition") -> dict[int, dict[int, float]]:
    """Bunches of every vertex whose top level is ``i``.

    Returns ``{v: {u: dist(v, u)}}`` for each ``v`` in V_i minus V_{i+1}. The
    bunch contains ``v`` itself whenever its threshold is positive.
    """
    if not 0 <= i <= levels.k:
        raise UsageError(f"level {i} outside [0, {levels.k}]")
    level = levels.level.tolist()
    thresh = pivots.pivot_dist[i + 1].tolist()
    owners = levels.exact_level(i)
    adj = g.adjacency
    if method == "definition":
        return {v: _bunch_by_definition(adj, v, i, level, thresh[v]) for v in owners}
    if method == "cluster":
        bunches = {v: {} for v in owners}
        dist, done = [INF] * g.n, [False] * g.n
        for w in np.flatnonzero(levels.level >= i).tolist():
            for x, d in _grow_cluster(adj, w, i, level, thresh, dist, done).items():
                bunches[x][w] = d
        return {v: dict(sorted(b.items())) for v, b in bunches.items()}
    raise UsageError(f"unknown bunch method {method!r}; expected one of {METHODS}")


@dataclass(frozen=True, eq=False)
class Hopset:
    n: int
    k: int
    edges: tuple[tuple[int, int, float, int], ...]  # (u, v, w, level), u < v
    seed: int | None = None
    q: tuple[float, ...] = ()
    graph_fingerprint: str | None = None
    config: dict = field(default_factory=dict, compare=False)

    def __len__(self):
        return len(self.edges)

    def __eq__(self, other):
        if not isinstance(other, Hopset):
            return NotImplemented
        return (self.n, self.k, self.edges) == (other.n, other.k, other.edges)

    def level_counts(self) -> list[int]:
        counts = [0] * (self.k + 1)
        for *_, i in self.edges:
            counts[i] += 1
        return counts

    def union_pairs(self) -> dict[tuple[int, int], float]:
        """Levels dropped, each pair kept once at its minimum weight."""
        out: dict[tuple[int, int], float] = {}
        for u, v, w, _ in self.edges:
            old = out.get((u, v))
            if old is None or w < old:
                out[(u, v)] = w
        return out

    def as_graph(self) -> WeightedGraph:
        return WeightedGraph.from_edges(self.n, [(u, v, w) for (u, v), w in self.union_pairs().items()])


def _emit(edges, a, b, w, i):
    key = (a, b, i) if a < b else (b, a, i)
    old = edges.get(key)
    if old is None or w < old:
        edges[key] = w


def build_from_levels(g: WeightedGraph, levels: LevelAssignment, method: str = "cluster",
                      seed=None) -> tuple[Hopset, PivotTable]:
    pivots = compute_pivots(g, levels)
    edges: dict[tuple[int, int, int], float] = {}
    for i in range(levels.k + 1):
        bunches = compute_bunches(g, levels, pivots, i, method)
        pd = pivots.pivot_dist[i + 1]
        pv = pivots.pivot[i + 1]
        for v, bunch in bunches.items():
            for u, d in bunch.items():
                if u != v:
                    _emit(edges, v, u, d, i)
            p = int(pv[v])
            if p >= 0:
                _emit(edges, v, p, float(pd[v]), i)
    ordered = tuple(sorted(((a, b, w, i) for (a, b, i), w in edges.items()),
                           key=lambda e: (e[3], e[0], e[1])))
    h = Hopset(n=g.n, k=levels.k, edges=ordered, seed=seed if seed is not None else levels.seed,
               q=levels.q, graph_fingerprint=g.fingerprint)
    return h, pivots


def build_hopset(g: WeightedGraph, k: int, seed: int, method: str = "cluster"):
    """Sample levels from ``seed`` and build the hopset.

    Returns ``(hopset, levels, pivots)``. Graphs with fewer than two vertices
    get an all-zero level assignment and an empty hopset.
    """
    if k < 1:
        raise UsageError(f"need k >= 1, got {k}")
    if g.n < 2:
        levels = LevelAssignment(k=k, level=np.zeros(g.n, dtype=np.int64), seed=seed)
    else:
        levels = assign_levels(g.n, k, seed)
    h, pivots = build_from_levels(g, levels, method, seed=seed)
    log.debug("built hopset n=%d k=%d seed=%s |H|=%d", g.n, k, seed, len(h))
    return h, levels, pivots


@dataclass(frozen=True)
class SizeStats:
    n: int
    k: int
    counts: tuple[int, ...]
    bounds: tuple[float, ...]  # n^{1+1/(2^{k+1}-1)} * 2^{2-i}
    unit: float  # n^{1+1/(2^{k+1}-1)}

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def ratios(self) -> tuple[float, ...]:
        return tuple(c / b for c, b in zip(self.counts, self.bounds))

    @property
    def total_ratio(self) -> float:
        return self.total / self.unit

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "counts": list(self.counts), "total": self.total,
                "bounds": list(self.bounds), "ratios": list(self.ratios),
                "total_ratio": self.total_ratio}


def size_unit(n: int, k: int) -> float:
    return float(n) ** (1.0 + 1.0 / (2 ** (k + 1) - 1)) if n > 0 else 0.0


def size_stats(h: Hopset, n: int | None = None, k: int | None = None) -> SizeStats:
    n = h.n if n is None else n
    k = h.k if k is None else k
    unit = size_unit(n, k)
    counts = [0] * (k + 1)
    for *_, i in h.edges:
        counts[i] += 1
    bounds = tuple(unit * math.ldexp(1.0, 2 - i) for i in range(k + 1))
    return SizeStats(n=n, k=k, counts=tuple(counts), bounds=bounds, unit=unit)
