"""Independent checks of a built hopset.

Exact distances come from :func:`hopsets.graph.dijkstra`. Bounded-hop
distances in G+H come from synchronous relaxation rounds, which is the
definition of a t-hop distance, run for a batch of sources at once.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as csgraph_dijkstra

from .construct import Hopset, size_stats
from .errors import FingerprintMismatch, UsageError
from .graph import INF, WeightedGraph, dijkstra
from .params import HopsetParams
from .rng import stream

SCHEMA_VERSION = 1
REL_TOL = 1e-9
AUDIT_EXHAUSTIVE_N = 500
_BATCH = 32


class BoundedHopRelaxer:
    """Round-based relaxation over the arcs of G with H added.

    Pairs present in both G and H (or in several levels of H) are kept once
    at their minimum weight; levels play no role here.
    """

    def __init__(self, g: WeightedGraph, h: Hopset | None = None):
        pairs = {(u, v): w for u, v, w in g.edges}
        if h is not None:
            if h.n != g.n:
                raise UsageError(f"hopset has n={h.n}, graph has n={g.n}")
            for key, w in h.union_pairs().items():
                old = pairs.get(key)
                if old is None or w < old:
                    pairs[key] = w
        self.n = g.n
        if pairs:
            e = np.array([(u, v, w) for (u, v), w in pairs.items()], dtype=np.float64)
            u, v, w = e[:, 0].astype(np.int64), e[:, 1].astype(np.int64), e[:, 2]
            tail, head, wt = np.concatenate([u, v]), np.concatenate([v, u]), np.concatenate([w, w])
            order = np.argsort(head, kind="stable")
            self.tail, self.head, self.w = tail[order], head[order], wt[order]
            self.heads, self.starts = np.unique(self.head, return_index=True)
        else:
            self.tail = self.head = self.heads = self.starts = np.zeros(0, dtype=np.int64)
            self.w = np.zeros(0)
        self.num_edges = len(pairs)

    def step(self, d: np.ndarray) -> np.ndarray:
        """One synchronous round: d^{(t+1)} from d^{(t)} for a batch of rows."""
        new = d.copy()
        if len(self.tail):
            cand = d[:, self.tail] + self.w
            best = np.minimum.reduceat(cand, self.starts, axis=1)
            new[:, self.heads] = np.minimum(d[:, self.heads], best)
        return new

    def run(self, sources, beta: int, watch=None):
        """Distances within ``beta`` hops from each source.

        ``watch`` is an optional list of ``(row, target, threshold)``; for each
        the first round whose distance is ``<= threshold`` is reported (or
        ``None``). Iteration stops early at a fixpoint, since every later
        round would repeat it. Returns ``(matrix, first_rounds, rounds_run)``.
        """
        if beta < 0:
            raise UsageError(f"hop budget must be >= 0, got {beta}")
        sources = [int(s) for s in sources]
        out = np.empty((len(sources), self.n))
        first = [None] * (len(watch) if watch else 0)
        rounds_run = 0
        for lo in range(0, len(sources), _BATCH):
            rows = sources[lo:lo + _BATCH]
            d = np.full((len(rows), self.n), INF)
            d[np.arange(len(rows)), rows] = 0.0
            mine = []
            if watch:
                mine = [(j, r - lo, t, thr) for j, (r, t, thr) in enumerate(watch) if lo <= r < lo + _BATCH]
            self._mark(d, mine, first, 0)
            t = 0
            while t < beta:
                new = self.step(d)
                t += 1
                if np.array_equal(new, d):
                    break
                d = new
                self._mark(d, mine, first, t)
            rounds_run = max(rounds_run, t)
            out[lo:lo + len(rows)] = d
        return out, first, rounds_run

    @staticmethod
    def _mark(d, mine, first, t):
        for j, r, tgt, thr in mine:
            if first[j] is None and d[r, tgt] <= thr:
                first[j] = t


def bounded_hop_distances(g: WeightedGraph, h: Hopset | None, source: int, beta: int) -> np.ndarray:
    """Shortest distances from ``source`` over paths of at most ``beta`` edges of G and H."""
    if not 0 <= source < g.n:
        raise UsageError(f"source {source} out of range")
    d, _, _ = BoundedHopRelaxer(g, h).run([source], beta)
    return d[0]


def min_hops_for_stretch(g: WeightedGraph, h: Hopset | None, u: int, v: int,
                         target_stretch: float, cap: int) -> tuple[int, bool]:
    """Fewest hops reaching ``target_stretch`` times the true distance.

    Returns ``(hops, met)``; when the target is not reached within ``cap``
    rounds the result is ``(cap, False)``.
    """
    if target_stretch < 1:
        raise UsageError(f"target stretch must be >= 1, got {target_stretch}")
    exact = dijkstra(g, u).dist[v]
    if math.isinf(exact):
        raise UsageError(f"pair ({u}, {v}) is unreachable")
    thr = target_stretch * exact * (1 + REL_TOL)
    _, first, _ = BoundedHopRelaxer(g, h).run([u], cap, watch=[(0, v, thr)])
    if first[0] is None:
        return cap, False
    return first[0], True


@dataclass(frozen=True)
class PairSpec:
    count: int = 200
    mode: str = "uniform"  # "uniform" | "stratified"
    seed: int = 0

    @classmethod
    def parse(cls, text: str, seed: int = 0) -> "PairSpec":
        """``200`` or ``200:stratified``."""
        count, _, mode = text.partition(":")
        try:
            return cls(int(count), mode or "uniform", seed)
        except ValueError:
            raise UsageError(f"bad pair spec {text!r}") from None


def sample_pairs(g: WeightedGraph, spec: PairSpec) -> list[tuple[int, int]]:
    n = g.n
    if spec.count < 0:
        raise UsageError("pair count must be >= 0")
    rng = stream(spec.seed, "pairs")
    if n == 0 or spec.count == 0:
        return []
    if n == 1:
        return [(0, 0)] * spec.count

    def draw(count):
        u = rng.integers(0, n, size=count)
        v = (u + rng.integers(1, n, size=count)) % n
        return list(zip(u.tolist(), v.tolist()))

    if spec.mode == "uniform":
        return draw(spec.count)
    if spec.mode != "stratified":
        raise UsageError(f"unknown pair sampling mode {spec.mode!r}")
    # Bucket a 4x candidate pool by exact-distance decile so long pairs show up.
    pool = draw(4 * spec.count)
    exact = _exact_for_pairs(g, pool)
    reach = [(d, p) for d, p in zip(exact, pool) if not math.isinf(d)]
    if not reach:
        return pool[:spec.count]
    reach.sort()
    deciles = [reach[len(reach) * b // 10: len(reach) * (b + 1) // 10] for b in range(10)]
    out = []
    j = 0
    while len(out) < spec.count and any(j < len(b) for b in deciles):
        for b in deciles:
            if j < len(b) and len(out) < spec.count:
                out.append(b[j][1])
        j += 1
    return out


def _exact_for_pairs(g, pairs):
    cache = {}
    out = []
    for u, v in pairs:
        if u not in cache:
            cache[u] = dijkstra(g, u).dist
        out.append(float(cache[u][v]))
    return out


@dataclass
class PairRecord:
    u: int
    v: int
    exact: float
    bounded_hop: float
    stretch: float
    hops_used: int | None


@dataclass
class StretchReport:
    params: dict
    header: dict
    pairs: list[PairRecord]
    aggregate: dict
    size_stats: dict
    weight_audit: dict
    schema_version: int = SCHEMA_VERSION

    @property
    def passed(self) -> bool:
        a = self.aggregate
        return a["violations"] == 0 and a["lower_violations"] == 0 and self.weight_audit["mismatches"] == 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d

    def to_json(self) -> str:
        return json.dumps(_jsonable(self.to_dict()), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["u", "v", "exact", "bounded_hop", "stretch", "hops_used"])
        for p in self.pairs:
            w.writerow([p.u, p.v, repr(p.exact), repr(p.bounded_hop), repr(p.stretch),
                        "" if p.hops_used is None else p.hops_used])
        return buf.getvalue()


def _jsonable(x):
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return "nan"
        return x
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.generic):
        return _jsonable(x.item())
    return x


def check_fingerprint(g: WeightedGraph, h: Hopset) -> None:
    if h.n != g.n:
        raise FingerprintMismatch(f"hopset built for n={h.n}, graph has n={g.n}")
    if h.graph_fingerprint is not None and h.graph_fingerprint != g.fingerprint:
        raise FingerprintMismatch(
            f"hopset fingerprint {h.graph_fingerprint[:12]} does not match graph {g.fingerprint[:12]}"
        )


def audit_edge_weights(g: WeightedGraph, h: Hopset, sample: int = 200, seed: int = 0) -> dict:
    """Compare hopset weights with fresh Dijkstra distances.

    Exhaustive for ``n <= 500``, otherwise a seeded sample of edges.
    ``mismatches`` counts relative differences above 1e-9; ``inexact`` counts
    any bitwise difference.
    """
    edges = list(h.edges)
    exhaustive = g.n <= AUDIT_EXHAUSTIVE_N or len(edges) <= sample
    if not exhaustive:
        idx = stream(seed, "audit").choice(len(edges), size=sample, replace=False)
        edges = [edges[i] for i in sorted(idx.tolist())]
    cache = {}
    mismatches = inexact = 0
    worst = None
    for u, v, w, i in edges:
        if u not in cache:
            cache[u] = dijkstra(g, u).dist
        d = float(cache[u][v])
        if w != d:
            inexact += 1
            if not abs(w - d) <= REL_TOL * d:
                mismatches += 1
                if worst is None:
                    worst = {"u": u, "v": v, "level": i, "weight": w, "dist": d}
    return {"checked": len(edges), "exhaustive": exhaustive, "mismatches": mismatches,
            "inexact": inexact, "first_mismatch": worst}


def verify_hopset(g: WeightedGraph, h: Hopset, params: HopsetParams, pairs=PairSpec(),
                  audit: bool = True, header: dict | None = None) -> StretchReport:
    """Check the hop-bounded stretch guarantee on sampled pairs.

    ``pairs`` is a :class:`PairSpec` or an explicit list of vertex pairs. A
    pair violates the guarantee when its distance within ``params.beta`` hops
    exceeds ``(1 + eps) * exact`` beyond relative tolerance 1e-9; it is a
    lower violation when it undercuts ``exact``.
    """
    check_fingerprint(g, h)
    if params.k != h.k:
        raise UsageError(f"params are for k={params.k}, hopset has k={h.k}")
    if isinstance(pairs, PairSpec):
        spec = pairs
        pair_list = sample_pairs(g, spec)
    else:
        spec = None
        pair_list = [(int(u), int(v)) for u, v in pairs]
    pair_list.sort()

    exact = _exact_for_pairs(g, pair_list)
    bound = params.stretch_bound
    sources = sorted({u for u, _ in pair_list})
    row = {s: j for j, s in enumerate(sources)}
    watch = [(row[u], v, bound * e * (1 + REL_TOL)) for (u, v), e in zip(pair_list, exact)]
    relaxer = BoundedHopRelaxer(g, h)
    bh, first, rounds = relaxer.run(sources, params.beta, watch)

    records = []
    skipped = violations = lower = 0
    stretches = []
    for j, ((u, v), e) in enumerate(zip(pair_list, exact)):
        if math.isinf(e):
            skipped += 1
            continue
        b = float(bh[row[u], v])
        if e == 0:
            s = 1.0 if b == 0 else INF
        else:
            s = b / e
        if b > bound * e * (1 + REL_TOL):
            violations += 1
        if b < e * (1 - REL_TOL):
            lower += 1
        stretches.append(s)
        records.append(PairRecord(u, v, e, b, s, first[j]))

    aggregate = {
        "pairs_checked": len(records),
        "pairs_skipped_unreachable": skipped,
        "violations": violations,
        "lower_violations": lower,
        "max_stretch": max(stretches) if stretches else 1.0,
        "mean_stretch": float(np.mean(stretches)) if stretches else 1.0,
        "max_hops_used": max((r.hops_used for r in records if r.hops_used is not None), default=0),
        "rounds_run": rounds,
    }
    hdr = {"graph_fingerprint": g.fingerprint, "n": g.n, "m": g.m, "hopset_size": len(h),
           "hopset_seed": h.seed, "pair_spec": asdict(spec) if spec else None,
           "union_edges": relaxer.num_edges}
    if g.labels is not None:
        hdr["vertex_labels"] = list(g.labels)
    if header:
        hdr.update(header)
    weight_audit = audit_edge_weights(g, h) if audit else {"checked": 0, "mismatches": 0}
    return StretchReport(params=params.to_dict(), header=hdr, pairs=records, aggregate=aggregate,
                         size_stats=size_stats(h).to_dict(), weight_audit=weight_audit)


def _hopset_matrix(h: Hopset):
    pairs = h.union_pairs()
    if not pairs:
        return None
    e = np.array([(u, v, w) for (u, v), w in pairs.items()], dtype=np.float64)
    return csr_matrix((e[:, 2], (e[:, 0].astype(np.int64), e[:, 1].astype(np.int64))), shape=(h.n, h.n))


def hopset_only_distances(h: Hopset, sources, _matrix=None) -> np.ndarray:
    """Distances using H's edges only (emulator semantics), via scipy's Dijkstra."""
    sources = list(sources)
    mat = _matrix if _matrix is not None else _hopset_matrix(h)
    if mat is None or not sources:
        d = np.full((len(sources), h.n), INF)
        d[np.arange(len(sources)), sources] = 0.0
        return d
    # weights are >= 1 off the diagonal for unweighted G, so no explicit zeros are lost
    return np.atleast_2d(csgraph_dijkstra(mat, directed=False, indices=sources))


@dataclass
class EmulatorReport:
    k: int
    c: float
    d_min: int
    pairs: list[dict]
    excluded_small_d: list[dict]
    aggregate: dict
    header: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    @property
    def passed(self) -> bool:
        a = self.aggregate
        return a["lower_violations"] == 0 and a["max_ratio"] <= self.c

    def to_json(self) -> str:
        d = asdict(self)
        d["passed"] = self.passed
        return json.dumps(_jsonable(d), indent=2, sort_keys=True) + "\n"


def verify_emulator(g: WeightedGraph, h: Hopset, k: int, c: float = 8.0, pairs=PairSpec(500),
                    d_min: int = 2, max_draws: int | None = None) -> EmulatorReport:
    """Additive stretch of H used alone as an emulator of an unweighted G.

    Pairs are drawn uniformly until ``pairs.count`` reachable pairs with
    ``d > d_min`` are collected. The pass criterion is
    ``dist_H - d <= c * k * d^(1 - 1/k)`` on those pairs and ``dist_H >= d``
    on every pair drawn.
    """
    if not g.is_unweighted():
        raise UsageError("emulator check needs an unweighted graph (all weights 1)")
    check_fingerprint(g, h)
    rng = stream(pairs.seed, "emulator-pairs")
    max_draws = max_draws or 50 * max(pairs.count, 1)
    mat = _hopset_matrix(h)
    kept, small = [], []
    lower = draws = 0
    n = g.n
    while len(kept) < pairs.count and draws < max_draws and n >= 2:
        batch = min(pairs.count - len(kept), max_draws - draws)
        us = rng.integers(0, n, size=batch)
        vs = (us + rng.integers(1, n, size=batch)) % n
        draws += batch
        srcs = sorted(set(us.tolist()))
        exact = {s: dijkstra(g, s).dist for s in srcs}
        dh_rows = hopset_only_distances(h, srcs, mat)
        row = {s: j for j, s in enumerate(srcs)}
        for u, v in zip(us.tolist(), vs.tolist()):
            d = float(exact[u][v])
            if math.isinf(d) or len(kept) >= pairs.count:
                continue
            dh = float(dh_rows[row[u], v])
            if dh < d:
                lower += 1
            rec = {"u": u, "v": v, "d": d, "dist_h": dh, "additive": dh - d}
            if d <= d_min:
                small.append(rec)
                continue
            rec["ratio"] = (dh - d) / (k * d ** (1 - 1 / k))
            kept.append(rec)
    ratios = [r["ratio"] for r in kept]
    aggregate = {"pairs_checked": len(kept), "draws": draws, "lower_violations": lower,
                 "max_ratio": max(ratios) if ratios else 0.0,
                 "mean_ratio": float(np.mean(ratios)) if ratios else 0.0,
                 "max_additive": max((r["additive"] for r in kept), default=0.0),
                 "excluded_max_additive": max((r["additive"] for r in small), default=0.0)}
    return EmulatorReport(k=k, c=c, d_min=d_min, pairs=kept, excluded_small_d=small, aggregate=aggregate,
                          header={"graph_fingerprint": g.fingerprint, "pair_spec": asdict(pairs)})
