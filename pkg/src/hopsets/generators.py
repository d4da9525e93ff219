"""Seeded graph families for tests and the experiment grids."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .errors import UsageError
from .graph import WeightedGraph
from .rng import stream

FAMILIES = ("path", "grid", "erdos-renyi", "random-geometric", "star")

# Uniform weights are snapped to this dyadic grid so that every path sum up to
# ~2^36 is exact in float64: summation order cannot change a distance.
WEIGHT_QUANTUM = 2.0 ** -16


@dataclass(frozen=True)
class WeightSpec:
    kind: str = "unit"  # "unit" | "uniform"
    lo: float = 1.0
    hi: float = 100.0

    @classmethod
    def parse(cls, text: str) -> "WeightSpec":
        """``unit`` or ``uniform:LO:HI``."""
        if text == "unit":
            return cls()
        parts = text.split(":")
        if parts[0] == "uniform" and len(parts) == 3:
            try:
                return cls("uniform", float(parts[1]), float(parts[2]))
            except ValueError:
                pass
        raise UsageError(f"bad weight spec {text!r}; use 'unit' or 'uniform:LO:HI'")

    def __str__(self):
        return "unit" if self.kind == "unit" else f"uniform:{self.lo:g}:{self.hi:g}"

    def draw(self, rng: np.random.Generator, count: int) -> np.ndarray:
        if self.kind == "unit":
            return np.ones(count)
        if self.kind != "uniform" or not 0 <= self.lo <= self.hi:
            raise UsageError(f"invalid weight distribution {self}")
        w = rng.uniform(self.lo, self.hi, size=count)
        return np.clip(np.round(w / WEIGHT_QUANTUM) * WEIGHT_QUANTUM, self.lo, self.hi)


def _grid_shape(n, rows, cols):
    if rows is None and cols is None:
        side = math.isqrt(n)
        if side * side != n:
            raise UsageError(f"grid with n={n} needs rows/cols (n is not a square)")
        return side, side
    if rows is None:
        rows = n // cols
    if cols is None:
        cols = n // rows
    if rows * cols != n:
        raise UsageError(f"grid {rows}x{cols} does not have n={n} vertices")
    return rows, cols


def _er_pairs(n, m, rng):
    # Rejection sampling of distinct unordered pairs; fine while m << n^2/2.
    chosen = set()
    while len(chosen) < m:
        need = m - len(chosen)
        u = rng.integers(0, n, size=2 * need + 8)
        v = rng.integers(0, n, size=2 * need + 8)
        for a, b in zip(u.tolist(), v.tolist()):
            if a == b:
                continue
            key = (a, b) if a < b else (b, a)
            if key not in chosen:
                chosen.add(key)
                if len(chosen) == m:
                    break
    return sorted(chosen)


def generate_graph(family: str, n: int, *, m=None, rows=None, cols=None, radius=None,
                   avg_degree=10.0, weights="unit", seed: int = 0) -> WeightedGraph:
    """Deterministic for fixed arguments.

    Family parameters: ``erdos-renyi`` takes ``m`` (exact edge count, default
    ``5n``); ``grid`` takes ``rows``/``cols`` (default square); and
    ``random-geometric`` takes ``radius`` in the unit square (default chosen
    for ``avg_degree``). ``star`` puts vertex 0 at the center.
    """
    if isinstance(weights, str):
        weights = WeightSpec.parse(weights)
    if n < 1:
        raise UsageError(f"n must be >= 1, got {n}")
    s_rng = stream(seed, "structure")
    w_rng = stream(seed, "weights")

    if family == "path":
        pairs = [(i, i + 1) for i in range(n - 1)]
    elif family == "star":
        pairs = [(0, i) for i in range(1, n)]
    elif family == "grid":
        r, c = _grid_shape(n, rows, cols)
        pairs = []
        for i in range(r):
            for j in range(c):
                x = i * c + j
                if j + 1 < c:
                    pairs.append((x, x + 1))
                if i + 1 < r:
                    pairs.append((x, x + c))
        pairs.sort()
    elif family == "erdos-renyi":
        if m is None:
            m = 5 * n
        if m < 0 or m > n * (n - 1) // 2:
            raise UsageError(f"erdos-renyi needs 0 <= m <= n(n-1)/2, got m={m} for n={n}")
        if m > n * (n - 1) // 4:
            # dense request: rejection would stall, so pick pair indices directly
            iu, iv = np.triu_indices(n, 1)
            pick = np.sort(s_rng.choice(len(iu), size=m, replace=False))
            pairs = list(zip(iu[pick].tolist(), iv[pick].tolist()))
        else:
            pairs = _er_pairs(n, m, s_rng)
    elif family == "random-geometric":
        if radius is None:
            radius = math.sqrt(avg_degree / (math.pi * max(n, 1)))
        if not radius > 0:
            raise UsageError(f"random-geometric radius must be > 0, got {radius}")
        pts = s_rng.random((n, 2))
        pairs = sorted(cKDTree(pts).query_pairs(radius))
    else:
        raise UsageError(f"unknown family {family!r}; expected one of {FAMILIES}")

    w = weights.draw(w_rng, len(pairs))
    return WeightedGraph.from_edges(n, [(u, v, float(x)) for (u, v), x in zip(pairs, w.tolist())])
