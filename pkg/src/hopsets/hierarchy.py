"""Sampling probabilities and the nested vertex levels V_0 >= V_1 >= ... >= V_k."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import UsageError
from .rng import stream


def sampling_probability(i: int, k: int, n: int) -> float:
    """q_i = n^{-(2^i - 1)/(2^{k+1} - 1)} * 2^{-(2^i + i - 1)}.

    Evaluated in log2 space so large ``n`` does not underflow early.
    """
    if k < 1 or not 0 <= i <= k:
        raise UsageError(f"need 0 <= i <= k and k >= 1, got i={i}, k={k}")
    if n < 2:
        raise UsageError(f"need n >= 2, got {n}")
    if i == 0:
        return 1.0
    exponent = -((2**i - 1) / (2 ** (k + 1) - 1)) * math.log2(n) - (2**i + i - 1)
    return 2.0**exponent


def sampling_probabilities(k: int, n: int) -> tuple[float, ...]:
    return tuple(sampling_probability(i, k, n) for i in range(k + 1))


def auto_k(n: int, c: int = 1) -> int:
    """Level count that makes the hopset size linear: floor(log2 log2 n) - c, at least 1."""
    if n < 4:
        raise UsageError(f"auto_k needs n >= 4, got {n}")
    return max(1, math.floor(math.log2(math.log2(n))) - c)


@dataclass(frozen=True, eq=False)
class LevelAssignment:
    k: int
    level: np.ndarray  # int8/int64 per vertex, values in [0, k]
    seed: int | None = None
    q: tuple[float, ...] = ()

    @property
    def n(self) -> int:
        return len(self.level)

    @cached_property
    def members(self) -> tuple[frozenset[int], ...]:
        """``members[i]`` is V_i for i in 0..k+1 (the last is always empty)."""
        lv = self.level
        return tuple(frozenset(np.flatnonzero(lv >= i).tolist()) for i in range(self.k + 2))

    def exact_level(self, i: int) -> list[int]:
        """Sorted V_i minus V_{i+1}."""
        return np.flatnonzero(self.level == i).tolist()

    def __eq__(self, other):
        if not isinstance(other, LevelAssignment):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.level, other.level)

    def serialize(self) -> str:
        qs = " ".join(repr(x) for x in self.q)
        lines = [f"# levels n={self.n} k={self.k} seed={self.seed}", f"# q={qs}"]
        lines.extend(f"{v} {int(x)}" for v, x in enumerate(self.level))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_levels(cls, levels, k: int) -> "LevelAssignment":
        lv = np.asarray(levels, dtype=np.int64)
        if lv.size and (lv.min() < 0 or lv.max() > k):
            raise UsageError(f"levels must lie in [0, {k}]")
        return cls(k=k, level=lv)


def assign_levels(n: int, k: int, seed: int) -> LevelAssignment:
    """Draw every vertex's level in one pass with P[level >= i] = q_i.

    One uniform draw ``x`` per vertex; its level is the largest ``i`` with
    ``x < q_i``. Since the q_i are decreasing this matches ``k`` rounds of
    independent promotion with probability q_{i+1}/q_i.
    """
    if k < 1:
        raise UsageError(f"need k >= 1, got {k}")
    q = sampling_probabilities(k, n)
    x = stream(seed, "levels").random(n)
    level = np.zeros(n, dtype=np.int64)
    for i in range(1, k + 1):
        level += x < q[i]
    return LevelAssignment(k=k, level=level, seed=seed, q=q)
