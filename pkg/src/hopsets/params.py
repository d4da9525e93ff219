"""Hop budget and scale parameter derived from (k, epsilon)."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .errors import CapacityError, UsageError

INT64_MAX = 2**63 - 1
_CEIL_GUARD = 1e-12


@dataclass(frozen=True)
class HopsetParams:
    k: int
    epsilon: float
    epsilon_prime: float
    r: int
    hop_sequence: tuple[int, ...]

    @property
    def beta(self) -> int:
        return self.hop_sequence[-1]

    @property
    def stretch_bound(self) -> float:
        return 1.0 + self.epsilon

    def header(self) -> str:
        hs = " ".join(str(h) for h in self.hop_sequence)
        return f"k={self.k} eps={self.epsilon!r} eps'={self.epsilon_prime!r} r={self.r} h={hs} beta={self.beta}"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["hop_sequence"] = list(self.hop_sequence)
        d["beta"] = self.beta
        return d


def _guarded_ceil(x: float) -> int:
    nearest = round(x)
    if abs(x - nearest) <= _CEIL_GUARD * max(1.0, abs(x)):
        return int(nearest)
    return math.ceil(x)


def hop_sequence(r: int, k: int) -> tuple[int, ...]:
    """h_0 = 1, h_i = (r+1) h_{i-1} + r."""
    h = [1]
    for _ in range(k):
        h.append((r + 1) * h[-1] + r)
    return tuple(h)


def derive_params(k: int, epsilon: float) -> HopsetParams:
    if not isinstance(k, int) or k < 1:
        raise UsageError(f"k must be an integer >= 1, got {k!r}")
    if not epsilon > 0 or math.isinf(epsilon):
        raise UsageError(f"epsilon must be a positive finite real, got {epsilon!r}")
    eps_prime = math.log1p(epsilon)
    r = _guarded_ceil(4 * k / eps_prime)
    hs = hop_sequence(r, k)
    if hs[-1] > INT64_MAX:
        raise CapacityError(
            f"hop budget for k={k}, epsilon={epsilon} exceeds the 64-bit limit {INT64_MAX}"
        )
    return HopsetParams(k=k, epsilon=float(epsilon), epsilon_prime=eps_prime, r=r, hop_sequence=hs)


def hopset_budget(k: int, epsilon: float) -> tuple[int, float]:
    """The (hop budget, stretch bound) pair a (beta, eps)-hopset must meet."""
    p = derive_params(k, epsilon)
    return p.beta, p.stretch_bound
