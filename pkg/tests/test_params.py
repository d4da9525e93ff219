import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopsets import derive_params, hopset_budget
from hopsets.errors import CapacityError, UsageError
from hopsets.params import hop_sequence


def test_k2_eps1():
    p = derive_params(2, 1.0)
    assert p.epsilon_prime == pytest.approx(0.693147, abs=1e-6)
    assert 8 / math.log(2) == pytest.approx(11.54, abs=0.01)
    assert p.r == 12
    assert p.hop_sequence == (1, 25, 337)
    assert p.beta == 337 == 2 * 13**2 - 1


def test_k1_eps_half():
    p = derive_params(1, 0.5)
    assert p.epsilon_prime == pytest.approx(0.405465, abs=1e-6)
    assert p.r == 10 and p.beta == 21


@given(st.floats(0.01, 50))
def test_k1_one_step(eps):
    p = derive_params(1, eps)
    assert p.hop_sequence == (1, 2 * p.r + 1)


def test_closed_form_grid():
    for r in range(1, 101):
        for k in range(1, 9):
            h = 1
            for _ in range(k):
                h = (r + 1) * h + r
            assert h == 2 * (r + 1) ** k - 1 < 2 * (r + 1) ** k
            assert hop_sequence(r, k)[-1] == h


@given(st.integers(1, 8), st.floats(1e-3, 100))
def test_invariants(k, eps):
    try:
        p = derive_params(k, eps)
    except CapacityError:
        r = math.ceil(4 * k / math.log1p(eps))
        assert 2 * (r + 1) ** k - 1 > 2**63 - 1
        return
    assert p.epsilon_prime == math.log1p(eps)
    assert p.r == math.ceil(4 * k / p.epsilon_prime) or abs(4 * k / p.epsilon_prime - p.r) < 1e-9
    assert p.r >= 4 * k / p.epsilon_prime - 1e-9
    assert p.hop_sequence[0] == 1
    for i in range(1, k + 1):
        assert p.hop_sequence[i] == (p.r + 1) * p.hop_sequence[i - 1] + p.r
    assert p.beta == 2 * (p.r + 1) ** k - 1


@given(st.integers(1, 5), st.floats(0.05, 10), st.floats(0.05, 10))
def test_beta_monotone_in_eps(k, a, b):
    lo, hi = sorted((a, b))
    assert derive_params(k, hi).beta <= derive_params(k, lo).beta


@pytest.mark.parametrize("eps", [0.1, 0.5, 1.0, 2.0])
def test_beta_growth_in_k(eps):
    for k in range(1, 7):
        nxt = derive_params(k + 1, eps)
        assert nxt.beta / derive_params(k, eps).beta >= nxt.r


def test_budget():
    assert hopset_budget(2, 1.0) == (337, 2.0)
    assert hopset_budget(1, 0.5) == (21, 1.5)


def test_guarded_ceil_near_integer():
    # eps chosen so that 4k/eps' is 8 up to rounding
    eps = math.expm1(0.5)
    p = derive_params(1, eps)
    assert p.r == 8


@pytest.mark.parametrize("k,eps", [(0, 1.0), (2, 0.0), (2, -1.0), (2, float("inf")), (2, float("nan"))])
def test_usage_errors(k, eps):
    with pytest.raises(UsageError):
        derive_params(k, eps)


def test_overflow():
    with pytest.raises(CapacityError, match="64-bit"):
        derive_params(20, 0.01)
