import os
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from hopsets import WeightedGraph  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES = []


@st.composite
def small_graphs(draw, max_n=14, max_w=6, allow_zero=True):
    """Small integer-weighted graphs; integer sums keep every oracle exact."""
    n = draw(st.integers(1, max_n))
    lo = 0 if allow_zero else 1
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=3 * n)) if pairs else []
    weights = draw(st.lists(st.integers(lo, max_w), min_size=len(chosen), max_size=len(chosen)))
    return WeightedGraph.from_edges(n, [(u, v, float(w)) for (u, v), w in zip(chosen, weights)])


@st.composite
def graphs_with_levels(draw, max_n=14, max_k=3):
    g = draw(small_graphs(max_n=max_n))
    k = draw(st.integers(1, max_k))
    level = draw(st.lists(st.integers(0, k), min_size=g.n, max_size=g.n))
    return g, k, level


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES
