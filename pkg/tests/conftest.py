from __future__ import annotations

import sys

import pytest
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from mixedladder.ladder import Ladder, validate

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow])
settings.load_profile("default")


def three_by_three() -> Ladder:
    """Upper corner (1,3), lower corners (2,1),(3,2), t=(2,2)."""
    return Ladder(3, 3, [(1, 3)], [(2, 1), (3, 2)], [2, 2])


@pytest.fixture
def L33() -> Ladder:
    return three_by_three()


@st.composite
def ladders(draw, max_dim: int = 5, max_cells: int = 16, max_t: int = 3, valid: bool = True):
    m = draw(st.integers(2, max_dim))
    n = draw(st.integers(2, max_dim))
    h = draw(st.integers(1, min(m, n)))
    bs = [1] + sorted(draw(st.lists(st.integers(2, m), min_size=h - 1, max_size=h - 1,
                                     unique=True))) if h > 1 else [1]
    as_ = sorted(draw(st.lists(st.integers(1, n - 1), min_size=h - 1, max_size=h - 1,
                               unique=True))) + [n] if h > 1 else [n]
    k = draw(st.integers(1, 3))
    ds = sorted(draw(st.lists(st.integers(1, m), min_size=k - 1, max_size=k - 1))) + [m]
    cs = [1] + sorted(draw(st.lists(st.integers(1, n), min_size=k - 1, max_size=k - 1)))
    lows = list(zip(ds, cs))
    assume(len(set(lows)) == k)
    t = draw(st.lists(st.integers(1, max_t), min_size=k, max_size=k))
    L = Ladder(m, n, list(zip(bs, as_)), lows, t)
    assume(len(L.cells) <= max_cells)
    if valid:
        assume(validate(L).ok)
    return L


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
