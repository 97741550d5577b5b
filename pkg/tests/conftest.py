from fractions import Fraction

import numpy as np
import pytest
from hypothesis import strategies as st

from tvcode.core import validate_nominal

HALVING4 = (8 / 15, 4 / 15, 2 / 15, 1 / 15)
HALVING5 = (16 / 31, 8 / 31, 4 / 31, 2 / 31, 1 / 31)


@pytest.fixture
def mu4():
    return validate_nominal(HALVING4)


@pytest.fixture
def mu5():
    return validate_nominal(HALVING5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@st.composite
def nominals(draw, min_size=2, max_size=12, allow_ties=True):
    """Strictly positive distributions built from integer masses, so ties occur."""
    n = draw(st.integers(min_size, max_size))
    top = 20 if allow_ties else 10**6
    masses = draw(st.lists(st.integers(1, top), min_size=n, max_size=n))
    total = sum(masses)
    return validate_nominal([m / total for m in masses])


alphas = st.floats(0.0, 1.0, allow_nan=False)


def filled_mass(mu, level, side):
    """Exact filled (side='lower') or drained (side='upper') mass at ``level``."""
    if side == "lower":
        return sum(max(Fraction(0), level - m) for m in mu)
    return sum(max(Fraction(0), m - level) for m in mu)


def bisect_level(probs, alpha, side, iters=200):
    """Slow bisection for a water level; independent of the prefix-scan solver.

    Returns the highest lower level (lowest upper level) whose mass is within
    ``alpha``, which pins the level down when ``alpha`` is 0.
    """
    lo, hi = 0.0, 1.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if side == "lower":
            mass = np.maximum(mid - probs, 0.0).sum()
            lo, hi = (mid, hi) if mass <= alpha else (lo, mid)
        else:
            mass = np.maximum(probs - mid, 0.0).sum()
            lo, hi = (mid, hi) if mass > alpha else (lo, mid)
    return 0.5 * (lo + hi)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[number])
