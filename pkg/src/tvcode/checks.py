"""Invariant checks shared by ``tvcode verify`` and the test-suite.

Every check takes one instance and returns ``None`` when it holds or a short
message describing the violation.
"""

from __future__ import annotations

import numpy as np

from .coding import average_length, design
from .core import BallSpec, NominalDistribution, kraft_sum, validate_nominal
from .merge import build_schedule, compute_weights, merge_state
from .oracle import ENUMERATION_LIMIT, enumerate_partitions
from .waterfill import waterfill_weights

AGREEMENT_TOL = 1e-9
ORACLE_TOL = 1e-9
KRAFT_TOL = 1e-12
MONOTONE_SLACK = 1e-12


def random_nominal(rng: np.random.Generator, n: int, ties: bool = False) -> NominalDistribution:
    """Random strictly positive distribution on ``n`` symbols, caller order shuffled.

    With ``ties`` the draw is quantized so repeated probabilities are likely.
    """
    conc = rng.choice([0.2, 1.0, 5.0])
    p = rng.dirichlet(np.full(n, conc))
    if ties:
        p = np.round(p * 8) + 1.0
    p = np.maximum(p, 1e-6)
    return validate_nominal(p / p.sum())


def check_agreement(mu: NominalDistribution, alpha: float) -> str | None:
    spec = BallSpec.from_alpha(alpha)
    a = waterfill_weights(mu, spec).weights
    b = compute_weights(mu, spec).weights
    gap = float(np.max(np.abs(a - b)))
    if gap > AGREEMENT_TOL:
        return f"waterfill and merge weights differ by {gap:.3e}"
    iters = merge_state(mu, alpha).iterations
    if iters > mu.size:
        return f"merge loop ran {iters} iterations for {mu.size} symbols"
    return None


def check_oracle(mu: NominalDistribution, alpha: float, base: int = 2) -> str | None:
    if mu.size > ENUMERATION_LIMIT:
        return None
    spec = BallSpec.from_alpha(alpha, base)
    d = design(mu, spec)
    w, payoff = enumerate_partitions(mu, spec)
    if abs(payoff - d.worst_case_avg_length) > ORACLE_TOL:
        return f"oracle pay-off {payoff!r} vs design {d.worst_case_avg_length!r}"
    gap = float(np.max(np.abs(w - d.weights.weights)))
    if gap > ORACLE_TOL:
        return f"oracle weights differ from design by {gap:.3e}"
    return None


def check_kraft(mu: NominalDistribution, alpha: float, base: int = 2) -> str | None:
    d = design(mu, BallSpec.from_alpha(alpha, base))
    real = kraft_sum(d.real_lengths)
    if abs(real - 1.0) > KRAFT_TOL:
        return f"real-valued Kraft sum {real!r} != 1"
    integer = kraft_sum(d.integer_lengths)
    if integer > 1.0:
        return f"integer Kraft sum {integer!r} > 1"
    return None


def check_sandwich(mu: NominalDistribution, alpha: float, base: int = 2) -> str | None:
    d = design(mu, BallSpec.from_alpha(alpha, base))
    h = d.entropy_of_weights
    avg = average_length(d.integer_lengths, d.weights.weights)
    if not (h <= avg + 1e-12 and avg < h + 1.0):
        return f"entropy sandwich violated: H={h!r}, average={avg!r}"
    return None


def check_monotonicity(mu: NominalDistribution, grid) -> str | None:
    """Along an increasing alpha grid: middle weights stay nominal, the bottom
    group weight never falls, the top group weight never rises, order is kept."""
    prev = None
    p = mu.probs
    n = mu.size
    for alpha in grid:
        wv = compute_weights(mu, BallSpec.from_alpha(alpha))
        w = wv.weights
        if np.any(np.diff(w) > MONOTONE_SLACK):
            return f"weights not non-increasing at alpha={alpha!r}"
        t, b = wv.top_count, wv.bottom_count
        if t + b < n and np.any(np.abs(w[t:n - b] - p[t:n - b]) > MONOTONE_SLACK):
            return f"middle weights moved at alpha={alpha!r}"
        if prev is not None:
            if w[-1] < prev[-1] - MONOTONE_SLACK:
                return f"bottom weight decreased at alpha={alpha!r}"
            if w[0] > prev[0] + MONOTONE_SLACK:
                return f"top weight increased at alpha={alpha!r}"
        prev = w
    return None


def monotonicity_grid(mu: NominalDistribution, points: int = 21) -> list[float]:
    sched = build_schedule(mu)
    grid = set(np.linspace(0.0, 1.0, points).tolist())
    grid.update(a for a in sched.alphas)
    grid.add(sched.alpha_max)
    return sorted(a for a in grid if 0.0 <= a <= 1.0)
