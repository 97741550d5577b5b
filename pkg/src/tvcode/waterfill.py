"""Two-level waterfilling solution for the minimax weights.

The lower level is raised over the smallest nominal probabilities until it has
absorbed mass ``alpha``; the upper level is lowered over the largest ones until
it has shed mass ``alpha``. Clamping the nominal vector between the two levels
gives the optimal weights. On a sorted vector both levels have a closed form
found by a single prefix scan, so no root finding is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import BallSpec, NominalDistribution, WeightVector

LEVEL_TOL = 1e-12


@dataclass(frozen=True)
class WaterLevels:
    lower: float
    upper: float


def alpha_max(mu: NominalDistribution) -> float:
    """Smallest ``alpha`` at which both levels meet at ``1/n``.

    At the meeting point the filled mass below ``1/n`` equals ``alpha``, so this
    is half the total variation between ``mu`` and the uniform distribution.
    """
    n = mu.size
    return 0.5 * math.fsum(np.abs(mu.probs - 1.0 / n))


def _scan_level(sorted_probs: np.ndarray, budget: float, sign: float) -> float:
    # sorted_probs is ordered from the side the water enters; sign=+1 fills
    # (level above the prefix), sign=-1 drains (level below the prefix)
    n = sorted_probs.size
    k = np.arange(1, n + 1)
    levels = (np.cumsum(sorted_probs) + sign * budget) / k
    if sign > 0:
        ok = levels[:-1] <= sorted_probs[1:]
    else:
        ok = levels[:-1] >= sorted_probs[1:]
    hits = np.flatnonzero(ok)
    idx = int(hits[0]) if hits.size else n - 1
    return float(levels[idx])


def solve_lower_level(mu: NominalDistribution, alpha: float) -> float:
    """Level ``w`` with ``sum (w - mu)^+ = alpha``; ``1/n`` once levels cross."""
    if alpha >= alpha_max(mu):
        return 1.0 / mu.size
    return _scan_level(mu.probs[::-1], alpha, +1.0)


def solve_upper_level(mu: NominalDistribution, alpha: float) -> float:
    """Level ``w`` with ``sum (mu - w)^+ = alpha``; ``1/n`` once levels cross."""
    if alpha >= alpha_max(mu):
        return 1.0 / mu.size
    return _scan_level(mu.probs, alpha, -1.0)


def water_levels(mu: NominalDistribution, alpha: float) -> WaterLevels:
    return WaterLevels(solve_lower_level(mu, alpha), solve_upper_level(mu, alpha))


def waterfill_weights(mu: NominalDistribution, spec: BallSpec) -> WeightVector:
    """Optimal weights: nominal probabilities clamped to ``[lower, upper]``.

    ``top_count`` counts the symbols sitting at the upper level (nominal
    probability at or above it) and ``bottom_count`` those at the lower level.
    In the uniform regime every symbol shares one weight; the symbols above
    ``1/n`` are counted as top and the rest as bottom.
    """
    alpha = spec.alpha
    n = mu.size
    p = mu.probs
    if alpha >= alpha_max(mu):
        w = np.full(n, 1.0 / n)
        top = int(np.count_nonzero(p > 1.0 / n + LEVEL_TOL))
        top = min(max(top, 1), n - 1)
        return WeightVector(w, alpha, top, n - top)
    levels = water_levels(mu, alpha)
    w = np.clip(p, levels.lower, levels.upper)
    top = max(int(np.count_nonzero(p >= levels.upper - LEVEL_TOL)), 1)
    bottom = max(int(np.count_nonzero(p <= levels.lower + LEVEL_TOL)), 1)
    w[:top] = levels.upper
    w[n - bottom:] = levels.lower
    return WeightVector(w, alpha, top, bottom)
