"""Brute-force checks that do not share code paths with the solvers.

* :func:`maximize_over_ball` solves the inner linear program exactly by greedy
  mass transfer, so it also honours the simplex caps that the closed-form
  worst-case pay-off ignores.
* :func:`enumerate_partitions` tries every (top, bottom) group split and keeps
  the one whose code has the smallest true worst-case pay-off.
* :func:`sample_ball` draws reproducible points of the ball.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import BallSpec, CodeLengthVector, NominalDistribution, TVCodeError

ENUMERATION_LIMIT = 12
FEASIBILITY_TOL = 1e-12


class AlphabetTooLarge(TVCodeError):
    pass


@dataclass(frozen=True, eq=False)
class BallMaximizerResult:
    nu_star: np.ndarray
    payoff: float
    tv_used: float


def _as_lengths(lengths) -> np.ndarray:
    if isinstance(lengths, CodeLengthVector):
        return lengths.lengths
    return np.asarray(lengths, dtype=float)


def maximize_over_ball(lengths, mu: NominalDistribution, spec: BallSpec) -> BallMaximizerResult:
    """Exact ``max sum l nu`` over distributions within radius ``R`` of ``mu``.

    Mass moves from the shortest-length symbols (ascending length, lower index
    first) to the longest-length ones (descending length, lower index first)
    until the budget ``R/2`` is spent or no pair with a positive length gap is
    left. Vectors are in the nominal internal order.
    """
    l = _as_lengths(lengths)
    nu = np.array(mu.probs, dtype=float)
    idx = np.arange(l.size)
    donors = sorted(idx, key=lambda i: (l[i], i))
    recipients = sorted(idx, key=lambda i: (-l[i], i))
    budget = spec.alpha
    moved = 0.0
    di = ri = 0
    while budget > 0 and di < len(donors) and ri < len(recipients):
        d, r = donors[di], recipients[ri]
        if l[r] <= l[d]:
            break
        if nu[d] <= 0:
            di += 1
            continue
        if nu[r] >= 1.0:
            ri += 1
            continue
        amount = min(budget, nu[d], 1.0 - nu[r])
        nu[d] -= amount
        nu[r] += amount
        budget -= amount
        moved += amount
    payoff = math.fsum(l * nu)
    return BallMaximizerResult(nu_star=nu, payoff=payoff, tv_used=2.0 * moved)


def _candidate(p: np.ndarray, alpha: float, t: int, b: int) -> np.ndarray | None:
    n = p.size
    top = (math.fsum(p[:t]) - alpha) / t
    bottom = (math.fsum(p[n - b:]) + alpha) / b
    if not (0.0 < bottom <= 1.0 and 0.0 < top <= 1.0):
        return None
    tol = FEASIBILITY_TOL
    middle = p[t:n - b]
    # ordering against the untouched middle (or against each other)
    above = middle[0] if middle.size else bottom
    below = middle[-1] if middle.size else top
    if top < above - tol or bottom > below + tol:
        return None
    # every top member gives mass away, every bottom member receives it
    if top > p[t - 1] + tol or bottom < p[n - b] - tol:
        return None
    w = p.copy()
    w[:t] = top
    w[n - b:] = bottom
    return w


def enumerate_partitions(mu: NominalDistribution, spec: BallSpec) -> tuple[np.ndarray, float]:
    """Best weights over all admissible group splits, with their pay-off.

    Each candidate's code ``-log_D w`` is scored by :func:`maximize_over_ball`,
    i.e. by its exact worst case over the ball, so the minimum over candidates
    is the minimax value as long as the optimum is among them. The uniform
    vector is always a candidate.
    """
    n = mu.size
    if n > ENUMERATION_LIMIT:
        raise AlphabetTooLarge(f"enumeration is limited to {ENUMERATION_LIMIT} symbols, got {n}")
    p = np.array(mu.probs, dtype=float)
    alpha = spec.alpha
    log_d = math.log(spec.base)

    candidates = [np.full(n, 1.0 / n)]
    for t in range(1, n):
        for b in range(1, n - t + 1):
            w = _candidate(p, alpha, t, b)
            if w is not None:
                candidates.append(w)

    best_w, best_payoff = None, math.inf
    for w in candidates:
        lengths = -np.log(w) / log_d
        payoff = maximize_over_ball(lengths, mu, spec).payoff
        if payoff < best_payoff - 1e-15:
            best_w, best_payoff = w, payoff
    return best_w, best_payoff


def sample_ball(mu: NominalDistribution, spec: BallSpec, count: int, seed: int) -> list[np.ndarray]:
    """``count`` reproducible distributions inside the ball (internal order).

    Each sample moves from ``mu`` toward a Dirichlet(1) draw, shrunk so its
    distance to ``mu`` stays within ``R``; half of the samples sit on the
    boundary of the ball (or at the Dirichlet point when that is closer).
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = np.random.default_rng(seed)
    p = np.array(mu.probs, dtype=float)
    out = []
    for _ in range(count):
        target = rng.dirichlet(np.ones(p.size))
        direction = target - p
        dist = float(np.abs(direction).sum())
        scale = 1.0 if dist == 0 else min(1.0, spec.radius / dist)
        if rng.random() < 0.5:
            scale *= rng.random()
        nu = p + scale * direction
        nu = np.clip(nu, 0.0, None)
        out.append(nu / nu.sum())
    return out
