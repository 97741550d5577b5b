"""Code lengths from weights, pay-off evaluation and the end-to-end design."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    BallSpec,
    CodeLengthVector,
    DimensionMismatch,
    NominalDistribution,
    WeightVector,
    ZeroWeight,
    entropy,
)
from .merge import build_schedule, compute_weights

# real lengths this close to an integer are treated as that integer before
# rounding up, so that e.g. -log_3(1/9) does not become 3
INTEGER_SNAP = 1e-12


@dataclass(frozen=True, eq=False)
class CodeDesign:
    mu: NominalDistribution
    spec: BallSpec
    weights: WeightVector
    real_lengths: CodeLengthVector
    integer_lengths: CodeLengthVector
    worst_case_avg_length: float
    entropy_of_weights: float
    alpha_max: float

    def integer_avg_length(self) -> float:
        """Average integer length under the weights themselves."""
        return average_length(self.integer_lengths, self.weights.weights)


def optimal_lengths(weights, base: int = 2) -> CodeLengthVector:
    """Real-valued lengths ``-log_D w``; they meet the Kraft inequality with equality."""
    w = weights.weights if isinstance(weights, WeightVector) else np.asarray(weights, dtype=float)
    if np.any(w <= 0):
        raise ZeroWeight("every weight must be strictly positive to have a finite length")
    lengths = np.maximum(-np.log(w) / math.log(base), 0.0)
    return CodeLengthVector(lengths, base=base, integerized=False)


def integerize(lengths: CodeLengthVector) -> CodeLengthVector:
    """Round every length up to an integer (Shannon code lengths)."""
    l = lengths.lengths
    nearest = np.round(l)
    snapped = np.where(np.abs(l - nearest) <= INTEGER_SNAP * np.maximum(1.0, l), nearest, l)
    return CodeLengthVector(np.ceil(snapped), base=lengths.base, integerized=True)


def average_length(lengths, p) -> float:
    l = lengths.lengths if isinstance(lengths, CodeLengthVector) else np.asarray(lengths, dtype=float)
    p = np.asarray(p, dtype=float)
    if l.shape != p.shape:
        raise DimensionMismatch(f"length {l.size} vs {p.size}")
    return math.fsum(l * p)


def worst_case_payoff(lengths, mu: NominalDistribution, spec: BallSpec) -> float:
    """Largest average length over the ball: ``alpha (l_max - l_min) + sum l mu``.

    ``lengths`` must be aligned with the nominal internal order.
    """
    l = lengths.lengths if isinstance(lengths, CodeLengthVector) else np.asarray(lengths, dtype=float)
    spread = float(l.max() - l.min())
    return spec.alpha * spread + average_length(l, mu.probs)


def design(mu: NominalDistribution, spec: BallSpec) -> CodeDesign:
    """Minimax-robust code lengths for every source within ``spec`` of ``mu``."""
    weights = compute_weights(mu, spec)
    real = optimal_lengths(weights, spec.base)
    return CodeDesign(
        mu=mu,
        spec=spec,
        weights=weights,
        real_lengths=real,
        integer_lengths=integerize(real),
        worst_case_avg_length=worst_case_payoff(real, mu, spec),
        entropy_of_weights=entropy(weights.weights, spec.base),
        alpha_max=build_schedule(mu).alpha_max,
    )
