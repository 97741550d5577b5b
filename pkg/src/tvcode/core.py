"""Shared domain types, validation and information measures.

Everything downstream works on a :class:`NominalDistribution`, which keeps the
probabilities sorted in non-increasing order together with the permutation
needed to report results back in the caller's symbol order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

NORMALIZATION_TOL = 1e-9


class TVCodeError(ValueError):
    """Base class for input errors raised by this package."""


class NonPositiveProbability(TVCodeError):
    pass


class NotNormalized(TVCodeError):
    pass


class TooSmallAlphabet(TVCodeError):
    pass


class DimensionMismatch(TVCodeError):
    pass


class SupportViolation(TVCodeError):
    pass


class InvalidBall(TVCodeError):
    pass


class ZeroWeight(TVCodeError):
    pass


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class NominalDistribution:
    """Strictly positive probability vector, stored sorted non-increasing.

    ``probs[i]`` is the i-th largest probability; ``order[i]`` is the index
    that symbol had in the caller's input.
    """

    probs: np.ndarray
    order: np.ndarray

    @property
    def size(self) -> int:
        return int(self.probs.size)

    def to_caller(self, values) -> np.ndarray:
        """Scatter a vector in internal (sorted) order back to caller order."""
        values = np.asarray(values)
        out = np.empty_like(values)
        out[self.order] = values
        return out

    def from_caller(self, values) -> np.ndarray:
        """Gather a caller-ordered vector into internal order."""
        return np.asarray(values)[self.order]

    def caller_probs(self) -> np.ndarray:
        return self.to_caller(self.probs)


@dataclass(frozen=True)
class BallSpec:
    """Total-variation ball radius ``R`` (``alpha = R/2``) and code base ``D``."""

    radius: float
    base: int = 2

    def __post_init__(self):
        r = float(self.radius)
        if not (0.0 <= r <= 2.0) or math.isnan(r):
            raise InvalidBall(f"radius must lie in [0, 2], got {self.radius!r}")
        if int(self.base) != self.base or self.base < 2:
            raise InvalidBall(f"base must be an integer >= 2, got {self.base!r}")
        object.__setattr__(self, "radius", r)
        object.__setattr__(self, "base", int(self.base))

    @property
    def alpha(self) -> float:
        return self.radius / 2.0

    @classmethod
    def from_alpha(cls, alpha: float, base: int = 2) -> "BallSpec":
        alpha = float(alpha)
        if not (0.0 <= alpha <= 1.0):
            raise InvalidBall(f"alpha must lie in [0, 1], got {alpha!r}")
        return cls(radius=2.0 * alpha, base=base)


@dataclass(frozen=True, eq=False)
class WeightVector:
    """Re-normalized weights, aligned with the nominal internal order.

    The first ``top_count`` entries form the merged high-probability group
    (they gave up mass), the last ``bottom_count`` entries the merged
    low-probability group (they received mass). Everything in between keeps
    its nominal probability.
    """

    weights: np.ndarray
    alpha: float
    top_count: int
    bottom_count: int

    @property
    def size(self) -> int:
        return int(self.weights.size)

    def groups(self) -> np.ndarray:
        """Label each symbol (internal order) as 'top', 'middle' or 'bottom'.

        When the two groups overlap (uniform regime) the top group wins.
        """
        n = self.size
        labels = np.array(["middle"] * n, dtype=object)
        labels[n - min(self.bottom_count, n):] = "bottom"
        labels[: min(self.top_count, n)] = "top"
        return labels


@dataclass(frozen=True, eq=False)
class CodeLengthVector:
    lengths: np.ndarray
    base: int = 2
    integerized: bool = False

    def __post_init__(self):
        lengths = np.asarray(self.lengths, dtype=float)
        if np.any(lengths < 0) or np.any(np.isnan(lengths)):
            raise ValueError("code lengths must be non-negative")
        object.__setattr__(self, "lengths", _readonly(lengths.copy()))

    @property
    def max(self) -> float:
        return float(self.lengths.max())

    @property
    def min(self) -> float:
        return float(self.lengths.min())

    def kraft_sum(self) -> float:
        return kraft_sum(self)


def validate_nominal(raw) -> NominalDistribution:
    """Check a raw probability vector and return it as a nominal distribution.

    Entries must be strictly positive and sum to one within ``1e-9``; the
    stored vector is divided by its sum and stably sorted in non-increasing
    order. Passing a :class:`NominalDistribution` re-validates its values.
    """
    if isinstance(raw, NominalDistribution):
        raw = raw.probs
    p = np.asarray(raw, dtype=float).ravel()
    if p.size < 2:
        raise TooSmallAlphabet(f"alphabet must have at least 2 symbols, got {p.size}")
    if not np.all(np.isfinite(p)):
        raise NonPositiveProbability("probabilities must be finite")
    bad = np.flatnonzero(p <= 0)
    if bad.size:
        raise NonPositiveProbability(
            f"probabilities must be strictly positive; entry {int(bad[0])} is {p[bad[0]]!r}"
        )
    total = math.fsum(p)
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise NotNormalized(f"probabilities sum to {total!r}, not 1")
    # sums already exact to rounding are left alone so validation is idempotent
    if abs(total - 1.0) > p.size * np.finfo(float).eps:
        p = p / total
    # stable descending sort: negate keys so equal entries keep input order
    order = np.argsort(-p, kind="stable")
    return NominalDistribution(probs=_readonly(p[order]), order=_readonly(order))


def as_probability_vector(raw) -> np.ndarray:
    """Looser check than :func:`validate_nominal`: zeros allowed, order kept."""
    p = np.asarray(raw, dtype=float).ravel()
    if p.size < 1:
        raise TooSmallAlphabet("empty probability vector")
    if not np.all(np.isfinite(p)) or np.any(p < 0):
        raise NonPositiveProbability("probabilities must be finite and non-negative")
    total = math.fsum(p)
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise NotNormalized(f"probabilities sum to {total!r}, not 1")
    return p / total


def _pair(p, q) -> tuple[np.ndarray, np.ndarray]:
    p = np.asarray(p, dtype=float).ravel()
    q = np.asarray(q, dtype=float).ravel()
    if p.shape != q.shape:
        raise DimensionMismatch(f"length {p.size} vs {q.size}")
    return p, q


def tv_distance(p, q) -> float:
    """Total variation ``sum |p - q|`` (range [0, 2], no factor 1/2)."""
    p, q = _pair(p, q)
    return math.fsum(np.abs(p - q))


def kl_divergence(p, q) -> float:
    """Relative entropy ``D(p || q)`` in nats."""
    p, q = _pair(p, q)
    support = p > 0
    if np.any(support & (q <= 0)):
        raise SupportViolation("p is not absolutely continuous with respect to q")
    ps, qs = p[support], q[support]
    return max(math.fsum(ps * np.log(ps / qs)), 0.0)


def entropy(p, base: int = 2) -> float:
    """Entropy in base-``base`` units with the convention ``0 log 0 = 0``."""
    p = np.asarray(p, dtype=float).ravel()
    p = p[p > 0]
    return max(-math.fsum(p * np.log(p)) / math.log(base), 0.0)


def kraft_sum(lengths, base: int | None = None) -> float:
    """``sum D**(-l)`` for a :class:`CodeLengthVector` or a plain array."""
    if isinstance(lengths, CodeLengthVector):
        base = lengths.base if base is None else base
        lengths = lengths.lengths
    if base is None:
        base = 2
    lengths = np.asarray(lengths, dtype=float)
    return math.fsum(np.power(float(base), -lengths))
