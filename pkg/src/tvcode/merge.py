"""Merging / re-normalization recursion for the minimax weights.

As ``alpha`` grows, mass ``alpha`` is taken evenly from a group of the largest
nominal probabilities and spread evenly over a group of the smallest ones.
Each group absorbs its next neighbour when its common weight reaches that
neighbour's nominal probability. These absorption points are the breakpoints;
between two of them every weight is affine in ``alpha``. Once the two groups
touch, they meet at ``1/n`` and the code degenerates to a fixed-length one.

Internal indices are 0-based on the non-increasing nominal vector: the top
group is ``probs[:k2 + 1]`` and the bottom group is ``probs[n - k1 - 1:]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import BallSpec, NominalDistribution, WeightVector

TIE_TOL = 1e-12


class IndexOutOfRange(IndexError):
    pass


@dataclass(frozen=True)
class BreakpointSchedule:
    """All merge events of a nominal distribution, in increasing ``alpha``.

    ``alphas[i]`` is the i-th event, ``kinds[i]`` says which group grew
    ('bottom' for a beta event, 'top' for a gamma event) and
    ``group_sizes[i]`` holds ``(top_count, bottom_count)`` right after it.
    ``final_sizes`` is the configuration at ``alpha_max``.
    """

    betas: tuple[float, ...]
    gammas: tuple[float, ...]
    alphas: tuple[float, ...]
    kinds: tuple[str, ...]
    group_sizes: tuple[tuple[int, int], ...]
    alpha_max: float
    final_sizes: tuple[int, int]

    @property
    def group_sizes_at(self) -> dict[int, tuple[int, int]]:
        return dict(enumerate(self.group_sizes))

    def sizes_for(self, alpha: float) -> tuple[int, int]:
        """Group sizes on the left-closed interval containing ``alpha``."""
        sizes = (1, 1)
        for a, s in zip(self.alphas, self.group_sizes):
            if a > alpha:
                break
            sizes = s
        return sizes


@dataclass(frozen=True)
class MergeState:
    top_count: int
    bottom_count: int
    top_sum: float
    bottom_sum: float
    iterations: int
    saturated: bool
    alpha_max: float | None


def next_beta(mu: NominalDistribution, k1: int, bottom_sum: float) -> float:
    """``alpha`` at which a bottom group of ``k1 + 1`` symbols reaches its neighbour."""
    n = mu.size
    if k1 < 0 or k1 + 1 > n - 1:
        raise IndexOutOfRange(f"k1={k1} out of range for alphabet of size {n}")
    return (k1 + 1) * float(mu.probs[n - k1 - 2]) - bottom_sum


def next_gamma(mu: NominalDistribution, k2: int, top_sum: float) -> float:
    """``alpha`` at which a top group of ``k2 + 1`` symbols falls to its neighbour."""
    n = mu.size
    if k2 < 0 or k2 + 1 > n - 1:
        raise IndexOutOfRange(f"k2={k2} out of range for alphabet of size {n}")
    return top_sum - (k2 + 1) * float(mu.probs[k2 + 1])


def _walk(mu: NominalDistribution, target: float | None, events: list | None) -> MergeState:
    p = mu.probs
    n = mu.size
    k1 = k2 = 0
    bottom_sum = float(p[-1])
    top_sum = float(p[0])
    iterations = 0
    last = 0.0
    while True:
        iterations += 1
        middle = n - k1 - k2 - 2
        if middle <= 0:
            # groups are adjacent: solve (top_sum - a)/(k2+1) = (bottom_sum + a)/(k1+1)
            meet = ((k1 + 1) * top_sum - (k2 + 1) * bottom_sum) / n
            meet = max(meet, last)
            saturated = target is None or target >= meet
            return MergeState(k2 + 1, k1 + 1, top_sum, bottom_sum, iterations, saturated, meet)

        beta = next_beta(mu, k1, bottom_sum)
        gamma = next_gamma(mu, k2, top_sum)
        if target is not None and min(beta, gamma) > target:
            return MergeState(k2 + 1, k1 + 1, top_sum, bottom_sum, iterations, False, None)

        tie = abs(beta - gamma) <= TIE_TOL
        grow_bottom = beta <= gamma or tie
        # a single middle symbol cannot join both groups; it goes to the bottom
        grow_top = (gamma < beta and not tie) or (tie and middle >= 2)
        if grow_bottom:
            k1 += 1
            bottom_sum += float(p[n - k1 - 1])
            last = max(last, beta)
            if events is not None:
                events.append((beta, "bottom", (k2 + 1, k1 + 1)))
        if grow_top:
            k2 += 1
            top_sum += float(p[k2])
            last = max(last, gamma)
            if events is not None:
                events.append((gamma, "top", (k2 + 1, k1 + 1)))


def merge_state(mu: NominalDistribution, alpha: float) -> MergeState:
    """Run the event loop only as far as ``alpha`` requires.

    ``iterations`` counts loop passes and never exceeds ``n``.
    """
    return _walk(mu, float(alpha), None)


def build_schedule(mu: NominalDistribution) -> BreakpointSchedule:
    events: list = []
    final = _walk(mu, None, events)
    return BreakpointSchedule(
        betas=tuple(a for a, kind, _ in events if kind == "bottom"),
        gammas=tuple(a for a, kind, _ in events if kind == "top"),
        alphas=tuple(a for a, _, _ in events),
        kinds=tuple(kind for _, kind, _ in events),
        group_sizes=tuple(s for _, _, s in events),
        alpha_max=final.alpha_max,
        final_sizes=(final.top_count, final.bottom_count),
    )


def weights_from_state(mu: NominalDistribution, alpha: float, state: MergeState) -> WeightVector:
    n = mu.size
    t, b = state.top_count, state.bottom_count
    if state.saturated:
        return WeightVector(np.full(n, 1.0 / n), alpha, t, b)
    w = np.array(mu.probs, dtype=float)
    w[:t] = (state.top_sum - alpha) / t
    w[n - b:] = (state.bottom_sum + alpha) / b
    return WeightVector(w, alpha, t, b)


def compute_weights(mu: NominalDistribution, spec: BallSpec) -> WeightVector:
    """Optimal weights for ``alpha = spec.alpha`` via the merge recursion.

    Within ``[alpha_k, alpha_{k+1})`` the top group of size ``t`` carries
    ``(top_sum - alpha) / t``, the bottom group of size ``b`` carries
    ``(bottom_sum + alpha) / b``, and the middle keeps its nominal values.
    At or beyond ``alpha_max`` all weights are ``1/n``.
    """
    alpha = spec.alpha
    return weights_from_state(mu, alpha, merge_state(mu, alpha))


def trajectory(mu: NominalDistribution, steps: int = 0) -> list[tuple[float, np.ndarray, bool]]:
    """Weights along ``alpha`` for plotting.

    Returns ``(alpha, weights, is_breakpoint)`` triples (weights in internal
    order) at ``0``, every distinct breakpoint, ``alpha_max``, and ``steps``
    evenly spaced interior points of ``(0, alpha_max)``.
    """
    if steps < 0:
        raise ValueError("steps must be non-negative")
    sched = build_schedule(mu)
    marks: list[float] = []
    for a in (0.0, *sched.alphas, sched.alpha_max):
        if not marks or a - marks[-1] > TIE_TOL:
            marks.append(a)
    points = [(a, True) for a in marks]
    if steps and sched.alpha_max > 0:
        for a in np.linspace(0.0, sched.alpha_max, steps + 2)[1:-1]:
            if all(abs(a - m) > TIE_TOL for m in marks):
                points.append((float(a), False))
    points.sort(key=lambda t: t[0])
    rows = []
    for a, is_bp in points:
        wv = compute_weights(mu, BallSpec.from_alpha(min(a, 1.0), 2))
        rows.append((a, wv.weights, is_bp))
    return rows
