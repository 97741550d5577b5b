import math

import numpy as np
import pytest
from hypothesis import given, settings

from tvcode.coding import design, worst_case_payoff
from tvcode.core import BallSpec, tv_distance, validate_nominal
from tvcode.merge import compute_weights
from tvcode.oracle import (
    AlphabetTooLarge,
    enumerate_partitions,
    maximize_over_ball,
    sample_ball,
)

from conftest import alphas, nominals


def random_lengths(rng, n):
    # integer-ish lengths make ties between extreme symbols common
    if rng.random() < 0.5:
        return rng.integers(0, 6, size=n).astype(float)
    return rng.random(n) * 8


class TestMaximizeOverBall:
    def test_worked_example(self, mu4):
        res = maximize_over_ball([1, 2, 3, 4], mu4, BallSpec(2 / 15))
        np.testing.assert_allclose(res.nu_star, [7 / 15, 4 / 15, 2 / 15, 2 / 15], atol=1e-15)
        # 7/15 + 8/15 + 6/15 + 8/15, equal to the closed form
        assert res.payoff == pytest.approx(29 / 15, abs=1e-15)
        assert res.payoff == pytest.approx(worst_case_payoff([1, 2, 3, 4], mu4, BallSpec(2 / 15)), abs=1e-15)
        assert res.tv_used == pytest.approx(2 / 15, abs=1e-15)

    def test_zero_radius(self, mu4):
        res = maximize_over_ball([1, 2, 3, 4], mu4, BallSpec(0.0))
        np.testing.assert_array_equal(res.nu_star, mu4.probs)
        assert res.tv_used == 0.0

    def test_constant_lengths(self, mu4):
        res = maximize_over_ball([2, 2, 2, 2], mu4, BallSpec(1.5))
        assert res.payoff == pytest.approx(2.0, abs=1e-15)

    def test_caps_bind(self, mu4):
        # the budget exceeds the shortest symbol's mass, so the donor empties
        res = maximize_over_ball([1, 2, 3, 4], mu4, BallSpec(2.0))
        np.testing.assert_allclose(res.nu_star, [0, 0, 0, 1], atol=1e-15)
        assert res.payoff == pytest.approx(4.0, abs=1e-15)
        assert res.payoff < worst_case_payoff([1, 2, 3, 4], mu4, BallSpec(2.0))

    def test_closed_form_with_inactive_caps(self, rng):
        for _ in range(500):
            n = int(rng.integers(2, 20))
            mu = validate_nominal(rng.dirichlet(np.ones(n)))
            l = random_lengths(rng, n)
            shortest = l == l.min()
            room = min(mu.probs[shortest].sum(), 1.0 - mu.probs[np.argmax(l)])
            spec = BallSpec(2.0 * room * float(rng.random()))
            res = maximize_over_ball(l, mu, spec)
            assert res.payoff == pytest.approx(worst_case_payoff(l, mu, spec), abs=1e-10)

    def test_single_pair_shift_with_inactive_caps(self, rng):
        for _ in range(300):
            n = int(rng.integers(3, 12))
            mu = validate_nominal(rng.dirichlet(np.ones(n)))
            l = rng.random(n) * 5
            lo, hi = int(np.argmin(l)), int(np.argmax(l))
            spec = BallSpec(2.0 * float(rng.random()) * min(mu.probs[lo], 1.0 - mu.probs[hi]))
            delta = maximize_over_ball(l, mu, spec).nu_star - mu.probs
            assert delta[lo] == pytest.approx(-spec.alpha, abs=1e-15)
            assert delta[hi] == pytest.approx(spec.alpha, abs=1e-15)
            delta[[lo, hi]] = 0.0
            assert np.all(delta == 0.0)

    def test_closed_form_is_upper_bound(self, rng):
        for _ in range(500):
            n = int(rng.integers(2, 20))
            mu = validate_nominal(rng.dirichlet(np.ones(n)))
            l = random_lengths(rng, n)
            spec = BallSpec(2.0 * float(rng.random()))
            res = maximize_over_ball(l, mu, spec)
            assert res.payoff <= worst_case_payoff(l, mu, spec) + 1e-12
            assert math.fsum(res.nu_star) == pytest.approx(1.0, abs=1e-12)
            assert np.all(res.nu_star >= 0)
            assert tv_distance(res.nu_star, mu.probs) <= spec.radius + 1e-12

    def test_dominates_samples(self, rng):
        for seed in range(100):
            n = int(rng.integers(2, 12))
            mu = validate_nominal(rng.dirichlet(np.ones(n)))
            l = random_lengths(rng, n)
            spec = BallSpec(2.0 * float(rng.random()))
            best = maximize_over_ball(l, mu, spec).payoff
            for nu in sample_ball(mu, spec, 50, seed):
                assert math.fsum(l * nu) <= best + 1e-12


class TestEnumeratePartitions:
    def test_worked_example(self, mu4):
        w, payoff = enumerate_partitions(mu4, BallSpec(2 / 15))
        np.testing.assert_allclose(w, [7 / 15, 4 / 15, 2 / 15, 2 / 15], atol=1e-15)
        assert payoff == pytest.approx(design(mu4, BallSpec(2 / 15)).worst_case_avg_length, abs=1e-12)

    def test_zero_radius(self, mu4):
        w, _ = enumerate_partitions(mu4, BallSpec(0.0))
        np.testing.assert_allclose(w, mu4.probs, atol=1e-15)

    @pytest.mark.parametrize("alpha", [0.3, 0.5, 1.0])
    def test_uniform_beyond_alpha_max(self, mu4, alpha):
        w, payoff = enumerate_partitions(mu4, BallSpec.from_alpha(alpha))
        np.testing.assert_allclose(w, [0.25] * 4, atol=1e-12)
        assert payoff == pytest.approx(2.0, abs=1e-12)

    def test_just_below_alpha_max_is_not_uniform(self, mu4):
        w, _ = enumerate_partitions(mu4, BallSpec.from_alpha(0.29))
        assert np.ptp(w) > 0.01

    def test_too_large(self):
        with pytest.raises(AlphabetTooLarge):
            enumerate_partitions(validate_nominal([1 / 13] * 13), BallSpec(0.1))

    @settings(max_examples=300, deadline=None)
    @given(nominals(max_size=8), alphas)
    def test_matches_design(self, mu, alpha):
        spec = BallSpec.from_alpha(alpha)
        w, payoff = enumerate_partitions(mu, spec)
        assert payoff == pytest.approx(design(mu, spec).worst_case_avg_length, abs=1e-9)
        np.testing.assert_allclose(w, compute_weights(mu, spec).weights, atol=1e-9)


class TestSampleBall:
    def test_deterministic(self, mu4):
        a = sample_ball(mu4, BallSpec(0.4), 20, seed=3)
        b = sample_ball(mu4, BallSpec(0.4), 20, seed=3)
        assert all(np.array_equal(x, y) for x, y in zip(a, b))
        c = sample_ball(mu4, BallSpec(0.4), 20, seed=4)
        assert not all(np.array_equal(x, y) for x, y in zip(a, c))

    def test_zero_radius(self, mu4):
        for nu in sample_ball(mu4, BallSpec(0.0), 10, seed=0):
            np.testing.assert_allclose(nu, mu4.probs, atol=1e-15)

    @settings(max_examples=100)
    @given(nominals(max_size=15), alphas)
    def test_inside_ball(self, mu, alpha):
        spec = BallSpec.from_alpha(alpha)
        for nu in sample_ball(mu, spec, 25, seed=11):
            assert np.all(nu >= 0)
            assert math.fsum(nu) == pytest.approx(1.0, abs=1e-12)
            assert tv_distance(nu, mu.probs) <= spec.radius + 1e-12

    def test_count_must_be_positive(self, mu4):
        with pytest.raises(ValueError):
            sample_ball(mu4, BallSpec(0.1), 0, seed=0)
