import math
import numpy as np
import pytest
from harmonic_descent.exceptions import DomainError
from harmonic_descent.numerics import RngStream
from harmonic_descent.chain import HittingQuery, hit_probability_exact
from harmonic_descent.renewal import (
    OvershootEstimate,
    hitting_via_overshoot,
    hitting_via_overshoot_laplace,
    overshoot_mc,
)
from conftest import STATISTICAL_REPS, within_sigmas


def test_estimate_queries():
    est = OvershootEstimate(level=1.0, samples=[0.1, 0.5, 2.0], epsilon=1e-3)
    assert est.reps == 3
    assert est.empirical_tail(0.0) == 1.0
    assert est.empirical_tail(0.5) == pytest.approx(1 / 3)
    np.testing.assert_allclose(est.empirical_tail([0.05, 3.0]), [1.0, 0.0])
    with pytest.raises(DomainError):
        OvershootEstimate(level=1.0, samples=[0.1, -0.2], epsilon=1e-3)


def test_overshoot_mc_small(seed):
    est = overshoot_mc(10.0, 1e-6, 2000, RngStream(seed=seed))
    assert est.reps == 2000
    assert np.all(est.samples > 0.0)
    assert est.ks_distance() <= 0.1
    again = overshoot_mc(10.0, 1e-6, 50, RngStream(seed=seed))
    assert np.array_equal(again.samples, est.samples[:50])


@pytest.mark.parametrize(
    "t,epsilon,reps", [(0.0, 1e-6, 10), (1.0, 0.0, 10), (1.0, 1e-6, 0)]
)
def test_overshoot_mc_domain(rng, t, epsilon, reps):
    with pytest.raises(DomainError):
        overshoot_mc(t, epsilon, reps, rng)


def test_hitting_n2(rng):
    est, stderr = hitting_via_overshoot(2, 1, 1e-6, 10_000, rng)
    assert within_sigmas(est, 2 / 3, stderr)


def test_hitting_laplace_n2(rng):
    est, stderr = hitting_via_overshoot_laplace(2, 1, 1e-6, 10_000, rng)
    assert stderr > 0.0
    assert within_sigmas(est, 2 / 3, stderr)


def test_hitting_domain(rng):
    with pytest.raises(DomainError):
        hitting_via_overshoot(3, 3, 1e-6, 10, rng)
    with pytest.raises(DomainError):
        hitting_via_overshoot_laplace(3, 0, 1e-6, 10, rng)


@pytest.mark.slow
def test_overshoot_converges_to_chi(rng):
    est = overshoot_mc(30.0, 1e-6, STATISTICAL_REPS, rng)
    assert est.ks_distance() <= 0.015


@pytest.mark.slow
def test_overshoot_at_small_level_is_far_from_chi(rng):
    # far from the renewal regime the overshoot law is not yet that of chi
    est = overshoot_mc(0.01, 1e-6, 20_000, rng)
    assert est.ks_distance() > 0.1


@pytest.mark.slow
@pytest.mark.parametrize("n,i", [(10, 1), (50, 2), (100, 1)])
def test_hitting_matches_dp(rng, n, i):
    exact = hit_probability_exact(HittingQuery.from_limit_indices(n, i))
    est, stderr = hitting_via_overshoot(n, i, 1e-6, STATISTICAL_REPS, rng)
    assert within_sigmas(est, exact, stderr)


@pytest.mark.slow
def test_hitting_large_n(rng):
    est, _ = hitting_via_overshoot(10_000, 1, 1e-6, STATISTICAL_REPS, rng)
    assert abs(est - 6 / math.pi**2) <= 0.02
