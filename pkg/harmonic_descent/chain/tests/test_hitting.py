import math
from fractions import Fraction
import numpy as np
import pytest
from harmonic_descent.exceptions import DomainError
from harmonic_descent.numerics import RngStream
from harmonic_descent.chain import (
    HittingQuery,
    convergence_table,
    hit_probability_exact,
    hit_probability_mc,
    hit_probability_profile,
    limit_formula,
)
from harmonic_descent.composition import occupancy_hit_probability_exact
from conftest import STATISTICAL_REPS, within_sigmas


def _exact_rational(start, target):
    f = {target: Fraction(1)}
    for m in range(target + 1, start + 1):
        h = sum(Fraction(1, k) for k in range(1, m))
        f[m] = sum(f[s] / (m - s) for s in range(target, m)) / h
    return f[start]


def test_exact_small_cases():
    assert hit_probability_exact(HittingQuery(start=2, target=2)) == 1.0
    assert hit_probability_exact(HittingQuery(start=3, target=2)) == pytest.approx(
        2 / 3, abs=1e-15
    )
    assert hit_probability_exact(HittingQuery(start=4, target=2)) == pytest.approx(
        7 / 11, abs=1e-14
    )


@pytest.mark.parametrize("target", [2, 3, 6])
def test_profile_against_rational_recursion(target):
    profile = hit_probability_profile(target, target + 12)
    for k, value in enumerate(profile):
        assert value == pytest.approx(float(_exact_rational(target + k, target)), abs=1e-14)


@pytest.mark.parametrize("i", [1, 2, 5])
def test_chain_dp_matches_occupancy_dp(i):
    profile = hit_probability_profile(i + 1, 150)
    for n in range(i, 150):
        assert profile[n - i] == pytest.approx(
            occupancy_hit_probability_exact(n, i), abs=1e-12
        )


def test_query_validation():
    assert HittingQuery.from_limit_indices(9, 1) == HittingQuery(start=10, target=2)
    with pytest.raises(DomainError):
        HittingQuery(start=5, target=1)
    with pytest.raises(DomainError):
        HittingQuery(start=3, target=4)


def test_limit_formula_values():
    assert limit_formula(1) == pytest.approx(6 / math.pi**2, abs=1e-15)
    assert limit_formula(1) == pytest.approx(0.6079271, abs=1e-7)
    assert limit_formula(2) == pytest.approx(0.4559453, abs=1e-7)
    assert limit_formula(20) == pytest.approx(0.1093582, abs=1e-7)
    assert limit_formula(10**6) < 1e-5
    with pytest.raises(DomainError):
        limit_formula(0)


def test_convergence_table_first_rows():
    rows = convergence_table(1, [1, 2, 3])
    assert rows[0].q == 1.0
    assert rows[1].q == pytest.approx(2 / 3, abs=1e-15)
    assert rows[1].gap == pytest.approx(2 / 3 - 6 / math.pi**2, abs=1e-15)
    assert rows[1].gap == pytest.approx(0.0587396, abs=1e-7)
    assert rows[2].q == pytest.approx(7 / 11, abs=1e-14)
    assert convergence_table(3, []) == []


def test_convergence_gap_shrinks():
    gaps = [abs(r.gap) for r in convergence_table(1, [100, 1000, 10_000])]
    assert gaps[0] > gaps[1] > gaps[2]


# q_n(1) from the same recursion carried out in 128-bit floating point
@pytest.mark.parametrize(
    "n,q,gap",
    [
        (100, 0.60803517847530329, 1.0807662127666241e-4),
        (1000, 0.60793003474771272, 2.9328936860922e-6),
        (10_000, 0.60792718130991008, 7.945588345280e-8),
    ],
)
def test_convergence_table_regression(n, q, gap):
    (row,) = convergence_table(1, [n])
    assert row.n == n
    assert row.q == pytest.approx(q, abs=1e-12)
    assert row.gap == pytest.approx(gap, abs=1e-12)


def test_convergence_table_rows_agree_with_dp():
    rows = convergence_table(2, [5, 40])
    for row in rows:
        q = hit_probability_exact(HittingQuery.from_limit_indices(row.n, 2))
        assert row.q == pytest.approx(q, abs=1e-15)
        assert row.limit == limit_formula(2)


def test_convergence_table_rejects_small_n():
    with pytest.raises(DomainError):
        convergence_table(3, [2])
    with pytest.raises(DomainError):
        convergence_table(0, [5])


def test_dp_at_thirty_thousand():
    profile = hit_probability_profile(2, 30_001)
    assert np.all((profile > 0.0) & (profile <= 1.0))
    gap = abs(profile[-1] - limit_formula(1))
    assert gap < abs(convergence_table(1, [10_000])[0].gap)


def test_mc_small(rng):
    reps = 10_000
    est, stderr = hit_probability_mc(HittingQuery(start=3, target=2), reps, rng)
    assert stderr > 0.0
    assert within_sigmas(est, 2 / 3, stderr)


def test_mc_is_reproducible(seed):
    query = HittingQuery(start=40, target=3)
    a = hit_probability_mc(query, 500, RngStream(seed=seed))
    b = hit_probability_mc(query, 500, RngStream(seed=seed))
    assert a == b


def test_mc_start_on_target(rng):
    assert hit_probability_mc(HittingQuery(start=5, target=5), 10, rng) == (1.0, 0.0)


def test_mc_rejects_zero_reps(rng):
    with pytest.raises(DomainError):
        hit_probability_mc(HittingQuery(start=5, target=2), 0, rng)


@pytest.mark.slow
@pytest.mark.parametrize("n", [10, 50, 200])
@pytest.mark.parametrize("i", [1, 2, 5])
def test_mc_agrees_with_dp(rng, n, i):
    query = HittingQuery.from_limit_indices(n, i)
    exact = hit_probability_exact(query)
    est, stderr = hit_probability_mc(query, STATISTICAL_REPS, rng)
    assert within_sigmas(est, exact, stderr)


@pytest.mark.slow
def test_mc_start_100(rng):
    query = HittingQuery(start=100, target=2)
    est, stderr = hit_probability_mc(query, STATISTICAL_REPS, rng)
    assert within_sigmas(est, hit_probability_exact(query), stderr)


def test_mc_depends_on_parent_stream(seed):
    query = HittingQuery(start=40, target=3)
    a = hit_probability_mc(query, 2000, RngStream(seed=seed, stream_index=0))
    b = hit_probability_mc(query, 2000, RngStream(seed=seed, stream_index=5))
    assert a != b
    assert a == hit_probability_mc(query, 2000, RngStream(seed=seed, stream_index=0))
