from __future__ import annotations
import typing as ty
import math
import logging
import attrs
import numpy as np
from scipy import stats
from ..exceptions import DomainError
from ..numerics import RngStream
from ..utils import mean_estimate, proportion_estimate
from .chi import chi_tail


logger = logging.getLogger("harmonic_descent")


def _check_nonnegative_samples(instance, attribute, samples):
    if np.any(samples < 0.0):
        raise DomainError("overshoots cannot be negative")


@attrs.define(frozen=True, kw_only=True)
class OvershootEstimate:
    """Simulated first-passage overshoots S(S^<-(t)) - t at a fixed level"""

    level: float
    samples: np.ndarray = attrs.field(
        converter=lambda s: np.asarray(s, dtype=float),
        validator=_check_nonnegative_samples,
        eq=False,
        repr=False,
    )
    epsilon: float

    @property
    def reps(self) -> int:
        return int(self.samples.size)

    def empirical_tail(self, y):
        "Fraction of overshoots strictly above y"
        y = np.asarray(y, dtype=float)
        ordered = np.sort(self.samples)
        above = self.reps - np.searchsorted(ordered, y, side="right")
        frac = above / self.reps
        return float(frac) if frac.ndim == 0 else frac

    def ks_distance(self) -> float:
        "Kolmogorov-Smirnov distance to the limit law of chi"
        return float(stats.kstest(self.samples, lambda y: 1.0 - chi_tail(y)).statistic)


def _first_passage_overshoot(level: float, epsilon: float, rng: RngStream) -> float:
    # imported here: the composition package itself depends on renewal.measure
    from ..composition.subordinator import simulate_subordinator

    return simulate_subordinator(epsilon, level, rng).overshoot(level)


def _check_mc_args(epsilon: float, reps: int):
    if not 0.0 < epsilon < 1.0:
        raise DomainError(f"truncation level must lie in (0, 1), not {epsilon}")
    if reps < 1:
        raise DomainError(f"reps must be >= 1, not {reps}")


def overshoot_mc(t: float, epsilon: float, reps: int, rng: RngStream) -> OvershootEstimate:
    """Overshoot of the truncated subordinator over level t in ``reps``
    independent replicates (replicate r on ``rng.replicate(r)``)"""
    if not t > 0.0:
        raise DomainError(f"level must be positive, not {t}")
    _check_mc_args(epsilon, reps)
    samples = np.fromiter(
        (_first_passage_overshoot(t, epsilon, rng.replicate(r)) for r in range(reps)),
        dtype=float,
        count=reps,
    )
    logger.info("Simulated %d overshoots over t=%g (epsilon=%g)", reps, t, epsilon)
    return OvershootEstimate(level=t, samples=samples, epsilon=epsilon)


def _spacing_replicate(
    n: int, i: int, epsilon: float, rng: RngStream
) -> ty.Tuple[float, float]:
    """Overshoot at level E_{n-i,n} and the following spacing E_{n-i+1,n} - E_{n-i,n}

    E_{n-i,n} is drawn as -log B with B ~ Beta(i + 1, n - i), the complement of a
    uniform order statistic, and the spacing as an independent exponential of
    mean 1/i.
    """
    level = -math.log(rng.beta(i + 1, n - i))
    spacing = rng.exponential(1.0 / i)
    return _first_passage_overshoot(level, epsilon, rng), spacing


def hitting_via_overshoot(
    n: int, i: int, epsilon: float, reps: int, rng: RngStream
) -> ty.Tuple[float, float]:
    """Estimates P{X_k(n) = i for some k} as the frequency of
    S(S^<-(E_{n-i,n})) - E_{n-i,n} < E_{n-i+1,n} - E_{n-i,n}

    Returns
    -------
    estimate : float
        fraction of replicates in which the overshoot falls short of the spacing
    stderr : float
        binomial standard error
    """
    if not 1 <= i < n:
        raise DomainError(f"need 1 <= i < n, got i={i}, n={n}")
    _check_mc_args(epsilon, reps)
    hits = 0
    for r in range(reps):
        overshoot, spacing = _spacing_replicate(n, i, epsilon, rng.replicate(r))
        hits += overshoot < spacing
    estimate, stderr = proportion_estimate(hits, reps)
    logger.info(
        "Overshoot hitting estimate n=%d i=%d: %.6f +/- %.2g", n, i, estimate, stderr
    )
    return estimate, stderr


def hitting_via_overshoot_laplace(
    n: int, i: int, epsilon: float, reps: int, rng: RngStream
) -> ty.Tuple[float, float]:
    """Conditional Monte Carlo version of :func:`hitting_via_overshoot`

    Integrating out the exponential spacing leaves
    E[exp(-i (S(S^<-(E_{n-i,n})) - E_{n-i,n}))], which has lower variance.
    """
    if not 1 <= i < n:
        raise DomainError(f"need 1 <= i < n, got i={i}, n={n}")
    _check_mc_args(epsilon, reps)
    weights = np.empty(reps, dtype=float)
    for r in range(reps):
        stream = rng.replicate(r)
        level = -math.log(stream.beta(i + 1, n - i))
        weights[r] = math.exp(-i * _first_passage_overshoot(level, epsilon, stream))
    return mean_estimate(weights)
