from __future__ import annotations
import typing as ty
import logging
import attrs
import numpy as np
from ..exceptions import DomainError
from ..numerics import RngStream, harmonic, harmonic_table, zeta_constants
from ..utils import proportion_estimate
from .kernel import sample_decrement


logger = logging.getLogger("harmonic_descent")


@attrs.define(frozen=True, kw_only=True)
class HittingQuery:
    """Probability that the chain started at ``start`` ever visits ``target``

    In terms of the limit formula, start = n + 1 and target = i + 1. A start equal to
    the target counts as a visit at step 0.
    """

    start: int = attrs.field(converter=int)
    target: int = attrs.field(converter=int)

    @target.validator
    def _check(self, _, target):
        if target < 2:
            raise DomainError(f"target must be >= 2, not {target}")
        if self.start < target:
            raise DomainError(
                f"start ({self.start}) must not lie below target ({target}); the "
                "chain only moves down"
            )

    @classmethod
    def from_limit_indices(cls, n: int, i: int) -> HittingQuery:
        return cls(start=n + 1, target=i + 1)


def hit_probability_profile(target: int, max_start: int) -> np.ndarray:
    """Exact hitting probabilities of ``target`` from every start in
    target..max_start

    Solves f(t) = 1, f(m) = (1 / h_{m-1}) sum_{l=t}^{m-1} f(l) / (m - l) upwards in
    m; states below the target contribute nothing.

    Parameters
    ----------
    target : int
        the state to hit, >= 2
    max_start : int
        the largest start needed, >= target

    Returns
    -------
    numpy.ndarray
        entry k is the hitting probability from start target + k
    """
    HittingQuery(start=max_start, target=target)
    size = max_start - target + 1
    f = np.empty(size, dtype=float)
    f[0] = 1.0
    if size == 1:
        return f
    h = harmonic_table(max_start).as_array()
    # rev[size - 1 - d] = 1 / d, so the slice below pairs f(l) with 1 / (m - l)
    rev = 1.0 / np.arange(size - 1, 0, -1, dtype=float)
    for k in range(1, size):
        m = target + k
        f[k] = np.dot(f[:k], rev[size - 1 - k : size - 1]) / h[m - 1]
    logger.debug("Hitting profile for target %d solved up to %d", target, max_start)
    return f


def hit_probability_exact(query: HittingQuery) -> float:
    "P{X_k = target for some k | X_0 = start}, by dynamic programming"
    return float(hit_probability_profile(query.target, query.start)[-1])


def _hits_target(start: int, target: int, rng: RngStream) -> bool:
    state = start
    while state > target:
        state -= sample_decrement(state, rng.random())
    return state == target


def hit_probability_mc(
    query: HittingQuery, reps: int, rng: RngStream
) -> ty.Tuple[float, float]:
    """Monte Carlo estimate of the hitting probability

    Replicate r walks on ``rng.replicate(r)``, so the estimate does not depend on
    the order the replicates are evaluated in.

    Returns
    -------
    estimate : float
        fraction of replicates that visit the target
    stderr : float
        binomial standard error of the estimate
    """
    if reps < 1:
        raise DomainError(f"reps must be >= 1, not {reps}")
    hits = sum(
        _hits_target(query.start, query.target, rng.replicate(r)) for r in range(reps)
    )
    estimate, stderr = proportion_estimate(hits, reps)
    logger.info(
        "MC hitting %d -> %d: %.6f +/- %.2g over %d reps",
        query.start,
        query.target,
        estimate,
        stderr,
        reps,
    )
    return estimate, stderr


def limit_formula(i: int) -> float:
    "h_i / (zeta(2) i), the large-start limit of the probability of hitting i + 1"
    if i < 1:
        raise DomainError(f"limit formula needs i >= 1, not {i}")
    return harmonic(i) / (zeta_constants().zeta2 * i)


@attrs.define(frozen=True, kw_only=True)
class ConvergenceRow:
    n: int
    q: float
    limit: float

    @property
    def gap(self) -> float:
        return self.q - self.limit


def convergence_table(i: int, starts: ty.Sequence[int]) -> ty.List[ConvergenceRow]:
    """Finite-n hitting probabilities q_n(i) next to their limit

    Parameters
    ----------
    i : int
        the limit index; the target state is i + 1
    starts : Sequence[int]
        the n values, each >= i (n = i is the trivial start-on-target row)

    Returns
    -------
    list[ConvergenceRow]
        one row per n in the order given
    """
    if i < 1:
        raise DomainError(f"limit index must be >= 1, not {i}")
    starts = [int(n) for n in starts]
    for n in starts:
        if n < i:
            raise DomainError(f"n={n} lies below i={i}")
    if not starts:
        return []
    target = i + 1
    profile = hit_probability_profile(target, max(starts) + 1)
    limit = limit_formula(i)
    return [
        ConvergenceRow(n=n, q=float(profile[n + 1 - target]), limit=limit)
        for n in starts
    ]
