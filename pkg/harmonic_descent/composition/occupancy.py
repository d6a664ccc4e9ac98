from __future__ import annotations
import typing as ty
import math
import logging
from functools import lru_cache
import numpy as np
from ..exceptions import DomainError
from ..numerics import DEFAULT_QUADRATURE, QuadratureSpec, RngStream, integrate
from ..numerics import harmonic_table
from ..chain import HittingQuery, hit_probability_exact, sample_decrement
from .structures import Composition, OccupancyTrajectory


logger = logging.getLogger("harmonic_descent")


def gp_weight(j: int, i: int, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Unnormalised weight C(j, i) * integral of (1 - e^-x)^i e^-x(j-i) nu(dx)

    With u = e^-x the integrand becomes the polynomial C(j, i) (1 - u)^(i-1) u^(j-i)
    on (0, 1); the binomial is folded in so the integrand is of order 1/i.
    """
    if not 1 <= i <= j:
        raise DomainError(f"decrement {i} must lie in [1, {j}]")
    c = float(math.comb(j, i))
    return integrate(lambda u: c * (1.0 - u) ** (i - 1) * u ** (j - i), 0.0, 1.0, spec)


@lru_cache(maxsize=256)
def _gp_row(j: int) -> ty.Tuple[float, ...]:
    weights = [gp_weight(j, i) for i in range(1, j + 1)]
    total = math.fsum(weights)
    return tuple(w / total for w in weights)


def gp_decrement_prob(j: int, i: int) -> float:
    """Probability that the occupancy chain drops from j to j - i, computed from
    the Levy measure by quadrature and normalised over i = 1..j; equals 1 / (i h_j)

    Parameters
    ----------
    j : int
        current number of unallocated points, >= 1
    i : int
        size of the next block, in [1, j]
    """
    if j < 1 or not 1 <= i <= j:
        raise DomainError(f"need 1 <= i <= j, got i={i}, j={j}")
    return _gp_row(j)[i - 1]


def _occupancy_step(m: int, u: float) -> int:
    # the occupancy kernel out of m is the chain kernel out of m + 1
    return sample_decrement(m + 1, u)


def sample_composition(n: int, rng: RngStream) -> Composition:
    """Samples a composition of n by running the occupancy chain
    n -> n - i with probability 1 / (i h_n) down to 0, recording each decrement as
    a block"""
    if n < 1:
        raise DomainError(f"compositions need n >= 1, not {n}")
    blocks = []
    m = n
    while m > 0:
        i = _occupancy_step(m, rng.random())
        blocks.append(i)
        m -= i
    return Composition(n=n, blocks=blocks)


def occupancy_chain(composition: Composition) -> OccupancyTrajectory:
    "Partial remainders n, n - b_1, n - b_1 - b_2, ..., 0"
    counts = [composition.n]
    for b in composition.blocks:
        counts.append(counts[-1] - b)
    return OccupancyTrajectory(counts)


def occupancy_hit_probability_exact(n: int, i: int) -> float:
    """P{X_k(n) = i for some k}, by dynamic programming on the occupancy chain

    g(i) = 1 and g(m) = (1 / h_m) sum_{k=1}^{m-i} g(m - k) / k for m > i.
    """
    if not 1 <= i <= n:
        raise DomainError(f"need 1 <= i <= n, got i={i}, n={n}")
    size = n - i + 1
    g = np.empty(size, dtype=float)
    g[0] = 1.0
    h = harmonic_table(n).as_array()
    inv = 1.0 / np.arange(1, size, dtype=float)
    for d in range(1, size):
        # g(m - k) for k = 1..d is g[d-1], ..., g[0]
        g[d] = np.dot(g[d - 1 :: -1], inv[:d]) / h[i + d]
    return float(g[-1])


def _visits_count(n: int, i: int, rng: RngStream) -> bool:
    m = n
    while m > i:
        m -= _occupancy_step(m, rng.random())
    return m == i


def chain_equivalence_check(
    n: int, i: int, reps: int, rng: RngStream
) -> ty.Tuple[float, float]:
    """Both sides of P{X_k = i + 1 for some k | X_0 = n + 1} = P{X_k(n) = i for
    some k}

    Returns
    -------
    lhs : float
        the chain's exact hitting probability from n + 1 to i + 1
    rhs : float
        fraction of ``reps`` occupancy chains started at n that visit i
    """
    if not 1 <= i < n:
        raise DomainError(f"need 1 <= i < n, got i={i}, n={n}")
    if reps < 1:
        raise DomainError(f"reps must be >= 1, not {reps}")
    lhs = hit_probability_exact(HittingQuery.from_limit_indices(n, i))
    hits = sum(_visits_count(n, i, rng.replicate(r)) for r in range(reps))
    rhs = hits / reps
    logger.info("Equivalence n=%d i=%d: chain %.6f, occupancy %.6f", n, i, lhs, rhs)
    return lhs, rhs
