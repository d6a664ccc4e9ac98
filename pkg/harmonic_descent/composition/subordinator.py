from __future__ import annotations
import typing as ty
import math
import logging
import attrs
import numpy as np
from scipy import stats
from ..exceptions import DomainError
from ..numerics import RngStream, zeta_constants
from ..renewal.measure import NU
from ..utils import pmf_from_counts, total_variation
from .structures import Composition, ExponentialSample, TruncatedSubordinatorPath
from .occupancy import sample_composition


logger = logging.getLogger("harmonic_descent")

DEFAULT_EPSILON = 1e-6

_MIN_BATCH = 16


def simulate_subordinator(
    epsilon: float, horizon: float, rng: RngStream
) -> TruncatedSubordinatorPath:
    """Compound-Poisson approximation of the subordinator keeping jumps above
    epsilon, run until its value exceeds ``horizon``

    Jumps arrive at rate m = nu((epsilon, inf)) = T(epsilon) with
    T(x) = -log(1 - e^-x). Because T is an involution, a jump drawn as T(u m) for
    u uniform on (0, 1] has exactly the law nu restricted to (epsilon, inf)
    normalised by m.

    Parameters
    ----------
    epsilon : float
        truncation level in (0, 1)
    horizon : float
        level the path must pass, > 0
    rng : RngStream
        source of the arrival times and jump sizes

    Returns
    -------
    TruncatedSubordinatorPath
        the path up to and including the first jump past ``horizon``
    """
    if not 0.0 < epsilon < 1.0:
        raise DomainError(f"truncation level must lie in (0, 1), not {epsilon}")
    if not horizon > 0.0:
        raise DomainError(f"horizon must be positive, not {horizon}")
    rate = NU.truncated_mass(epsilon)
    # E[S(1)] is about zeta(2), so horizon / zeta(2) time units are needed on average
    expected = horizon * rate / zeta_constants().zeta2
    batch = max(_MIN_BATCH, int(1.25 * expected) + _MIN_BATCH)
    times, sizes = [], []
    clock = 0.0
    level = 0.0
    while level <= horizon:
        gaps = rng.exponential(1.0 / rate, batch)
        jumps = NU.inverse_tail(rate * rng.uniform_open(batch))
        # guard against rounding the inverse tail back onto epsilon itself
        jumps = np.maximum(jumps, np.nextafter(epsilon, math.inf))
        arrivals = clock + np.cumsum(gaps)
        values = level + np.cumsum(jumps)
        crossed = np.flatnonzero(values > horizon)
        stop = int(crossed[0]) + 1 if crossed.size else batch
        times.append(arrivals[:stop])
        sizes.append(jumps[:stop])
        clock = float(arrivals[stop - 1])
        level = float(values[stop - 1])
    return TruncatedSubordinatorPath(
        epsilon=epsilon,
        jump_times=np.concatenate(times),
        jump_sizes=np.concatenate(sizes),
        horizon=horizon,
    )


def sample_exponential(n: int, rng: RngStream) -> ExponentialSample:
    "n unit-mean exponentials, sorted"
    if n < 1:
        raise DomainError(f"sample size must be >= 1, not {n}")
    return ExponentialSample(n=n, points=np.sort(rng.exponential(1.0, n)))


def balls_in_boxes(
    n: int, rng: RngStream, epsilon: float = DEFAULT_EPSILON
) -> Composition:
    """Throws an exponential sample of size n onto the gaps of the truncated
    subordinator's range and reads off the occupied-gap counts left to right"""
    sample = sample_exponential(n, rng)
    path = simulate_subordinator(epsilon, float(sample.points[-1]), rng)
    _, counts = np.unique(path.gap_index(sample.points), return_counts=True)
    return Composition(n=n, blocks=counts)


@attrs.define(frozen=True, kw_only=True)
class FirstBlockComparison:
    """First-block-size distributions of the two composition samplers"""

    n: int
    reps: int
    balls_in_boxes: np.ndarray = attrs.field(eq=False)
    kernel: np.ndarray = attrs.field(eq=False)
    p_value: float

    @property
    def total_variation(self) -> float:
        return total_variation(self.balls_in_boxes, self.kernel)


def first_block_distribution(
    compositions: ty.Iterable[Composition], n: int
) -> np.ndarray:
    "Empirical pmf of the first block size over 1..n"
    return pmf_from_counts((c.first_block for c in compositions), n)


def compare_first_blocks(
    n: int, reps: int, rng: RngStream, epsilon: float = DEFAULT_EPSILON
) -> FirstBlockComparison:
    """Samples ``reps`` compositions from each sampler and compares their first
    blocks; the subordinator sampler draws on ``rng.replicate(r)`` and the kernel
    sampler on ``rng.replicate(reps + r)``"""
    if reps < 1:
        raise DomainError(f"reps must be >= 1, not {reps}")
    bib = [balls_in_boxes(n, rng.replicate(r), epsilon).first_block for r in range(reps)]
    ker = [sample_composition(n, rng.replicate(reps + r)).first_block for r in range(reps)]
    bib_counts = np.bincount(bib, minlength=n + 1)[1:]
    ker_counts = np.bincount(ker, minlength=n + 1)[1:]
    table = np.vstack([bib_counts, ker_counts])
    # chi-square needs every column populated
    table = table[:, table.sum(axis=0) > 0]
    if table.shape[1] > 1:
        p_value = float(stats.chi2_contingency(table)[1])
    else:
        p_value = 1.0
    comparison = FirstBlockComparison(
        n=n,
        reps=reps,
        balls_in_boxes=bib_counts / reps,
        kernel=ker_counts / reps,
        p_value=p_value,
    )
    logger.info(
        "First-block comparison n=%d: TV=%.4f, chi-square p=%.3g",
        n,
        comparison.total_variation,
        p_value,
    )
    return comparison
