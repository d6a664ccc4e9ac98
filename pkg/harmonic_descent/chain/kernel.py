from __future__ import annotations
import logging
from functools import lru_cache
import attrs
import numpy as np
from ..exceptions import DomainError
from ..numerics import HarmonicTable, harmonic_table


logger = logging.getLogger("harmonic_descent")

# rows for states above this are rebuilt on every request instead of cached
KERNEL_CACHE_THRESHOLD = 10_000
KERNEL_CACHE_SIZE = 1024


def _build_pmf(j: int) -> np.ndarray:
    h = harmonic_table(j - 1)[j - 1]
    return 1.0 / (np.arange(1, j, dtype=float) * h)


@attrs.define(frozen=True, kw_only=True)
class DecrementKernel:
    """One-step law of the harmonic descent chain out of state j >= 2

    ``probs[i - 1]`` is p(j, j - i) = 1 / (i h_{j-1}) for decrements 1 <= i <= j - 1.
    """

    state: int = attrs.field(validator=attrs.validators.ge(2))
    probs: np.ndarray = attrs.field(repr=False, eq=False)
    harmonic_table: HarmonicTable = attrs.field(repr=False, eq=False)

    @classmethod
    def for_state(cls, j: int) -> DecrementKernel:
        if j < 2:
            raise DomainError(f"the decrement kernel is defined for j >= 2, not {j}")
        probs = _build_pmf(j)
        probs.setflags(write=False)
        return cls(state=j, probs=probs, harmonic_table=harmonic_table(j - 1))

    def prob(self, i: int) -> float:
        "p(j, j - i)"
        if not 1 <= i < self.state:
            raise DomainError(f"decrement {i} not in [1, {self.state - 1}]")
        return float(self.probs[i - 1])

    def cdf(self) -> np.ndarray:
        return decrement_cdf(self.state)


def decrement_pmf(j: int) -> np.ndarray:
    """Probabilities of the decrements 1..j-1 out of state j

    Parameters
    ----------
    j : int
        current state, >= 2

    Returns
    -------
    numpy.ndarray
        array of length j - 1 whose entry i - 1 is 1 / (i h_{j-1})
    """
    if j < 2:
        raise DomainError(f"the decrement kernel is defined for j >= 2, not {j}")
    return _build_pmf(j)


def _build_cdf(j: int) -> np.ndarray:
    cdf = np.cumsum(_build_pmf(j))
    # the final entry must bound every uniform draw
    cdf[-1] = 1.0
    cdf.setflags(write=False)
    return cdf


@lru_cache(maxsize=KERNEL_CACHE_SIZE)
def _cached_cdf(j: int) -> np.ndarray:
    logger.debug("Caching decrement CDF row for state %d", j)
    return _build_cdf(j)


def decrement_cdf(j: int) -> np.ndarray:
    "Cumulative decrement probabilities out of state j (read-only)"
    if j < 2:
        raise DomainError(f"the decrement kernel is defined for j >= 2, not {j}")
    if j <= KERNEL_CACHE_THRESHOLD:
        return _cached_cdf(j)
    return _build_cdf(j)


def sample_decrement(j: int, u: float) -> int:
    """Inverse-CDF draw of a decrement out of state j given a uniform u in [0, 1)"""
    return int(np.searchsorted(decrement_cdf(j), u, side="right")) + 1
