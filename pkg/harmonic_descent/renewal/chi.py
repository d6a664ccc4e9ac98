from __future__ import annotations
import typing as ty
import math
import logging
import attrs
import numpy as np
from scipy import optimize
from ..exceptions import ConvergenceError, DomainError
from ..numerics import (
    DEFAULT_QUADRATURE,
    QuadratureSpec,
    RngStream,
    dilog,
    harmonic,
    integrate,
    zeta_constants,
)
from .measure import _tail


logger = logging.getLogger("harmonic_descent")

SAMPLE_XTOL = 1e-10


def _check_nonnegative(y) -> np.ndarray:
    arr = np.asarray(y, dtype=float)
    if np.any(~(arr >= 0.0)):
        raise DomainError("chi is supported on [0, inf); got a negative point")
    return arr


def chi_tail(y: ty.Union[float, np.ndarray]) -> ty.Union[float, np.ndarray]:
    """P{chi > y} = Li2(e^-y) / zeta(2)

    Integrating nu((x, inf)) = sum_k e^-kx / k termwise over (y, inf) gives
    sum_k e^-ky / k^2.
    """
    arr = _check_nonnegative(y)
    zeta2 = zeta_constants().zeta2
    if np.ndim(y) == 0:
        return dilog(math.exp(-float(arr))) / zeta2
    return dilog(np.exp(-arr)) / zeta2


def chi_tail_quadrature(y: float, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    "P{chi > y} by quadrature of (1 / zeta(2)) * integral of nu((x, inf)) over (y, inf)"
    _check_nonnegative(y)
    return integrate(_tail, float(y), math.inf, spec) / zeta_constants().zeta2


def chi_laplace(
    i: int, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> ty.Tuple[float, float]:
    """E[exp(-i chi)] two ways

    Returns
    -------
    quadrature : float
        (1 / zeta(2)) * integral of e^-iy nu((y, inf)) over (0, inf)
    closed_form : float
        h_i / (zeta(2) i)
    """
    if i < 1:
        raise DomainError(f"Laplace argument must be a positive integer, not {i}")
    zeta2 = zeta_constants().zeta2
    # u = e^-y: the integrand becomes u^(i-1) * (-log(1 - u)) on (0, 1)
    quad = integrate(lambda u: u ** (i - 1) * -math.log1p(-u), 0.0, 1.0, spec)
    return quad / zeta2, harmonic(i) / (zeta2 * i)


def laplace_via_measure(i: int, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    "E[exp(-i chi)] as (zeta(2) i)^-1 * integral of (1 - e^-iy) nu(dy)"
    if i < 1:
        raise DomainError(f"Laplace argument must be a positive integer, not {i}")
    # u = e^-y: (1 - u^i) / (1 - u) on (0, 1), a polynomial
    quad = integrate(lambda u: (1.0 - u**i) / (1.0 - u), 0.0, 1.0, spec)
    return quad / (zeta_constants().zeta2 * i)


def _solve_tail(u: float) -> float:
    if u >= 1.0:
        return 0.0
    # Li2(z) <= z zeta(2), so chi_tail(y) <= e^-y and -log(u) brackets the root
    hi = -math.log(u)
    try:
        return optimize.brentq(
            lambda y: chi_tail(y) - u, 0.0, hi, xtol=SAMPLE_XTOL, rtol=4e-16
        )
    except (ValueError, RuntimeError) as e:
        raise ConvergenceError(f"could not invert chi tail at u={u}: {e}", hi) from e


def chi_sample(rng: RngStream) -> float:
    "One exact inverse-transform draw from the law of chi"
    return _solve_tail(rng.uniform_open())


def _solve_tail_array(u: np.ndarray) -> np.ndarray:
    lo = np.zeros_like(u)
    hi = -np.log(u)
    # bisection on all draws at once; chi_tail is continuous and strictly decreasing
    while np.max(hi - lo) > SAMPLE_XTOL:
        mid = 0.5 * (lo + hi)
        above = chi_tail(mid) > u
        lo = np.where(above, mid, lo)
        hi = np.where(above, hi, mid)
    return 0.5 * (lo + hi)


@attrs.define(frozen=True)
class ChiDistribution:
    """Limit law of the first-passage overshoot of the subordinator

    P{chi > y} = zeta(2)^-1 * integral over (y, inf) of nu((x, inf)) dx
    """

    zeta2: float = attrs.field(factory=lambda: zeta_constants().zeta2)

    def tail(self, y):
        return chi_tail(y)

    def cdf(self, y):
        return 1.0 - chi_tail(y)

    def density(self, y):
        "nu((y, inf)) / zeta(2); infinite at 0"
        arr = _check_nonnegative(y)
        with np.errstate(divide="ignore"):
            dens = np.where(arr > 0.0, -np.log(-np.expm1(-arr)), np.inf) / self.zeta2
        return float(dens) if np.ndim(y) == 0 else dens

    def laplace(self, i: int) -> float:
        return chi_laplace(i)[1]

    def mean(self) -> float:
        "E[chi] = zeta(3) / zeta(2)"
        return zeta_constants().zeta3 / self.zeta2

    def sample(self, rng: RngStream, size: ty.Optional[int] = None):
        """Inverse-transform draws; a single draw uses Brent's method, a batch uses
        vectorised bisection to the same tolerance"""
        if size is None:
            return chi_sample(rng)
        return _solve_tail_array(rng.uniform_open(size))


CHI = ChiDistribution()
