from __future__ import annotations
import typing as ty
import math
import attrs
import numpy as np
from ..exceptions import DomainError
from ..numerics import DEFAULT_QUADRATURE, QuadratureSpec, integrate, zeta_int


LOG2 = math.log(2.0)
_TINY = np.finfo(float).tiny

SUPPORTED_MOMENTS = (1, 2, 3)


def _check_positive(x) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0.0)):
        raise DomainError("the Levy measure lives on (0, inf); got a non-positive point")
    return arr


def _scalar_or_array(arr: np.ndarray, like) -> ty.Union[float, np.ndarray]:
    return float(arr) if np.ndim(like) == 0 else arr


def _density(x: float) -> float:
    x = max(x, _TINY)
    return math.exp(-x) / -math.expm1(-x)


def _tail(x: float) -> float:
    x = max(x, _TINY)
    if x > LOG2:
        return -math.log1p(-math.exp(-x))
    return -math.log(-math.expm1(-x))


def _tail_array(x: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", over="ignore"):
        small = -np.log(-np.expm1(-x))
        large = -np.log1p(-np.exp(-x))
    return np.where(x > LOG2, large, small)


def nu_density(x: ty.Union[float, np.ndarray]) -> ty.Union[float, np.ndarray]:
    """Density e^-x / (1 - e^-x) of the Levy measure

    Evaluated through expm1 so that it stays accurate as x -> 0, where it behaves
    like 1/x - 1/2.
    """
    arr = _check_positive(x)
    return _scalar_or_array(np.exp(-arr) / -np.expm1(-arr), x)


def nu_tail(x: ty.Union[float, np.ndarray]) -> ty.Union[float, np.ndarray]:
    "nu((x, inf)) = -log(1 - e^-x)"
    arr = _check_positive(x)
    return _scalar_or_array(_tail_array(arr), x)


def nu_tail_quadrature(x: float, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    "nu((x, inf)) by direct quadrature of the density"
    _check_positive(x)
    return integrate(_density, float(x), math.inf, spec)


def _moment_integrand(r: int) -> ty.Callable[[float], float]:
    def integrand(x: float) -> float:
        if x <= 0.0:
            # x^r nu(dx)/dx tends to 1 for r = 1 and to 0 above
            return 1.0 if r == 1 else 0.0
        return x**r * _density(x)

    return integrand


def hurwitz_moment(
    r: int, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> ty.Tuple[float, float]:
    """The moment integral of x^r against the Levy measure, two ways

    Returns
    -------
    quadrature : float
        numerical integral of x^r nu(dx) over (0, inf)
    closed_form : float
        r! zeta(r + 1)
    """
    if r not in SUPPORTED_MOMENTS:
        raise DomainError(f"moments are supported for r in {SUPPORTED_MOMENTS}, not {r}")
    quad = integrate(_moment_integrand(r), 0.0, math.inf, spec)
    return quad, math.factorial(r) * zeta_int(r + 1)


@attrs.define(frozen=True)
class HarmonicLevyMeasure:
    """nu(dx) = e^-x / (1 - e^-x) dx on (0, inf), the Levy measure of the
    subordinator behind the balls-in-boxes scheme

    Its tail T(x) = -log(1 - e^-x) satisfies e^-T(x) = 1 - e^-x and is therefore
    its own inverse, which gives exact inverse-transform sampling of truncated
    jumps.
    """

    def density(self, x):
        return nu_density(x)

    def tail(self, x):
        return nu_tail(x)

    def truncated_mass(self, epsilon: float) -> float:
        "Total mass of the jumps larger than epsilon, the compound-Poisson rate"
        if not epsilon > 0:
            raise DomainError(f"truncation level must be positive, not {epsilon}")
        return _tail(epsilon)

    def inverse_tail(self, mass):
        """The x with nu((x, inf)) = mass; by the involution this is T(mass)"""
        arr = np.asarray(mass, dtype=float)
        if np.any(~(arr > 0.0)):
            raise DomainError("tail masses must be positive")
        return _scalar_or_array(_tail_array(arr), mass)

    def truncated_mean_jump(
        self, epsilon: float, spec: QuadratureSpec = DEFAULT_QUADRATURE
    ) -> float:
        "Mean size of a jump conditioned on exceeding epsilon"
        mass = self.truncated_mass(epsilon)
        return integrate(lambda x: x * _density(x), epsilon, math.inf, spec) / mass

    def moment(self, r: int) -> ty.Tuple[float, float]:
        return hurwitz_moment(r)


NU = HarmonicLevyMeasure()
