from __future__ import annotations
import typing as ty
import math
import logging
import attrs
from scipy import integrate as sp_integrate
from ..exceptions import ConvergenceError, DomainError


logger = logging.getLogger("harmonic_descent")


def _positive(instance, attribute, value):
    if not value > 0:
        raise DomainError(f"{attribute.name} must be positive, not {value!r}")


@attrs.define(frozen=True, kw_only=True)
class QuadratureSpec:
    """Tolerances handed to the adaptive quadrature

    The defaults sit a decade below the tightest tolerance any caller checks
    against.
    """

    abs_tol: float = attrs.field(default=1e-12, converter=float, validator=_positive)
    rel_tol: float = attrs.field(default=1e-12, converter=float, validator=_positive)
    max_subdivisions: int = attrs.field(default=2000, converter=int, validator=_positive)


DEFAULT_QUADRATURE = QuadratureSpec()


def integrate(
    f: ty.Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Adaptive Gauss-Kronrod quadrature of ``f`` over (a, b)

    A semi-infinite range (a, inf) is mapped onto (0, 1) with x = a - log(u),
    which turns the exponentially decaying integrands used in this package into
    bounded ones.

    Parameters
    ----------
    f : Callable[[float], float]
        the integrand, evaluated only at interior points
    a : float
        lower limit
    b : float
        upper limit, may be ``math.inf``
    spec : QuadratureSpec
        tolerances and subdivision limit

    Returns
    -------
    float
        the integral estimate

    Raises
    ------
    ConvergenceError
        if the subdivision limit is exhausted or the estimate is not finite
    """
    if math.isinf(a) or math.isnan(a) or math.isnan(b):
        raise DomainError(f"lower limit must be finite, got ({a}, {b})")
    if b == a:
        return 0.0
    if b < a:
        return -integrate(f, b, a, spec)
    if math.isinf(b):

        def integrand(u: float) -> float:
            return f(a - math.log(u)) / u

        lo, hi = 0.0, 1.0
    else:
        integrand = f
        lo, hi = a, b
    out = sp_integrate.quad(
        integrand,
        lo,
        hi,
        epsabs=spec.abs_tol,
        epsrel=spec.rel_tol,
        limit=spec.max_subdivisions,
        full_output=1,
    )
    value, abserr, info = out[:3]
    if not math.isfinite(value):
        raise ConvergenceError(
            f"quadrature over ({a}, {b}) produced {value}", value, abserr
        )
    if len(out) > 3:
        if info["last"] >= spec.max_subdivisions:
            raise ConvergenceError(
                f"quadrature over ({a}, {b}) did not converge within "
                f"{spec.max_subdivisions} subdivisions: {out[3]}",
                value,
                abserr,
            )
        # round-off or extrapolation notices with the limit unreached still
        # leave the best available estimate
        logger.debug(
            "quad over (%s, %s) flagged (abserr=%.3g, %d intervals): %s",
            a,
            b,
            abserr,
            info["last"],
            out[3],
        )
    return value
