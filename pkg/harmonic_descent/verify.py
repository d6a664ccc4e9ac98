"""Invariant suites run by the ``verify`` commands

Each suite is a function returning a list of :class:`Check` results; a check
passes when its measured error does not exceed its tolerance.
"""
from __future__ import annotations
import typing as ty
import math
import logging
import attrs
import numpy as np
from .exceptions import DomainError, VerificationError
from .numerics import dilog, harmonic, integrate, zeta_int
from .chain import (
    HittingQuery,
    convergence_table,
    decrement_pmf,
    hit_probability_exact,
    hit_probability_profile,
    limit_formula,
)
from .composition import gp_decrement_prob, gp_weight, occupancy_hit_probability_exact
from .renewal import (
    NU,
    chi_laplace,
    chi_tail,
    chi_tail_quadrature,
    hurwitz_moment,
    laplace_via_measure,
    nu_tail,
    nu_tail_quadrature,
)


logger = logging.getLogger("harmonic_descent")

KERNEL_NORMALIZATION_MAX_J = 10_000
GP_MAX_J = 50
LAPLACE_MAX_I = 20
CONVERGENCE_STARTS = (100, 1000, 10_000)
TAIL_GRID = np.concatenate([np.geomspace(1e-3, 1.0, 10), np.linspace(1.5, 20.0, 10)])
INVOLUTION_GRID = np.geomspace(1e-6, 20.0, 40)
REFLECTION_GRID = np.round(np.arange(1, 100) * 0.01, 2)


@attrs.define(frozen=True, kw_only=True)
class Check:
    name: str
    error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.error <= self.tolerance)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: error={self.error:.3e} tolerance={self.tolerance:.1e}"


##################
# Kernel suite   #
##################


def kernel_suite() -> ty.List[Check]:
    checks = []
    worst = max(
        abs(decrement_pmf(j).sum() - 1.0)
        for j in range(2, KERNEL_NORMALIZATION_MAX_J + 1)
    )
    checks.append(Check(name="kernel-normalization", error=worst, tolerance=1e-12))

    expected = np.array([6 / 11, 3 / 11, 2 / 11])
    err = float(np.max(np.abs(decrement_pmf(4) - expected) / expected))
    checks.append(Check(name="kernel-row-j4", error=err, tolerance=1e-14))

    err = abs(hit_probability_exact(HittingQuery(start=4, target=2)) - 7 / 11)
    checks.append(Check(name="dp-start4-target2", error=err, tolerance=1e-14))

    err = abs(limit_formula(1) - 6 / math.pi**2)
    checks.append(Check(name="limit-formula-i1", error=err, tolerance=1e-15))

    worst = 0.0
    for i in (1, 2, 5):
        profile = hit_probability_profile(i + 1, 201)
        for n in range(i + 1, 201):
            occ = occupancy_hit_probability_exact(n, i)
            worst = max(worst, abs(profile[n - i] - occ))
    checks.append(Check(name="chain-vs-occupancy-dp", error=worst, tolerance=1e-12))

    gaps = [abs(row.gap) for row in convergence_table(1, CONVERGENCE_STARTS)]
    # strictly shrinking gaps make every difference negative
    growth = max(later - earlier for earlier, later in zip(gaps, gaps[1:]))
    checks.append(Check(name="convergence-gap-shrinks", error=growth, tolerance=0.0))
    return checks


##################
# Renewal suite  #
##################


def renewal_suite() -> ty.List[Check]:
    checks = []
    for r in (1, 2, 3):
        quad, closed = hurwitz_moment(r)
        checks.append(
            Check(
                name=f"hurwitz-r{r}", error=abs(quad - closed) / closed, tolerance=1e-8
            )
        )
    quad, _ = hurwitz_moment(1)
    checks.append(
        Check(name="hurwitz-r1-zeta2", error=abs(quad - math.pi**2 / 6), tolerance=1e-8)
    )

    laplace_err = limit_err = measure_err = 0.0
    for i in range(1, LAPLACE_MAX_I + 1):
        quad, closed = chi_laplace(i)
        laplace_err = max(laplace_err, abs(quad - closed))
        limit_err = max(limit_err, abs(closed - limit_formula(i)))
        measure_err = max(measure_err, abs(laplace_via_measure(i) - closed))
    checks.append(Check(name="chi-laplace-quadrature", error=laplace_err, tolerance=1e-8))
    checks.append(Check(name="chi-laplace-vs-limit", error=limit_err, tolerance=1e-12))
    checks.append(Check(name="laplace-via-measure", error=measure_err, tolerance=1e-8))

    err = max(abs(nu_tail(x) - nu_tail_quadrature(x)) for x in TAIL_GRID)
    checks.append(Check(name="nu-tail-quadrature", error=err, tolerance=1e-10))
    err = max(abs(chi_tail(y) - chi_tail_quadrature(y)) for y in TAIL_GRID)
    checks.append(Check(name="chi-tail-quadrature", error=err, tolerance=1e-10))
    checks.append(Check(name="chi-tail-at-zero", error=abs(chi_tail(0.0) - 1.0), tolerance=1e-14))

    err = max(
        abs(
            dilog(z)
            + dilog(1.0 - z)
            - (zeta_int(2) - math.log(z) * math.log1p(-z))
        )
        for z in REFLECTION_GRID
    )
    checks.append(Check(name="dilog-reflection", error=err, tolerance=1e-13))

    err = max(
        abs(zeta_int(2) - math.pi**2 / 6) / (math.pi**2 / 6),
        abs(zeta_int(4) - math.pi**4 / 90) / (math.pi**4 / 90),
    )
    checks.append(Check(name="zeta-closed-forms", error=err, tolerance=1e-14))
    return checks


#####################
# Composition suite #
#####################


def composition_suite() -> ty.List[Check]:
    checks = []
    worst = norm = beta = 0.0
    for j in range(1, GP_MAX_J + 1):
        row = [gp_decrement_prob(j, i) for i in range(1, j + 1)]
        norm = max(norm, abs(math.fsum(row) - 1.0))
        h = harmonic(j)
        for i, p in enumerate(row, start=1):
            worst = max(worst, abs(p - 1.0 / (i * h)))
            beta = max(beta, abs(gp_weight(j, i) - 1.0 / i))
    checks.append(Check(name="gp-vs-closed-form", error=worst, tolerance=1e-8))
    checks.append(Check(name="gp-normalization", error=norm, tolerance=1e-10))
    checks.append(Check(name="beta-integral-reduction", error=beta, tolerance=1e-10))

    err = float(np.max(np.abs(NU.inverse_tail(NU.tail(INVOLUTION_GRID)) - INVOLUTION_GRID)))
    checks.append(Check(name="tail-involution", error=err, tolerance=1e-12))

    err = abs(integrate(lambda x: 1.0, 0.0, 1.0) - 1.0)
    checks.append(Check(name="quadrature-unit-interval", error=err, tolerance=1e-12))
    return checks


SUITES: ty.Dict[str, ty.Callable[[], ty.List[Check]]] = {
    "kernel": kernel_suite,
    "renewal": renewal_suite,
    "composition": composition_suite,
}


def run_suite(name: str, raise_on_failure: bool = False) -> ty.List[Check]:
    """Runs the named invariant suite

    Parameters
    ----------
    name : str
        one of the keys of ``SUITES``
    raise_on_failure : bool
        raise :class:`VerificationError` instead of returning failing checks

    Returns
    -------
    list[Check]
        every check in the suite, in the order they were run
    """
    try:
        suite = SUITES[name]
    except KeyError:
        raise DomainError(f"unknown suite {name!r}, choose from {sorted(SUITES)}")
    logger.info("Running %s suite", name)
    checks = suite()
    failed = [c.name for c in checks if not c.passed]
    if failed and raise_on_failure:
        raise VerificationError(f"{name} suite failed: {', '.join(failed)}", failed)
    return checks


def format_report(name: str, checks: ty.Sequence[Check]) -> str:
    lines = [c.line() for c in checks]
    failed = [c.name for c in checks if not c.passed]
    if failed:
        lines.append(f"{name}: {len(failed)} of {len(checks)} checks FAILED ({', '.join(failed)})")
    else:
        lines.append(f"{name}: all {len(checks)} checks passed")
    return "\n".join(lines) + "\n"
