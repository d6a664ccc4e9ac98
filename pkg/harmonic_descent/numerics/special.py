from __future__ import annotations
import typing as ty
import math
import logging
import threading
from functools import lru_cache
import attrs
import numpy as np
from ..exceptions import DomainError


logger = logging.getLogger("harmonic_descent")


# (2m)! / B_{2m} for m = 1..12, the Euler-Maclaurin correction denominators
_EULER_MACLAURIN_DENOMS = (
    12.0,
    -720.0,
    30240.0,
    -1209600.0,
    47900160.0,
    -1.8924375803183791606e9,
    7.47242496e10,
    -2.950130727918164224e12,
    1.1646782814350067249e14,
    -4.5979787224074726105e15,
    1.8152105401943546773e17,
    -7.1661652561756670113e18,
)

# number of leading terms summed directly before the tail correction
_ZETA_DIRECT_TERMS = 9

# z <= 1/2 after reflection, so 2^-64 / 64^2 is far below double resolution
_DILOG_SERIES_TERMS = 64
_DILOG_COEFFS = 1.0 / np.arange(1, _DILOG_SERIES_TERMS + 1, dtype=float) ** 2


@attrs.define(frozen=True, kw_only=True)
class HarmonicTable:
    """Harmonic numbers h_1..h_max_n accumulated with Kahan compensation

    ``values[n]`` holds h_n; ``values[0]`` is the empty sum 0 so the array can be
    indexed directly by n.
    """

    max_n: int = attrs.field(validator=attrs.validators.ge(1))
    values: np.ndarray = attrs.field(repr=False, eq=False)

    @classmethod
    def build(cls, max_n: int) -> HarmonicTable:
        if max_n < 1:
            raise DomainError(f"harmonic table needs max_n >= 1, not {max_n}")
        values = np.zeros(max_n + 1, dtype=float)
        total = 0.0
        compensation = 0.0
        for k in range(1, max_n + 1):
            y = 1.0 / k - compensation
            t = total + y
            compensation = (t - total) - y
            total = t
            values[k] = total
        values.setflags(write=False)
        logger.debug("Built harmonic table up to n=%d", max_n)
        return cls(max_n=max_n, values=values)

    def __getitem__(self, n: int) -> float:
        if n < 1 or n > self.max_n:
            raise DomainError(f"n={n} outside harmonic table range [1, {self.max_n}]")
        return float(self.values[n])

    def __len__(self) -> int:
        return self.max_n

    def as_array(self, max_n: ty.Optional[int] = None) -> np.ndarray:
        "Read-only view of h_0..h_max_n"
        if max_n is None:
            return self.values
        if max_n > self.max_n:
            raise DomainError(f"table only extends to {self.max_n}, not {max_n}")
        return self.values[: max_n + 1]


_table_lock = threading.Lock()
_table: ty.Optional[HarmonicTable] = None


def harmonic_table(max_n: int) -> HarmonicTable:
    """Returns a shared harmonic table covering at least ``max_n``, growing the
    cached table (by at least doubling) when it is too short

    Parameters
    ----------
    max_n : int
        the largest index the caller needs

    Returns
    -------
    HarmonicTable
        a table with ``table.max_n >= max_n``
    """
    global _table
    if max_n < 1:
        raise DomainError(f"harmonic numbers are defined for n >= 1, not {max_n}")
    table = _table
    if table is not None and table.max_n >= max_n:
        return table
    with _table_lock:
        if _table is None or _table.max_n < max_n:
            current = _table.max_n if _table is not None else 512
            _table = HarmonicTable.build(max(max_n, 2 * current))
        return _table


def harmonic(n: int) -> float:
    "h_n = 1 + 1/2 + ... + 1/n"
    if n < 1:
        raise DomainError(f"harmonic numbers are defined for n >= 1, not {n}")
    return harmonic_table(n)[n]


def zeta_int(s: int, tol: float = 1e-16) -> float:
    """Riemann zeta at an integer argument s >= 2

    Sums the leading terms directly, adds the integral of x^-s over the tail and
    then Euler-Maclaurin corrections until the next correction drops below
    ``tol`` relative to the running total.

    Parameters
    ----------
    s : int
        the argument, an integer >= 2
    tol : float
        relative size of the last correction at which to stop

    Returns
    -------
    float
        zeta(s)
    """
    if int(s) != s or s < 2:
        raise DomainError(f"zeta_int is restricted to integers s >= 2, not {s}")
    x = float(s)
    w = float(_ZETA_DIRECT_TERMS + 1)
    parts = [k**-x for k in range(1, _ZETA_DIRECT_TERMS + 2)]
    b = parts[-1]
    # the last summed term w^-s is counted in full, so half of it comes back off
    parts.append(b * w / (x - 1.0))  # integral of t^-s over [w, inf)
    parts.append(-0.5 * b)
    approx = math.fsum(parts)
    rising = 1.0
    k = 0.0
    for denom in _EULER_MACLAURIN_DENOMS:
        rising *= x + k
        b /= w
        term = rising * b / denom
        parts.append(term)
        if abs(term) < tol * approx:
            break
        k += 1.0
        rising *= x + k
        b /= w
        k += 1.0
    return math.fsum(parts)


@attrs.define(frozen=True, kw_only=True)
class ZetaConstants:
    zeta2: float = attrs.field()
    zeta3: float
    zeta4: float

    @zeta2.validator
    def _check_zeta2(self, _, value):
        if abs(value - math.pi**2 / 6) > 1e-15 * (math.pi**2 / 6):
            raise DomainError(f"zeta2={value!r} does not match pi^2/6")


@lru_cache(maxsize=None)
def zeta_constants() -> ZetaConstants:
    "The zeta values used across the package, computed once"
    return ZetaConstants(zeta2=zeta_int(2), zeta3=zeta_int(3), zeta4=zeta_int(4))


def _dilog_series_scalar(w: float) -> float:
    if w == 0.0:
        return 0.0
    total = 0.0
    power = 1.0
    for k in range(1, _DILOG_SERIES_TERMS + 1):
        power *= w
        term = power / (k * k)
        total += term
        if term < 1e-18 * total:
            break
    return total


def _dilog_series_array(w: np.ndarray) -> np.ndarray:
    # Horner evaluation of w * sum_k w^(k-1) / k^2
    acc = np.zeros_like(w)
    for coeff in _DILOG_COEFFS[::-1]:
        acc = acc * w + coeff
    return acc * w


def _dilog_scalar(z: float) -> float:
    zeta2 = zeta_constants().zeta2
    if z == 1.0:
        return zeta2
    if z <= 0.5:
        return _dilog_series_scalar(z)
    w = 1.0 - z
    return zeta2 - math.log(z) * math.log(w) - _dilog_series_scalar(w)


def dilog(z: ty.Union[float, np.ndarray]) -> ty.Union[float, np.ndarray]:
    """Dilogarithm Li2(z) = sum_k z^k / k^2 on [0, 1]

    Arguments above 1/2 are mapped through the reflection identity
    Li2(z) + Li2(1 - z) = zeta(2) - ln(z) ln(1 - z).

    Parameters
    ----------
    z : float or numpy.ndarray
        argument(s) in [0, 1]

    Returns
    -------
    float or numpy.ndarray
        Li2 evaluated elementwise, a float for scalar input
    """
    if np.ndim(z) == 0:
        zf = float(z)
        if not 0.0 <= zf <= 1.0:
            raise DomainError(f"dilog is only implemented on [0, 1], not {zf}")
        return _dilog_scalar(zf)
    arr = np.asarray(z, dtype=float)
    if np.any(~((arr >= 0.0) & (arr <= 1.0))):
        raise DomainError("dilog is only implemented on [0, 1]")
    zeta2 = zeta_constants().zeta2
    direct = arr <= 0.5
    w = np.where(direct, arr, 1.0 - arr)
    series = _dilog_series_array(w)
    with np.errstate(divide="ignore", invalid="ignore"):
        reflected = zeta2 - np.log(arr) * np.log(w) - series
    result = np.where(direct, series, reflected)
    return np.where(arr == 1.0, zeta2, result)
