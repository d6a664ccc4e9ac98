from __future__ import annotations
import typing as ty


class HarmonicDescentError(Exception):
    "Base class for all errors raised by the package"


class DomainError(HarmonicDescentError, ValueError):
    "An argument lies outside the domain of the requested operation"


class ConvergenceError(HarmonicDescentError, ArithmeticError):
    """A numerical procedure stopped before meeting its tolerance

    Parameters
    ----------
    msg : str
        description of the failure
    best_estimate : float
        the value reached when the procedure gave up
    error_estimate : float, optional
        the procedure's own estimate of the absolute error of ``best_estimate``
    """

    def __init__(
        self,
        msg: str,
        best_estimate: float,
        error_estimate: ty.Optional[float] = None,
    ):
        super().__init__(msg)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate


class VerificationError(HarmonicDescentError):
    "One or more checks of an invariant suite failed"

    def __init__(self, msg: str, failed: ty.Sequence[str]):
        super().__init__(msg)
        self.failed = list(failed)
