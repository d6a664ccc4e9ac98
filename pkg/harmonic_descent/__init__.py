try:
    from ._version import __version__
except ImportError:  # running from a source tree that was never built
    __version__ = "0+unknown"
from .exceptions import (
    HarmonicDescentError,
    DomainError,
    ConvergenceError,
    VerificationError,
)
from . import numerics, chain, renewal, composition
