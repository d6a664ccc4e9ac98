from .special import (
    HarmonicTable,
    ZetaConstants,
    harmonic,
    harmonic_table,
    zeta_int,
    zeta_constants,
    dilog,
)
from .quadrature import QuadratureSpec, DEFAULT_QUADRATURE, integrate
from .streams import RngStream, MAX_SEED
