from .measure import (
    HarmonicLevyMeasure,
    NU,
    nu_density,
    nu_tail,
    nu_tail_quadrature,
    hurwitz_moment,
)
from .chi import (
    ChiDistribution,
    CHI,
    chi_tail,
    chi_tail_quadrature,
    chi_laplace,
    chi_sample,
    laplace_via_measure,
)
from .overshoot import (
    OvershootEstimate,
    overshoot_mc,
    hitting_via_overshoot,
    hitting_via_overshoot_laplace,
)
