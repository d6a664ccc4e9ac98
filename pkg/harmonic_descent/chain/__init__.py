from .kernel import (
    DecrementKernel,
    KERNEL_CACHE_THRESHOLD,
    decrement_pmf,
    decrement_cdf,
    sample_decrement,
)
from .walk import ChainState, Trajectory, step, simulate
from .hitting import (
    HittingQuery,
    ConvergenceRow,
    hit_probability_profile,
    hit_probability_exact,
    hit_probability_mc,
    limit_formula,
    convergence_table,
)
