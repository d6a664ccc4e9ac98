from .structures import (
    Composition,
    OccupancyTrajectory,
    ExponentialSample,
    TruncatedSubordinatorPath,
)
from .occupancy import (
    gp_weight,
    gp_decrement_prob,
    sample_composition,
    occupancy_chain,
    occupancy_hit_probability_exact,
    chain_equivalence_check,
)
from .subordinator import (
    DEFAULT_EPSILON,
    FirstBlockComparison,
    simulate_subordinator,
    sample_exponential,
    balls_in_boxes,
    first_block_distribution,
    compare_first_blocks,
)
