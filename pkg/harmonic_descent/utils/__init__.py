from .tables import CSV_DIGITS, format_value, write_csv
from .stats import (
    proportion_estimate,
    mean_estimate,
    total_variation,
    pmf_from_counts,
)
