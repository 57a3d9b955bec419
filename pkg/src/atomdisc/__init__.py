"""Star-discrepancy of discrete measures and their optimal N-point approximations."""
from .approx import (cumulative_rounding, exact_zero_construction, optimal_value,
                     quantile_construction, worst_prefix)
from .bounds import (Certificate, ScanReport, infinite_case_certificate, irrational_lower_bound,
                     largest_remainder_construction, multidim_lower_bound, rational_lower_bound,
                     scan_irrational)
from .discrepancy import (PointSet, brute_force_optimal, brute_force_optimal_dd,
                          star_discrepancy_1d, star_discrepancy_dd)
from .errors import DiscrepancyError
from .measure import Measure, MeasureDD, RealWeight, cdf, load_measure, parse_measure
from .numtheory import convergents, dist_nearest_int
from .precision import get_precision, set_precision, working_precision

__all__ = [
    "Certificate", "DiscrepancyError", "Measure", "MeasureDD", "PointSet", "RealWeight",
    "ScanReport", "brute_force_optimal", "brute_force_optimal_dd", "cdf", "convergents",
    "cumulative_rounding", "dist_nearest_int", "exact_zero_construction", "get_precision",
    "infinite_case_certificate", "irrational_lower_bound", "largest_remainder_construction",
    "load_measure", "multidim_lower_bound", "optimal_value", "parse_measure",
    "quantile_construction", "rational_lower_bound", "scan_irrational", "set_precision",
    "star_discrepancy_1d", "star_discrepancy_dd", "working_precision", "worst_prefix",
]
