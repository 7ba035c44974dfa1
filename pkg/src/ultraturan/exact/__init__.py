"""Exact rational polynomials and positivity certificates."""
from .certificate import INCONCLUSIVE, PROVED, REFUTED, Certificate, Interval, certify_nonnegative, interval
from .checker import check_certificate
from .mpoly import MPoly
from .targets import (
    certify_bound_comparison,
    certify_ratio_inequality,
    comparison_exact,
    comparison_polynomials,
    ratio_inequality_difference,
)
from .textformat import dumps, loads
