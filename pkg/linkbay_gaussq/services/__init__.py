"""Services for the Gaussian Q-function library."""

from .analysis import AccuracyAnalyzer, error_metrics, summarize
from .approx import (
    first_form_constants,
    q1_approx_3exp,
    q1_approx_exp,
    q2_approx_first,
    q2_approx_second,
    second_form_constants,
    second_form_terms,
)
from .oracle import ReferenceOracle, craig_upper_limit, orthant_probability, q2_product
from .quadrature import AdaptiveQuadrature
from .series import SeriesEvaluator, series_convergence_profile
from .special import (
    gauss_tail_kernel,
    log_factorial,
    log_upper_gamma_half,
    q1,
    regularized_upper_gamma_half,
    upper_gamma_half,
)
from .validation import ValidationRunner, ensure_passed

__all__ = [
    "AccuracyAnalyzer",
    "error_metrics",
    "summarize",
    "first_form_constants",
    "q1_approx_3exp",
    "q1_approx_exp",
    "q2_approx_first",
    "q2_approx_second",
    "second_form_constants",
    "second_form_terms",
    "ReferenceOracle",
    "craig_upper_limit",
    "orthant_probability",
    "q2_product",
    "AdaptiveQuadrature",
    "SeriesEvaluator",
    "series_convergence_profile",
    "gauss_tail_kernel",
    "log_factorial",
    "log_upper_gamma_half",
    "q1",
    "regularized_upper_gamma_half",
    "upper_gamma_half",
    "ValidationRunner",
    "ensure_passed",
]
