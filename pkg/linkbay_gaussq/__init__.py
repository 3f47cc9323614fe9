"""
LinkBay GaussQ - two-dimensional Gaussian Q-function library.

Reference quadrature, the exact incomplete-gamma series and closed-form
exponential approximations of Q(x, y; rho), with accuracy sweeps and a
command-line interface.
"""

__version__ = "0.1.0"

# Constants and enums
from .constants import (
    EvalMethod,
    ExitCode,
    Method,
    OracleSelector,
    OutputFormat,
    RecordFlag,
)

# Exceptions
from .exceptions import (
    GaussQError,
    DomainError,
    CorrelationDomainError,
    ConvergenceError,
    SweepGridError,
    OutputError,
    ValidationFailedError,
)

# Protocols
from .protocols import (
    Q1Function,
    ReferenceProvider,
    ReportFormatter,
)

# Schemas
from .schemas import (
    # Special functions
    HalfIntOrder,
    TailKernelParams,
    # Oracle
    EvalPoint,
    QuadratureSpec,
    QuadratureResult,
    # Series
    SeriesSpec,
    SeriesResult,
    SeriesProfileRow,
    # Approximations
    FirstFormConstants,
    SecondFormConstants,
    # Analysis
    ErrorRecord,
    SweepGrid,
    SweepSummary,
    SweepResult,
    ClaimCheck,
    # CLI
    MethodValue,
    SuiteResult,
    ValidationReport,
)

# Services
from .services import (
    AccuracyAnalyzer,
    AdaptiveQuadrature,
    ReferenceOracle,
    SeriesEvaluator,
    ValidationRunner,
    error_metrics,
    first_form_constants,
    gauss_tail_kernel,
    log_factorial,
    log_upper_gamma_half,
    orthant_probability,
    q1,
    q1_approx_3exp,
    q1_approx_exp,
    q2_approx_first,
    q2_approx_second,
    q2_product,
    regularized_upper_gamma_half,
    second_form_constants,
    second_form_terms,
    series_convergence_profile,
    upper_gamma_half,
)

# Providers
from .providers import (
    CSVFormatter,
    JSONFormatter,
    HumanFormatter,
    get_formatter,
)

__all__ = [
    # Version
    "__version__",
    # Constants
    "EvalMethod",
    "ExitCode",
    "Method",
    "OracleSelector",
    "OutputFormat",
    "RecordFlag",
    # Exceptions
    "GaussQError",
    "DomainError",
    "CorrelationDomainError",
    "ConvergenceError",
    "SweepGridError",
    "OutputError",
    "ValidationFailedError",
    # Protocols
    "Q1Function",
    "ReferenceProvider",
    "ReportFormatter",
    # Schemas
    "HalfIntOrder",
    "TailKernelParams",
    "EvalPoint",
    "QuadratureSpec",
    "QuadratureResult",
    "SeriesSpec",
    "SeriesResult",
    "SeriesProfileRow",
    "FirstFormConstants",
    "SecondFormConstants",
    "ErrorRecord",
    "SweepGrid",
    "SweepSummary",
    "SweepResult",
    "ClaimCheck",
    "MethodValue",
    "SuiteResult",
    "ValidationReport",
    # Services
    "AccuracyAnalyzer",
    "AdaptiveQuadrature",
    "ReferenceOracle",
    "SeriesEvaluator",
    "ValidationRunner",
    "error_metrics",
    "first_form_constants",
    "gauss_tail_kernel",
    "log_factorial",
    "log_upper_gamma_half",
    "orthant_probability",
    "q1",
    "q1_approx_3exp",
    "q1_approx_exp",
    "q2_approx_first",
    "q2_approx_second",
    "q2_product",
    "regularized_upper_gamma_half",
    "second_form_constants",
    "second_form_terms",
    "series_convergence_profile",
    "upper_gamma_half",
    # Providers
    "CSVFormatter",
    "JSONFormatter",
    "HumanFormatter",
    "get_formatter",
]
