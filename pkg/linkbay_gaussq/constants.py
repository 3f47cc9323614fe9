"""
Constants and enums for the Gaussian Q-function library.
"""

import math
from enum import Enum, IntEnum


class Method(str, Enum):
    """Evaluation routes compared against a reference."""

    SERIES = "series"
    FIRST_FORM = "first_form"
    SECOND_FORM = "second_form"
    Q1_EXP = "q1_exp"  # one-dimensional, single exponential
    Q1_3EXP = "q1_3exp"  # one-dimensional, three exponentials


TWO_DIMENSIONAL_METHODS = (Method.SERIES, Method.FIRST_FORM, Method.SECOND_FORM)
ONE_DIMENSIONAL_METHODS = (Method.Q1_EXP, Method.Q1_3EXP)


class OracleSelector(str, Enum):
    """Reference routes for Q(x, y; rho)."""

    AUTO = "auto"  # product at rho = 0, reduced otherwise
    PRODUCT = "product"
    REDUCED = "reduced"
    DOUBLE = "double"
    CRAIG = "craig"


class EvalMethod(str, Enum):
    """Routes selectable by the eval command."""

    ORACLE = "oracle"
    SERIES = "series"
    FIRST = "first"
    SECOND = "second"
    ALL = "all"


class OutputFormat(str, Enum):
    """Output formats of the command-line interface."""

    CSV = "csv"
    JSON = "json"
    HUMAN = "human"


class RecordFlag(str, Enum):
    """Annotations attached to an error record."""

    OUT_OF_DOMAIN = "out_of_domain"  # negative argument of a 1D approximation
    ORACLE_UNCONVERGED = "oracle_unconverged"
    SERIES_UNCONVERGED = "series_unconverged"
    REFERENCE_UNDERFLOW = "reference_underflow"  # relative error not applicable
    TAIL = "tail"  # x or y beyond TAIL_THRESHOLD


# Records carrying any of these are left out of summary statistics
EXCLUDING_FLAGS = frozenset(
    {RecordFlag.ORACLE_UNCONVERGED, RecordFlag.SERIES_UNCONVERGED}
)


class ExitCode(IntEnum):
    """Stable process exit codes."""

    OK = 0
    VALIDATION_FAILED = 1
    USAGE = 2
    NON_CONVERGENCE = 3
    IO = 4


# Single-exponential model: Q(x) ~ 0.49 exp(-8x/13) exp(-x^2/2)
EXP_WEIGHT = 0.49
EXP_LINEAR_NUM = 8.0
EXP_LINEAR_DEN = 13.0

# Three-exponential model: Q(x) ~ sum of w * exp(-kappa x^2), as (w, kappa)
THREE_EXP_TERMS = (
    (0.208, 0.876),
    (0.13, 0.525),
    (0.14, 7.25),
)

SQRT_PI = math.sqrt(math.pi)
SQRT_2PI = math.sqrt(2.0 * math.pi)
LOG_2 = math.log(2.0)

# Quadrature defaults
DEFAULT_REL_TOL = 1e-10
DEFAULT_ABS_TOL = 1e-12
DEFAULT_MAX_SUBDIVISIONS = 2000
MIN_REL_TOL = 1e-14

# Semi-infinite limits are cut this many standard deviations past the mass
TRUNCATION_SIGMAS = 10.0

# Series defaults
DEFAULT_SERIES_REL_TOL = 1e-12
DEFAULT_CONSECUTIVE_SMALL = 3
DEFAULT_L_MAX = 200
MAX_L_MAX = 300

# Sweep defaults
DEFAULT_GRID_MIN = 0.0
DEFAULT_GRID_MAX = 3.0
DEFAULT_GRID_STEPS = 13
DEFAULT_RHO_VALUES = (0.0,)
TAIL_THRESHOLD = 5.0
REFERENCE_UNDERFLOW = 1e-300
ALMOST_ALL_PERCENTILE = 95.0

# Accuracy thresholds of the closed forms at rho = 0
FIRST_FORM_MAX_REL_ERR = 0.05
SECOND_FORM_P95_REL_ERR = 0.04

# Output precision (significant digits)
HUMAN_DIGITS = 10
MACHINE_DIGITS = 17

CSV_COLUMNS = (
    "x",
    "y",
    "rho",
    "method",
    "reference",
    "value",
    "abs_err",
    "rel_err",
    "flags",
)

NOT_APPLICABLE = "n/a"
