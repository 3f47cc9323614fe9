"""
Scalar special functions.

The one-dimensional Gaussian Q-function, the upper incomplete gamma function
at half-integer order, the completing-the-square Gaussian tail kernel and log
factorials. Everything here is a pure function of its arguments.
"""

import math

import numpy as np
from scipy import special

from ..constants import SQRT_PI
from ..exceptions import DomainError
from ..schemas import HalfIntOrder, TailKernelParams

_SQRT2 = math.sqrt(2.0)
_LOG_MAX = math.log(np.finfo(float).max)


def q1(x: float) -> float:
    """
    Gaussian Q-function, Q(x) = erfc(x / sqrt(2)) / 2.

    Raises:
        DomainError: x is not finite
    """
    if not math.isfinite(x):
        raise DomainError("x", x, "Q(x) needs a finite argument")
    return 0.5 * float(special.erfc(x / _SQRT2))


def upper_gamma_half(s: HalfIntOrder, x: float) -> float:
    """
    Upper incomplete gamma function Gamma(s, x) for half-integer s.

    Built by upward recurrence Gamma(s+1, x) = s Gamma(s, x) + x^s e^{-x}
    from Gamma(1/2, x) = sqrt(pi) erfc(sqrt(x)) or Gamma(1, x) = e^{-x}.
    Overflows to inf beyond s ~ 171; use log_upper_gamma_half there.

    Raises:
        DomainError: x < 0
    """
    _check_gamma_argument(x)
    if s.twice_s % 2:
        twice, value = 1, SQRT_PI * float(special.erfc(math.sqrt(x)))
    else:
        twice, value = 2, math.exp(-x)

    log_x = math.log(x) if x > 0.0 else -math.inf
    while twice < s.twice_s:
        order = twice / 2.0
        # x^s e^{-x} as one exponential; the factors alone overflow at large x
        log_power = order * log_x - x
        power = math.exp(log_power) if log_power < _LOG_MAX else math.inf
        value = order * value + power
        twice += 2
    return value


def regularized_upper_gamma_half(s: HalfIntOrder, x: float) -> float:
    """Gamma(s, x) / Gamma(s) for half-integer s."""
    return float(_regularized_table(s.twice_s, x)[s.twice_s])


def log_upper_gamma_half(s: HalfIntOrder, x: float) -> float:
    """Natural log of Gamma(s, x); finite for every order the series needs."""
    return float(log_upper_gamma_half_table(s.twice_s, x)[s.twice_s])


def log_upper_gamma_half_table(max_twice_s: int, x: float) -> np.ndarray:
    """
    ln Gamma(s, x) for every s = twice_s / 2 up to max_twice_s / 2.

    Index i of the returned array holds the value for twice_s = i; index 0 is nan.
    The regularised recurrence Q(s+1, x) = Q(s, x) + x^s e^{-x} / Gamma(s+1)
    only adds positive terms, so it stays accurate where Gamma(s, x) itself
    would overflow.
    """
    regularized = _regularized_table(max_twice_s, x)
    orders = np.arange(max_twice_s + 1) / 2.0
    with np.errstate(divide="ignore", invalid="ignore"):
        table = special.gammaln(orders) + np.log(regularized)
    table[0] = np.nan
    return table


def _regularized_table(max_twice_s: int, x: float) -> np.ndarray:
    _check_gamma_argument(x)
    if max_twice_s < 1:
        raise DomainError("twice_s", max_twice_s, "order must be >= 1/2")

    table = np.full(max_twice_s + 1, np.nan)
    if x == 0.0:
        table[1:] = 1.0
        return table

    log_x = math.log(x)
    for start, base in ((1, float(special.erfc(math.sqrt(x)))), (2, math.exp(-x))):
        value = base
        for twice in range(start, max_twice_s + 1, 2):
            if twice > start:
                order = (twice - 2) / 2.0
                value += math.exp(order * log_x - x - special.gammaln(order + 1.0))
            table[twice] = value
    return table


def _check_gamma_argument(x: float) -> None:
    if not x >= 0.0:
        raise DomainError("x", x, "Gamma(s, x) is evaluated for x >= 0 only")


def gauss_tail_kernel(p: TailKernelParams) -> float:
    """
    Closed form of the integral of exp(-alpha v^2 + beta v) over [lower, inf).

    Completing the square gives
    sqrt(pi/alpha) exp(beta^2 / (4 alpha)) Q((2 alpha lower - beta) / sqrt(2 alpha)).
    """
    if not p.alpha > 0:
        raise DomainError("alpha", p.alpha, "the integral diverges for alpha <= 0")
    root = math.sqrt(2.0 * p.alpha)
    argument = (2.0 * p.alpha * p.lower - p.beta) / root
    return (
        math.sqrt(math.pi / p.alpha)
        * math.exp(p.beta * p.beta / (4.0 * p.alpha))
        * q1(argument)
    )


_EXACT_FACTORIAL_LIMIT = 20


def log_factorial(n: int) -> float:
    """ln(n!), from the exact integer factorial up to n = 20."""
    if n < 0:
        raise DomainError("n", n, "factorial of a negative integer")
    if n <= _EXACT_FACTORIAL_LIMIT:
        return math.log(math.factorial(n))
    return float(special.gammaln(n + 1))


def log_factorials(n_max: int) -> np.ndarray:
    """ln(n!) for n = 0 .. n_max, consistent with log_factorial."""
    table = special.gammaln(np.arange(n_max + 1, dtype=float) + 1.0)
    for n in range(min(n_max, _EXACT_FACTORIAL_LIMIT) + 1):
        table[n] = log_factorial(n)
    return table

