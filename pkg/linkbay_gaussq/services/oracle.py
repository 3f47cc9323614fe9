"""
Reference evaluations of Q(x, y; rho) by independent quadrature routes.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy import special

from ..constants import SQRT_2PI, TRUNCATION_SIGMAS, OracleSelector
from ..exceptions import CorrelationDomainError, DomainError
from ..schemas import EvalPoint, QuadratureSpec
from .quadrature import AdaptiveQuadrature
from .special import q1

logger = logging.getLogger(__name__)

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


def q2_product(x: float, y: float) -> float:
    """Q(x) Q(y), the exact value of Q(x, y; 0)."""
    return q1(x) * q1(y)


def orthant_probability(rho: float) -> float:
    """P(U > 0, V > 0) = 1/4 + arcsin(rho) / (2 pi)."""
    if not abs(rho) < 1.0:
        raise CorrelationDomainError(rho)
    return 0.25 + math.asin(rho) / (2.0 * math.pi)


def craig_upper_limit(first: float, second: float, rho: float) -> float:
    """
    Upper angle of the Craig integral whose exponent carries `first`.

    The printed arctangent of sqrt(1 - rho^2) (first/second) / (1 - rho first/second)
    changes sign once rho first/second > 1, while the integration angle keeps
    growing through pi/2; the angle is therefore shifted by pi whenever the
    denominator is negative.
    """
    ratio = first / second
    numerator = math.sqrt(1.0 - rho * rho) * ratio
    denominator = 1.0 - rho * ratio
    if denominator > 0.0:
        return math.atan(numerator / denominator)
    if denominator < 0.0:
        return math.atan(numerator / denominator) + math.pi
    return 0.5 * math.pi


class ReferenceOracle:
    """
    High-accuracy reference values of the two-dimensional Q-function.

    Supports:
    - Single semi-infinite integral of Q against the Gaussian density (primary)
    - Direct two-dimensional integral of the joint density
    - Craig form, general and x = y
    - Product identity at rho = 0
    """

    def __init__(self, spec: Optional[QuadratureSpec] = None):
        """
        Initialize oracle.

        Args:
            spec: Quadrature tolerances shared by every route
        """
        self.spec = spec or QuadratureSpec()
        self.quadrature = AdaptiveQuadrature(self.spec)

    def q2_reduced(self, p: EvalPoint) -> float:
        """
        Q(x, y; rho) = (1/sqrt(2 pi)) int_x^inf e^{-v^2/2} Q((y - rho v)/sqrt(1 - rho^2)) dv.

        Raises:
            ConvergenceError: subdivision budget exhausted
        """
        scale = math.sqrt(1.0 - p.rho * p.rho)
        lower, upper = _gaussian_limits(p.x)

        def integrand(v: np.ndarray) -> np.ndarray:
            inner = 0.5 * special.erfc((p.y - p.rho * v) / scale * _INV_SQRT2)
            return np.exp(-0.5 * v * v) / SQRT_2PI * inner

        result = self.quadrature.integrate(
            integrand,
            lower,
            upper,
            panels=_panel_count(upper - lower, 1.0),
            routine="q2_reduced",
        )
        return _clamp_probability(result.value)

    def q2_double(self, p: EvalPoint) -> float:
        """
        Direct quadrature of the defining double integral over the joint density.

        The inner limits follow the conditional law of the second variable,
        N(rho v, 1 - rho^2), cut TRUNCATION_SIGMAS deviations from its mean.

        Raises:
            ConvergenceError: subdivision budget exhausted
        """
        rho = p.rho
        scale = math.sqrt(1.0 - rho * rho)
        norm = 1.0 / (2.0 * math.pi * scale)
        two_var = 2.0 * scale * scale
        lower, upper = _gaussian_limits(p.x)

        def inner_integral(v: float) -> float:
            lo = max(p.y, rho * v - TRUNCATION_SIGMAS * scale)
            hi = rho * v + TRUNCATION_SIGMAS * scale

            def density(u: np.ndarray) -> np.ndarray:
                return norm * np.exp(-(u * u + v * v - 2.0 * rho * u * v) / two_var)

            return self.quadrature.integrate(
                density,
                lo,
                hi,
                panels=_panel_count(hi - lo, 2.0 * scale),
                routine="q2_double (inner)",
            ).value

        def outer(v: np.ndarray) -> np.ndarray:
            return np.array([inner_integral(float(node)) for node in v])

        result = self.quadrature.integrate(
            outer,
            lower,
            upper,
            panels=_panel_count(upper - lower, 1.0),
            routine="q2_double",
        )
        return _clamp_probability(result.value)

    def q2_craig(self, p: EvalPoint) -> float:
        """
        Sum of the two finite-range Craig integrals.

        Raises:
            DomainError: x <= 0 or y <= 0
            ConvergenceError: subdivision budget exhausted
        """
        for name, value in (("x", p.x), ("y", p.y)):
            if not value > 0.0:
                raise DomainError(name, value, "the Craig form needs x > 0 and y > 0")

        first = self._craig_integral(p.x, craig_upper_limit(p.x, p.y, p.rho))
        second = self._craig_integral(p.y, craig_upper_limit(p.y, p.x, p.rho))
        return _clamp_probability((first + second) / (2.0 * math.pi))

    def q2_craig_equal(self, x: float, rho: float) -> float:
        """
        Craig form at x = y, a single integral up to atan(sqrt((1 + rho)/(1 - rho))).

        Raises:
            DomainError: x <= 0 or |rho| >= 1
            ConvergenceError: subdivision budget exhausted
        """
        if not x > 0.0:
            raise DomainError("x", x, "the Craig form needs x > 0")
        if not abs(rho) < 1.0:
            raise CorrelationDomainError(rho)
        angle = math.atan(math.sqrt((1.0 + rho) / (1.0 - rho)))
        return _clamp_probability(self._craig_integral(x, angle) / math.pi)

    def q2_product(self, x: float, y: float) -> float:
        return q2_product(x, y)

    def evaluate(
        self,
        p: EvalPoint,
        selector: OracleSelector = OracleSelector.AUTO,
    ) -> float:
        """
        Reference value by the selected route.

        AUTO takes the product identity at rho = 0 and the reduced integral
        otherwise; CRAIG falls back to the reduced integral unless x, y > 0.
        """
        if selector == OracleSelector.AUTO:
            selector = (
                OracleSelector.PRODUCT if p.rho == 0.0 else OracleSelector.REDUCED
            )
        if selector == OracleSelector.PRODUCT:
            if p.rho != 0.0:
                logger.warning(
                    "Product reference requested at rho=%g; it is exact only at rho=0",
                    p.rho,
                )
            return q2_product(p.x, p.y)
        if selector == OracleSelector.DOUBLE:
            return self.q2_double(p)
        if selector == OracleSelector.CRAIG and p.x > 0.0 and p.y > 0.0:
            return self.q2_craig(p)
        return self.q2_reduced(p)

    def _craig_integral(self, argument: float, angle: float) -> float:
        half_square = 0.5 * argument * argument

        def integrand(phi: np.ndarray) -> np.ndarray:
            sine = np.sin(phi)
            return np.exp(-half_square / (sine * sine))

        return self.quadrature.integrate(
            integrand,
            0.0,
            angle,
            panels=_panel_count(angle, math.pi / 8.0),
            routine="q2_craig",
        ).value


def _gaussian_limits(x: float) -> Tuple[float, float]:
    # Standard normal mass outside [-T, T] is far below every tolerance
    return max(x, -TRUNCATION_SIGMAS), max(x, 0.0) + TRUNCATION_SIGMAS


def _panel_count(width: float, panel_width: float) -> int:
    return max(1, int(math.ceil(width / panel_width)))


def _clamp_probability(value: float) -> float:
    return min(1.0, max(0.0, value))
