"""
Exact infinite series of Q(x, y; rho) in incomplete gamma functions.

Q(x, y; rho) = Q(x)/2 - (1/pi) sum_l sum_{k=0}^{2l+1} T(l, k), with

    T(l, k) = (-1)^(3l+1-k) (2l)! y^k rho^(2l+1-k) Gamma(1 + l - k/2, x^2/2)
              / (l! k! (1 - rho^2)^(l+1/2) (2l+1-k)! 2^(1+k/2))

Each term is assembled in log space and exponentiated once; the sign is
carried separately.
"""

import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..constants import LOG_2
from ..exceptions import DomainError
from ..schemas import EvalPoint, HalfIntOrder, SeriesProfileRow, SeriesResult, SeriesSpec
from .special import log_factorials, log_upper_gamma_half_table, q1

logger = logging.getLogger(__name__)

_LOG_MAX = math.log(np.finfo(float).max)


class SeriesEvaluator:
    """
    Truncated evaluation of the exact series with convergence diagnostics.

    Summation stops once the largest term of `consecutive_small` successive
    outer groups is below rel_tol times the running value, or at l_max.
    Terms grow without bound for |rho| >= 1/sqrt(2); those points end with
    converged = False and report l_max + 1 outer terms.
    """

    def __init__(self, spec: Optional[SeriesSpec] = None):
        """
        Initialize series evaluator.

        Args:
            spec: Truncation policy
        """
        self.spec = spec or SeriesSpec()
        self._log_factorials = log_factorials(2 * self.spec.l_max + 2)

    def q2_series(self, p: EvalPoint) -> SeriesResult:
        """
        Evaluate Q(x, y; rho) by the series.

        rho = 0 short-circuits to Q(x) Q(y) with zero outer terms. A negative
        x is evaluated through Q(x, y; rho) = Q(y) - Q(-x, y; -rho) and flagged
        as reflected.

        Example:
            ```python
            evaluator = SeriesEvaluator(SeriesSpec(rel_tol=1e-12))
            result = evaluator.q2_series(EvalPoint(x=1.0, y=1.0, rho=0.3))
            if not result.converged:
                ...
            ```
        """
        if p.rho == 0.0 and self.spec.short_circuit_product:
            return SeriesResult(
                value=q1(p.x) * q1(p.y),
                outer_terms_used=0,
                converged=True,
                last_term_magnitude=0.0,
            )

        if p.x < 0.0:
            logger.debug("Reflecting %s to a non-negative first argument", p.label())
            mirrored = self._sum(-p.x, p.y, -p.rho)
            value = q1(p.y) - mirrored.value
            return mirrored.model_copy(update={"value": value, "reflected": True})

        return self._sum(p.x, p.y, p.rho)

    def series_term(self, l: int, k: int, p: EvalPoint) -> float:  # noqa: E741
        """
        Signed term T(l, k) at a point with x >= 0.

        Raises:
            DomainError: indices outside 0 <= k <= 2l + 1 or x < 0
        """
        if l < 0 or not 0 <= k <= 2 * l + 1:
            raise DomainError("k", k, "series indices need 0 <= k <= 2l + 1")
        if p.x < 0.0:
            raise DomainError("x", p.x, "terms are defined for x >= 0")
        order = HalfIntOrder.from_series_indices(l, k)
        log_gamma = log_upper_gamma_half_table(order.twice_s, 0.5 * p.x * p.x)
        log_fact = log_factorials(2 * l + 1)
        return self._term(l, k, p.y, p.rho, log_gamma, log_fact)

    def _sum(self, x: float, y: float, rho: float) -> SeriesResult:
        spec = self.spec
        log_gamma = log_upper_gamma_half_table(2 * spec.l_max + 2, 0.5 * x * x)
        head = 0.5 * q1(x)

        groups: List[float] = []
        small_run = 0
        value = head
        largest = 0.0
        converged = False
        overflowed = False
        for l in range(spec.l_max + 1):  # noqa: E741
            terms = [
                self._term(l, k, y, rho, log_gamma, self._log_factorials)
                for k in self._k_range(l, y, rho)
            ]
            try:
                group = math.fsum(terms)
                total = math.fsum(groups + [group])
            except (OverflowError, ValueError):
                total = math.inf
            if not all(map(math.isfinite, terms)) or not math.isfinite(total):
                logger.warning(
                    "Series term group %d is not finite at (x=%g, y=%g, rho=%g)",
                    l,
                    x,
                    y,
                    rho,
                )
                overflowed = True
                largest = math.inf
                break
            groups.append(group)
            value = head - total / math.pi

            # Terms within a group cancel; judge the group by its largest term
            largest = max((abs(term) for term in terms), default=0.0) / math.pi
            if largest <= spec.rel_tol * abs(value):
                small_run += 1
                if small_run >= spec.consecutive_small:
                    converged = True
                    break
            else:
                small_run = 0

        if not converged:
            logger.warning(
                "Series did not converge within l_max=%d at (x=%g, y=%g, rho=%g)",
                spec.l_max,
                x,
                y,
                rho,
            )
        return SeriesResult(
            value=value,
            outer_terms_used=spec.l_max + 1 if overflowed else len(groups),
            converged=converged,
            last_term_magnitude=largest,
        )

    @staticmethod
    def _k_range(l: int, y: float, rho: float) -> Sequence[int]:  # noqa: E741
        top = 2 * l + 1
        if rho == 0.0:
            # Only rho^0 survives
            return (top,) if y != 0.0 else ()
        if y == 0.0:
            return (0,)
        return range(top + 1)

    @staticmethod
    def _term(
        l: int,  # noqa: E741
        k: int,
        y: float,
        rho: float,
        log_gamma: np.ndarray,
        log_fact: np.ndarray,
    ) -> float:
        power_rho = 2 * l + 1 - k
        log_magnitude = (
            log_fact[2 * l]
            + log_gamma[2 * (1 + l) - k]
            - log_fact[l]
            - log_fact[k]
            - (l + 0.5) * math.log1p(-rho * rho)
            - log_fact[power_rho]
            - (1.0 + 0.5 * k) * LOG_2
        )
        if k:
            log_magnitude += k * math.log(abs(y))
        if power_rho:
            log_magnitude += power_rho * math.log(abs(rho))

        negative = (3 * l + 1 - k) % 2 == 1
        if y < 0.0 and k % 2:
            negative = not negative
        if rho < 0.0 and power_rho % 2:
            negative = not negative
        magnitude = math.exp(log_magnitude) if log_magnitude < _LOG_MAX else math.inf
        return -magnitude if negative else magnitude

    def convergence_profile(
        self, points: Sequence[EvalPoint]
    ) -> List[SeriesProfileRow]:
        """Outer term counts per point at the evaluator's tolerance."""
        rows = []
        for point in points:
            result = self.q2_series(point)
            rows.append(
                SeriesProfileRow(
                    point=point,
                    outer_terms_used=result.outer_terms_used,
                    converged=result.converged,
                    value=result.value,
                )
            )
        return rows


def series_convergence_profile(
    points: Sequence[EvalPoint], spec: Optional[SeriesSpec] = None
) -> List[Tuple[EvalPoint, int, bool]]:
    """(point, outer_terms_used, converged) for each point."""
    return [
        (row.point, row.outer_terms_used, row.converged)
        for row in SeriesEvaluator(spec).convergence_profile(points)
    ]
