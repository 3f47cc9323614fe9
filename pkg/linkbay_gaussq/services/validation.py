"""
Built-in invariant suites behind the validate command.
"""

import logging
import math
from typing import Callable, Dict, Iterable, List, Optional, Sequence

import numpy as np

from ..constants import TRUNCATION_SIGMAS
from ..exceptions import ValidationFailedError
from ..protocols import Q1Function
from ..schemas import (
    EvalPoint,
    HalfIntOrder,
    SeriesSpec,
    SuiteResult,
    TailKernelParams,
    ValidationReport,
)
from .approx import (
    first_form_kernel_value,
    q1_approx_3exp,
    q1_approx_exp,
    q2_approx_first,
    q2_approx_second,
    second_form_kernel_terms,
    second_form_terms,
)
from .oracle import ReferenceOracle, orthant_probability
from .quadrature import AdaptiveQuadrature
from .series import SeriesEvaluator
from .special import gauss_tail_kernel, log_upper_gamma_half, q1, upper_gamma_half

logger = logging.getLogger(__name__)

CROSS_AGREEMENT_VALUES = tuple(0.25 * i for i in range(1, 13))
CROSS_AGREEMENT_RHOS = (-0.9, -0.5, 0.0, 0.5, 0.9)
DESK_VALUES = (0.25, 0.5, 1.0, 1.5, 2.0)
DESK_RHOS = (-0.6, -0.3, 0.3, 0.6)
RHO_LADDER = tuple(0.1 * i for i in range(1, 10))
Y_LADDER = (0.5, 1.0, 2.0)
FIDELITY_POINTS = 1000
FIDELITY_SEED = 20240601


class _Worst:
    """Running maximum of an error measure and where it occurred."""

    def __init__(self, name: str, tolerance: float):
        self.name = name
        self.tolerance = tolerance
        self.error = 0.0
        self.where: Optional[str] = None
        self.checked = 0

    def observe(self, error: float, where: str) -> None:
        self.checked += 1
        if not math.isfinite(error):
            error = math.inf
        if self.where is None or error > self.error:
            self.error = error
            self.where = where

    def result(self, note: Optional[str] = None) -> SuiteResult:
        return SuiteResult(
            name=self.name,
            passed=self.error <= self.tolerance,
            tolerance=self.tolerance,
            worst_error=self.error,
            worst_point=self.where,
            checked=self.checked,
            note=note,
        )


# Subnormal results carry few significant bits; below this, compare absolutely
RELATIVE_FLOOR = 1e-280


def _relative(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), RELATIVE_FLOOR)


class ValidationRunner:
    """
    Runs the invariant suites and collects a pass/fail report.

    Suites that compare against an exact identity take the one-dimensional Q
    through `q1_fn`, so a deliberately perturbed Q must make them fail.
    """

    def __init__(
        self,
        q1_fn: Optional[Q1Function] = None,
        oracle: Optional[ReferenceOracle] = None,
        series: Optional[SeriesEvaluator] = None,
        q1_perturbation: float = 0.0,
    ):
        """
        Initialize validation runner.

        Args:
            q1_fn: One-dimensional Q used by the identity suites
            oracle: Reference oracle
            series: Series evaluator
            q1_perturbation: Offset already applied to q1_fn, reported only
        """
        self.q1 = q1_fn or q1
        self.oracle = oracle or ReferenceOracle()
        self.series = series or SeriesEvaluator()
        self.q1_perturbation = q1_perturbation
        self.quadrature = AdaptiveQuadrature(self.oracle.spec)

    @classmethod
    def with_perturbed_q1(cls, epsilon: float) -> "ValidationRunner":
        """Runner whose Q(x) is offset by epsilon; every run must then fail."""

        def perturbed(x: float) -> float:
            return q1(x) + epsilon

        return cls(q1_fn=perturbed, q1_perturbation=epsilon)

    def suites(self) -> Dict[str, Callable[[], SuiteResult]]:
        return {
            "q1_reflection": self.check_q1_reflection,
            "gamma_recurrence": self.check_gamma_recurrence,
            "kernel_vs_quadrature": self.check_kernel_vs_quadrature,
            "oracle_cross_agreement": self.check_oracle_cross_agreement,
            "symmetry": self.check_symmetry,
            "rho0_identity": self.check_rho0_identity,
            "orthant_probability": self.check_orthant_probability,
            "first_form_factorization": self.check_first_form_factorization,
            "second_form_factorization": self.check_second_form_factorization,
            "derivation_fidelity": self.check_derivation_fidelity,
            "series_collapse": self.check_series_collapse,
            "series_oracle_agreement": self.check_series_oracle_agreement,
            "series_cost_trend": self.check_series_cost_trend,
        }

    def run(self, names: Optional[Sequence[str]] = None) -> ValidationReport:
        """
        Run the named suites, or all of them.

        Raises:
            KeyError: unknown suite name
        """
        available = self.suites()
        selected = list(names) if names else list(available)
        results = []
        for name in selected:
            logger.debug("Running validation suite %s", name)
            result = available[name]()
            if not result.passed:
                logger.warning(
                    "Suite %s failed: worst error %.3e at %s (tolerance %.1e)",
                    name,
                    result.worst_error,
                    result.worst_point,
                    result.tolerance,
                )
            results.append(result)
        return ValidationReport(
            passed=all(result.passed for result in results),
            suites=results,
            q1_perturbation=self.q1_perturbation,
        )

    # Scalar special functions

    def check_q1_reflection(self) -> SuiteResult:
        worst = _Worst("q1_reflection", 1e-14)
        for x in np.linspace(0.0, 6.0, 25):
            x = float(x)
            worst.observe(abs(self.q1(x) + self.q1(-x) - 1.0), f"x={x:g}")
        return worst.result("Q(x) + Q(-x) = 1")

    def check_gamma_recurrence(self) -> SuiteResult:
        worst = _Worst("gamma_recurrence", 1e-12)
        for x in (0.1, 1.0, 5.0, 10.0):
            # Gamma(1/2, x) = 2 sqrt(pi) Q(sqrt(2x))
            start = upper_gamma_half(HalfIntOrder(twice_s=1), x)
            worst.observe(
                _relative(start, 2.0 * math.sqrt(math.pi) * self.q1(math.sqrt(2.0 * x))),
                f"s=0.5, x={x:g}",
            )
            for twice_s in range(1, 21):
                s = HalfIntOrder(twice_s=twice_s)
                lhs = math.exp(log_upper_gamma_half(HalfIntOrder(twice_s=twice_s + 2), x))
                rhs = s.value * upper_gamma_half(s, x) + x**s.value * math.exp(-x)
                worst.observe(_relative(lhs, rhs), f"s={s.value:g}, x={x:g}")
        return worst.result("Gamma(s+1, x) = s Gamma(s, x) + x^s e^-x")

    def check_kernel_vs_quadrature(self) -> SuiteResult:
        worst = _Worst("kernel_vs_quadrature", 1e-9)
        for alpha, beta, lower in (
            (0.5, 0.0, 0.0),
            (0.8, 0.3, 0.5),
            (2.0, -1.0, 1.0),
            (5.0, 14.0, 0.25),
            (0.6, 2.0, -1.5),
        ):
            params = TailKernelParams(alpha=alpha, beta=beta, lower=lower)
            center = beta / (2.0 * alpha)
            upper = max(lower, center) + TRUNCATION_SIGMAS / math.sqrt(2.0 * alpha)

            def integrand(v: np.ndarray) -> np.ndarray:
                return np.exp(-alpha * v * v + beta * v)

            numeric = self.quadrature.integrate(
                integrand, lower, upper, panels=8, routine="kernel check"
            ).value
            worst.observe(
                _relative(gauss_tail_kernel(params), numeric),
                f"alpha={alpha:g}, beta={beta:g}, lower={lower:g}",
            )
        return worst.result()

    # Oracle

    def check_oracle_cross_agreement(self) -> SuiteResult:
        worst = _Worst("oracle_cross_agreement", 1e-8)
        for p in _grid(CROSS_AGREEMENT_VALUES, CROSS_AGREEMENT_VALUES, CROSS_AGREEMENT_RHOS):
            reduced = self.oracle.q2_reduced(p)
            worst.observe(
                abs(reduced - self.oracle.q2_craig(p)), f"reduced vs craig {p.label()}"
            )
            worst.observe(
                abs(reduced - self.oracle.q2_double(p)),
                f"reduced vs double {p.label()}",
            )
        return worst.result("reduced, Craig and double integrals agree")

    def check_symmetry(self) -> SuiteResult:
        worst = _Worst("symmetry", 1e-9)
        values = (-1.0, 0.0, 0.5, 2.0)
        for p in _grid(values, values, (-0.7, 0.3, 0.8)):
            worst.observe(
                abs(self.oracle.q2_reduced(p) - self.oracle.q2_reduced(p.swapped())),
                p.label(),
            )
        return worst.result("Q(x, y; rho) = Q(y, x; rho)")

    def check_rho0_identity(self) -> SuiteResult:
        worst = _Worst("rho0_identity", 1e-9)
        values = [float(v) for v in np.linspace(-2.0, 3.0, 11)]
        for p in _grid(values, values, (0.0,)):
            worst.observe(
                abs(self.oracle.q2_reduced(p) - self.q1(p.x) * self.q1(p.y)), p.label()
            )
        return worst.result("Q(x, y; 0) = Q(x) Q(y)")

    def check_orthant_probability(self) -> SuiteResult:
        worst = _Worst("orthant_probability", 1e-9)
        for rho in CROSS_AGREEMENT_RHOS + (-0.99, 0.99):
            p = EvalPoint(x=0.0, y=0.0, rho=rho)
            worst.observe(
                abs(self.oracle.q2_reduced(p) - orthant_probability(rho)), p.label()
            )
        return worst.result("Q(0, 0; rho) = 1/4 + asin(rho) / (2 pi)")

    # Approximations

    def check_first_form_factorization(self) -> SuiteResult:
        worst = _Worst("first_form_factorization", 1e-14)
        values = [float(v) for v in np.linspace(0.0, 4.0, 9)]
        for p in _grid(values, values, (0.0,)):
            worst.observe(
                _relative(q2_approx_first(p), self.q1(p.x) * q1_approx_exp(p.y)),
                p.label(),
            )
        return worst.result()

    def check_second_form_factorization(self) -> SuiteResult:
        worst = _Worst("second_form_factorization", 1e-14)
        values = [float(v) for v in np.linspace(0.0, 4.0, 9)]
        for p in _grid(values, values, (0.0,)):
            worst.observe(
                _relative(q2_approx_second(p), self.q1(p.x) * q1_approx_3exp(p.y)),
                p.label(),
            )
        return worst.result()

    def check_derivation_fidelity(self) -> SuiteResult:
        worst = _Worst("derivation_fidelity", 1e-12)
        for p in fidelity_points(FIDELITY_POINTS, FIDELITY_SEED):
            worst.observe(
                _relative(q2_approx_first(p), first_form_kernel_value(p)),
                f"first form {p.label()}",
            )
            for i, (closed, kernel) in enumerate(
                zip(second_form_terms(p), second_form_kernel_terms(p))
            ):
                worst.observe(_relative(closed, kernel), f"second form term {i} {p.label()}")
        return worst.result(f"{FIDELITY_POINTS} seeded random points")

    # Series

    def check_series_collapse(self) -> SuiteResult:
        worst = _Worst("series_collapse", 1e-8)
        summed = SeriesEvaluator(
            SeriesSpec(
                rel_tol=self.series.spec.rel_tol,
                consecutive_small=self.series.spec.consecutive_small,
                l_max=self.series.spec.l_max,
                short_circuit_product=False,
            )
        )
        for p in _grid(DESK_VALUES, DESK_VALUES, (0.0,)):
            result = summed.q2_series(p)
            error = abs(result.value - self.q1(p.x) * self.q1(p.y))
            worst.observe(error if result.converged else math.inf, p.label())
        return worst.result("series summed at rho = 0 without the product shortcut")

    def check_series_oracle_agreement(self) -> SuiteResult:
        worst = _Worst("series_oracle_agreement", 1e-6)
        unconverged = 0
        for p in _grid(DESK_VALUES, DESK_VALUES, DESK_RHOS):
            result = self.series.q2_series(p)
            if not result.converged:
                unconverged += 1
                continue
            worst.observe(abs(result.value - self.oracle.q2_reduced(p)), p.label())
        return worst.result(f"{unconverged} points did not converge and were skipped")

    def check_series_cost_trend(self) -> SuiteResult:
        worst = _Worst("series_cost_trend", 0.0)
        ladders = (
            ("rho", [EvalPoint(x=1.0, y=1.0, rho=rho) for rho in RHO_LADDER]),
            ("y", [EvalPoint(x=1.0, y=y, rho=0.5) for y in Y_LADDER]),
        )
        for name, points in ladders:
            counts = [row.outer_terms_used for row in self.series.convergence_profile(points)]
            for before, after, p in zip(counts, counts[1:], points[1:]):
                # Any decrease is a failure
                worst.observe(float(max(0, before - after)), f"{name} ladder {p.label()}")
        return worst.result("outer term counts must not decrease along the ladders")


def ensure_passed(report: ValidationReport) -> None:
    """
    Raises:
        ValidationFailedError: for the first failing suite
    """
    for suite in report.failures:
        raise ValidationFailedError(
            suite.name,
            f"worst error {suite.worst_error:.3e} at {suite.worst_point} "
            f"exceeds {suite.tolerance:.1e}",
        )


def fidelity_points(count: int, seed: int) -> List[EvalPoint]:
    """Seeded random points with x, y in [0, 4] and |rho| <= 0.9."""
    rng = np.random.default_rng(seed)
    xs = rng.uniform(0.0, 4.0, count)
    ys = rng.uniform(0.0, 4.0, count)
    rhos = rng.uniform(-0.9, 0.9, count)
    return [
        EvalPoint(x=float(x), y=float(y), rho=float(rho))
        for x, y, rho in zip(xs, ys, rhos)
    ]


def _grid(
    xs: Iterable[float], ys: Iterable[float], rhos: Iterable[float]
) -> List[EvalPoint]:
    ys, rhos = list(ys), list(rhos)
    return [EvalPoint(x=x, y=y, rho=rho) for x in xs for y in ys for rho in rhos]
