"""
Protocol definitions for the Gaussian Q-function library.

Services depend on these contracts rather than on concrete classes, so a
reference route or an output format can be swapped without touching them.
"""

from typing import Dict, List, Protocol

from .constants import OracleSelector
from .schemas import (
    ErrorRecord,
    EvalPoint,
    MethodValue,
    SeriesProfileRow,
    SweepResult,
    ValidationReport,
)


class Q1Function(Protocol):
    """One-dimensional Gaussian Q-function, Q(x) = P(U > x)."""

    def __call__(self, x: float) -> float:
        ...


class ReferenceProvider(Protocol):
    """
    Protocol for reference values of Q(x, y; rho).

    Implemented by ReferenceOracle; tests substitute a provider that fails
    at chosen points.
    """

    def evaluate(
        self,
        p: EvalPoint,
        selector: OracleSelector = OracleSelector.AUTO,
    ) -> float:
        """
        Reference value at a point.

        Args:
            p: Evaluation point
            selector: Quadrature route

        Returns:
            Q(x, y; rho)

        Raises:
            ConvergenceError: the route did not reach its tolerance
        """
        ...


class ReportFormatter(Protocol):
    """
    Protocol for rendering command results.

    `header` carries the effective configuration of the run, printed ahead
    of the data so every output is self-describing.
    """

    def format_eval(
        self,
        point: EvalPoint,
        values: List[MethodValue],
        header: Dict[str, str],
    ) -> str:
        """
        Render the routes of one eval run.

        With more than one route the output also carries pairwise deltas.
        """
        ...

    def format_sweep(self, result: SweepResult, header: Dict[str, str]) -> str:
        """Render sweep records followed by the summary block."""
        ...

    def format_records(self, records: List[ErrorRecord], header: Dict[str, str]) -> str:
        """Render error records without summaries."""
        ...

    def format_series_profile(
        self,
        rows: List[SeriesProfileRow],
        header: Dict[str, str],
    ) -> str:
        """Render outer term counts per point."""
        ...

    def format_validation(
        self,
        report: ValidationReport,
        header: Dict[str, str],
    ) -> str:
        """Render the pass/fail report of the invariant suites."""
        ...
