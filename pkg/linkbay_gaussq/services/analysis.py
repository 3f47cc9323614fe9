"""
Accuracy analysis of the series and closed-form approximations.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..constants import (
    ALMOST_ALL_PERCENTILE,
    FIRST_FORM_MAX_REL_ERR,
    ONE_DIMENSIONAL_METHODS,
    REFERENCE_UNDERFLOW,
    TAIL_THRESHOLD,
    Method,
    OracleSelector,
    SECOND_FORM_P95_REL_ERR,
    RecordFlag,
)
from ..exceptions import ConvergenceError, DomainError, SweepGridError
from ..protocols import ReferenceProvider
from ..schemas import (
    ClaimCheck,
    ErrorRecord,
    EvalPoint,
    SweepGrid,
    SweepResult,
    SweepSummary,
)
from .approx import q1_approx_3exp, q1_approx_exp, q2_approx_first, q2_approx_second
from .oracle import ReferenceOracle
from .series import SeriesEvaluator
from .special import q1

logger = logging.getLogger(__name__)


def error_metrics(reference: float, approx: float) -> Tuple[float, Optional[float]]:
    """
    Absolute and absolute relative error of an approximation.

    The relative error is None (not applicable) when |reference| is below
    REFERENCE_UNDERFLOW, zero included.
    """
    abs_err = abs(reference - approx)
    if abs(reference) < REFERENCE_UNDERFLOW:
        return abs_err, None
    return abs_err, abs_err / abs(reference)


class AccuracyAnalyzer:
    """
    Service for comparing approximations against reference values.

    Supports:
    - Two-dimensional grid sweeps with per-method summaries
    - Separate summaries for the tail region
    - One-dimensional error profiles of the exponential Q models
    """

    def __init__(
        self,
        oracle: Optional[ReferenceProvider] = None,
        series: Optional[SeriesEvaluator] = None,
        max_workers: Optional[int] = None,
    ):
        """
        Initialize analyzer.

        Args:
            oracle: Reference value provider
            series: Series evaluator used for the series method
            max_workers: Thread pool size for sweeps; None or 1 runs serially
        """
        self.oracle = oracle or ReferenceOracle()
        self.series = series or SeriesEvaluator()
        self.max_workers = max_workers

    def sweep(
        self,
        grid: SweepGrid,
        methods: Sequence[Method],
        reference: OracleSelector = OracleSelector.AUTO,
    ) -> SweepResult:
        """
        Evaluate every method at every grid point against the reference.

        Records come out x-major, then y, then rho, then in the order of
        `methods`, whether or not points were evaluated concurrently.

        Example:
            ```python
            analyzer = AccuracyAnalyzer()
            grid = SweepGrid(y_max=1.25, y_steps=6)
            result = analyzer.sweep(grid, [Method.FIRST_FORM])
            result.summary_for(Method.FIRST_FORM).max_rel_err  # < 0.05
            ```
        """
        for method in methods:
            if method in ONE_DIMENSIONAL_METHODS:
                raise DomainError("method", method.value, "sweeps take 2D methods")
        if not methods:
            raise SweepGridError("methods", "at least one method is required")

        points = grid.points()

        def evaluate(point: EvalPoint) -> List[ErrorRecord]:
            return self._point_records(point, methods, reference)

        if self.max_workers and self.max_workers > 1:
            with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
                per_point = list(executor.map(evaluate, points))
        else:
            per_point = [evaluate(point) for point in points]

        records = [record for group in per_point for record in group]
        excluded = [record for record in records if record.excluded]
        if excluded:
            logger.warning(
                "%d of %d records excluded from summaries", len(excluded), len(records)
            )

        core = [r for r in records if RecordFlag.TAIL not in r.flags]
        tail = [r for r in records if RecordFlag.TAIL in r.flags]
        summaries = [summarize(core, method, grid, "core") for method in methods]
        tail_summaries = (
            [summarize(tail, method, grid, "tail") for method in methods] if tail else []
        )

        return SweepResult(
            grid=grid,
            reference=reference,
            records=records,
            summaries=summaries,
            tail_summaries=tail_summaries,
            excluded=excluded,
            claims=accuracy_claims(grid, summaries),
        )

    def q1_error_profile(
        self, x_min: float, x_max: float, steps: int
    ) -> List[ErrorRecord]:
        """
        Errors of both one-dimensional models against the exact Q.

        Raises:
            SweepGridError: steps < 2 or x_min >= x_max
        """
        if steps < 2:
            raise SweepGridError("steps", "an error profile needs at least 2 points")
        if not x_min < x_max:
            raise SweepGridError("x_min", "must be < x_max")

        models: Dict[Method, Callable[[float], float]] = {
            Method.Q1_EXP: q1_approx_exp,
            Method.Q1_3EXP: q1_approx_3exp,
        }
        records = []
        for x in np.linspace(x_min, x_max, steps):
            x = float(x)
            exact = q1(x)
            for method, model in models.items():
                approx = model(x)
                abs_err, rel_err = error_metrics(exact, approx)
                flags = []
                if x < 0.0:
                    flags.append(RecordFlag.OUT_OF_DOMAIN)
                if x > TAIL_THRESHOLD:
                    flags.append(RecordFlag.TAIL)
                if rel_err is None:
                    flags.append(RecordFlag.REFERENCE_UNDERFLOW)
                records.append(
                    ErrorRecord(
                        x=x,
                        method=method,
                        reference=exact,
                        approx=approx,
                        abs_err=abs_err,
                        abs_rel_err=rel_err,
                        flags=sorted(flags),
                    )
                )
        return records

    def _point_records(
        self,
        point: EvalPoint,
        methods: Sequence[Method],
        selector: OracleSelector,
    ) -> List[ErrorRecord]:
        base_flags = []
        try:
            reference = self.oracle.evaluate(point, selector)
        except ConvergenceError as e:
            logger.warning("Reference did not converge at %s: %s", point.label(), e)
            reference = e.estimate
            base_flags.append(RecordFlag.ORACLE_UNCONVERGED)
        if point.x > TAIL_THRESHOLD or point.y > TAIL_THRESHOLD:
            base_flags.append(RecordFlag.TAIL)

        records = []
        for method in methods:
            flags = list(base_flags)
            if method == Method.SERIES:
                outcome = self.series.q2_series(point)
                approx = outcome.value
                if not outcome.converged:
                    flags.append(RecordFlag.SERIES_UNCONVERGED)
            else:
                if point.x < 0.0 or point.y < 0.0:
                    flags.append(RecordFlag.OUT_OF_DOMAIN)
                if method == Method.FIRST_FORM:
                    approx = q2_approx_first(point)
                else:
                    approx = q2_approx_second(point)

            abs_err, rel_err = error_metrics(reference, approx)
            if rel_err is None:
                flags.append(RecordFlag.REFERENCE_UNDERFLOW)
            records.append(
                ErrorRecord(
                    x=point.x,
                    y=point.y,
                    rho=point.rho,
                    method=method,
                    reference=reference,
                    approx=approx,
                    abs_err=abs_err,
                    abs_rel_err=rel_err,
                    flags=sorted(flags),
                )
            )
        return records


def summarize(
    records: Sequence[ErrorRecord],
    method: Method,
    grid: SweepGrid,
    region: str = "core",
) -> SweepSummary:
    """Order statistics of one method's included records."""
    own = [r for r in records if r.method == method]
    included = [r for r in own if not r.excluded]
    n_excluded = len(own) - len(included)
    if not included:
        return SweepSummary(
            method=method, grid=grid, region=region, n_points=0, n_excluded=n_excluded
        )

    rel = np.array([r.abs_rel_err for r in included], dtype=float)
    worst = included[int(np.argmax(rel))]
    return SweepSummary(
        method=method,
        grid=grid,
        region=region,
        max_abs_err=max(r.abs_err for r in included),
        max_rel_err=float(np.max(rel)),
        median_rel_err=float(np.median(rel)),
        p95_rel_err=float(np.percentile(rel, ALMOST_ALL_PERCENTILE)),
        worst_point=worst.point,
        n_points=len(included),
        n_excluded=n_excluded,
    )


# Published accuracy statements, all made at rho = 0
ACCURACY_CLAIMS = (
    (Method.FIRST_FORM, "max_rel_err", FIRST_FORM_MAX_REL_ERR),
    (Method.SECOND_FORM, "p95_rel_err", SECOND_FORM_P95_REL_ERR),
)


def accuracy_claims(
    grid: SweepGrid, summaries: Sequence[SweepSummary]
) -> List[ClaimCheck]:
    """
    Measure the published accuracy statements against core summaries.

    Only grids with rho = 0 throughout are checked. A claim is reported, never
    enforced; on the default grid both fail because the one-dimensional models
    lose accuracy towards y = 3.
    """
    if any(rho != 0.0 for rho in grid.rho_values):
        return []
    checks = []
    for method, statistic, threshold in ACCURACY_CLAIMS:
        for summary in summaries:
            if summary.method != method or not summary.n_points:
                continue
            measured = getattr(summary, statistic)
            holds = measured is not None and measured < threshold
            if not holds:
                logger.warning(
                    "%s %s = %.4g does not meet the claimed %.2g",
                    method.value,
                    statistic,
                    measured,
                    threshold,
                )
            checks.append(
                ClaimCheck(
                    method=method,
                    statistic=statistic,
                    threshold=threshold,
                    measured=measured,
                    holds=holds,
                )
            )
    return checks
