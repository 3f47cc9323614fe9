"""
JSON output provider.
"""

import json
import math
from typing import Any, Dict, List, Optional

from ..constants import CSV_COLUMNS
from ..schemas import (
    ErrorRecord,
    EvalPoint,
    MethodValue,
    SeriesProfileRow,
    SweepResult,
    SweepSummary,
    ValidationReport,
)
from .csv_provider import pairwise_deltas


def _number(value: Optional[float]) -> Any:
    # JSON has no inf or nan; None stands for "not applicable"
    if value is None or math.isfinite(value):
        return value
    return str(value)


def _point(point: Optional[EvalPoint]) -> Optional[Dict[str, float]]:
    if point is None:
        return None
    return {"x": point.x, "y": point.y, "rho": point.rho}


def _record(record: ErrorRecord) -> Dict[str, Any]:
    values = [
        _number(record.x),
        _number(record.y),
        _number(record.rho),
        record.method.value,
        _number(record.reference),
        _number(record.approx),
        _number(record.abs_err),
        _number(record.abs_rel_err),
        [flag.value for flag in record.flags],
    ]
    return dict(zip(CSV_COLUMNS, values))


def _summary(summary: SweepSummary) -> Dict[str, Any]:
    return {
        "method": summary.method.value,
        "region": summary.region,
        "n_points": summary.n_points,
        "n_excluded": summary.n_excluded,
        "max_abs_err": _number(summary.max_abs_err),
        "max_rel_err": _number(summary.max_rel_err),
        "median_rel_err": _number(summary.median_rel_err),
        "p95_rel_err": _number(summary.p95_rel_err),
        "worst_point": _point(summary.worst_point),
    }


class JSONFormatter:
    """
    One JSON document per command, configuration under "config".

    Floats are written by repr, the shortest text that reads back as the same
    double.
    """

    def __init__(self, indent: Optional[int] = 2):
        self.indent = indent

    def format_eval(
        self,
        point: EvalPoint,
        values: List[MethodValue],
        header: Dict[str, str],
    ) -> str:
        document = {
            "config": header,
            "point": _point(point),
            "values": [
                {
                    "route": value.route,
                    "value": _number(value.value),
                    "converged": value.converged,
                    "detail": value.detail,
                }
                for value in values
            ],
            "deltas": [
                {"route_a": a, "route_b": b, "delta": _number(delta)}
                for a, b, delta in pairwise_deltas(values)
            ],
        }
        return self._dump(document)

    def format_sweep(self, result: SweepResult, header: Dict[str, str]) -> str:
        document = {
            "config": header,
            "records": [_record(record) for record in result.records],
            "summaries": [_summary(summary) for summary in result.summaries],
            "tail_summaries": [_summary(summary) for summary in result.tail_summaries],
            "excluded": len(result.excluded),
            "claims": [
                {
                    "method": claim.method.value,
                    "statistic": claim.statistic,
                    "threshold": claim.threshold,
                    "measured": _number(claim.measured),
                    "holds": claim.holds,
                }
                for claim in result.claims
            ],
        }
        return self._dump(document)

    def format_records(self, records: List[ErrorRecord], header: Dict[str, str]) -> str:
        return self._dump(
            {"config": header, "records": [_record(record) for record in records]}
        )

    def format_series_profile(
        self,
        rows: List[SeriesProfileRow],
        header: Dict[str, str],
    ) -> str:
        document = {
            "config": header,
            "rows": [
                {
                    **_point(row.point),
                    "outer_terms_used": row.outer_terms_used,
                    "converged": row.converged,
                    "value": _number(row.value),
                }
                for row in rows
            ],
        }
        return self._dump(document)

    def format_validation(
        self,
        report: ValidationReport,
        header: Dict[str, str],
    ) -> str:
        document = {
            "config": header,
            "passed": report.passed,
            "q1_perturbation": report.q1_perturbation,
            "suites": [
                {
                    **suite.model_dump(),
                    "worst_error": _number(suite.worst_error),
                }
                for suite in report.suites
            ],
        }
        return self._dump(document)

    def _dump(self, document: Dict[str, Any]) -> str:
        return json.dumps(document, indent=self.indent, allow_nan=False) + "\n"
