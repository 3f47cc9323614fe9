"""
Plain-text output provider for terminals.
"""

from typing import Dict, List, Optional, Sequence

from ..constants import CSV_COLUMNS, HUMAN_DIGITS, NOT_APPLICABLE
from ..schemas import (
    ErrorRecord,
    EvalPoint,
    MethodValue,
    SeriesProfileRow,
    SweepResult,
    SweepSummary,
    ValidationReport,
)
from .csv_provider import SUMMARY_COLUMNS, pairwise_deltas, record_row, summary_row


def human_number(value: Optional[float]) -> str:
    if value is None:
        return NOT_APPLICABLE
    return f"{value:.{HUMAN_DIGITS}g}"


def _table(columns: Sequence[str], rows: List[List[str]]) -> str:
    widths = [len(column) for column in columns]
    for row in rows:
        widths = [max(width, len(cell)) for width, cell in zip(widths, row)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


class HumanFormatter:
    """Aligned tables at 10 significant digits."""

    def format_eval(
        self,
        point: EvalPoint,
        values: List[MethodValue],
        header: Dict[str, str],
    ) -> str:
        text = self._header(header) + f"Q{point.label()}\n\n"
        rows = [
            [
                value.route,
                human_number(value.value),
                "yes" if value.converged else "NO",
                value.detail or "",
            ]
            for value in values
        ]
        text += _table(("route", "value", "converged", "detail"), rows)
        if len(values) > 1:
            deltas = [
                [a, b, human_number(delta)] for a, b, delta in pairwise_deltas(values)
            ]
            text += "\n" + _table(("route_a", "route_b", "delta"), deltas)
        return text

    def format_sweep(self, result: SweepResult, header: Dict[str, str]) -> str:
        text = self._header(header)
        text += self.format_records(result.records, {})
        text += "\nSummary\n" + self._summaries(result.summaries)
        if result.tail_summaries:
            text += "\nTail summary\n" + self._summaries(result.tail_summaries)
        if result.claims:
            rows = [
                [
                    claim.method.value,
                    claim.statistic,
                    human_number(claim.threshold),
                    human_number(claim.measured),
                    "yes" if claim.holds else "NO",
                ]
                for claim in result.claims
            ]
            text += "\nAccuracy claims at rho = 0\n" + _table(
                ("method", "statistic", "threshold", "measured", "holds"), rows
            )
        text += f"\nExcluded records: {len(result.excluded)}\n"
        return text

    def format_records(self, records: List[ErrorRecord], header: Dict[str, str]) -> str:
        rows = [record_row(record, number=human_number) for record in records]
        return self._header(header) + _table(CSV_COLUMNS, rows)

    def format_series_profile(
        self,
        rows: List[SeriesProfileRow],
        header: Dict[str, str],
    ) -> str:
        table = [
            [
                row.point.label(),
                str(row.outer_terms_used),
                "yes" if row.converged else "NO",
                human_number(row.value),
            ]
            for row in rows
        ]
        return self._header(header) + _table(
            ("point", "outer_terms_used", "converged", "value"), table
        )

    def format_validation(
        self,
        report: ValidationReport,
        header: Dict[str, str],
    ) -> str:
        rows = [
            [
                suite.name,
                "PASS" if suite.passed else "FAIL",
                human_number(suite.worst_error),
                human_number(suite.tolerance),
                suite.worst_point or "",
            ]
            for suite in report.suites
        ]
        text = self._header(header) + _table(
            ("suite", "result", "worst_error", "tolerance", "worst_point"), rows
        )
        verdict = "all suites passed" if report.passed else (
            f"{len(report.failures)} suite(s) failed"
        )
        return text + f"\n{verdict}\n"

    @staticmethod
    def _summaries(summaries: Sequence[SweepSummary]) -> str:
        rows = [summary_row(summary, number=human_number) for summary in summaries]
        return _table(SUMMARY_COLUMNS, rows)

    @staticmethod
    def _header(header: Dict[str, str]) -> str:
        if not header:
            return ""
        width = max(len(key) for key in header)
        lines = [f"{key.ljust(width)} : {value}" for key, value in header.items()]
        return "\n".join(lines) + "\n\n"
