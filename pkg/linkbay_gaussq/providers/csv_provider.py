"""
CSV output provider.
"""

import csv
import io
import itertools
from typing import Dict, Iterable, List, Optional, Sequence

from ..constants import CSV_COLUMNS, MACHINE_DIGITS, NOT_APPLICABLE
from ..schemas import (
    ErrorRecord,
    EvalPoint,
    MethodValue,
    SeriesProfileRow,
    SweepResult,
    SweepSummary,
    ValidationReport,
)

SUMMARY_COLUMNS = (
    "method",
    "region",
    "n_points",
    "n_excluded",
    "max_abs_err",
    "max_rel_err",
    "median_rel_err",
    "p95_rel_err",
    "worst_x",
    "worst_y",
    "worst_rho",
)


def machine_number(value: Optional[float]) -> str:
    """17 significant digits, enough for float(text) to give back the same double."""
    if value is None:
        return NOT_APPLICABLE
    return f"{value:.{MACHINE_DIGITS}g}"


def record_row(record: ErrorRecord, number=machine_number) -> List[str]:
    """A record as strings in CSV_COLUMNS order."""
    return [
        number(record.x),
        number(record.y),
        number(record.rho),
        record.method.value,
        number(record.reference),
        number(record.approx),
        number(record.abs_err),
        number(record.abs_rel_err),
        "|".join(flag.value for flag in record.flags),
    ]


def summary_row(summary: SweepSummary, number=machine_number) -> List[str]:
    worst = summary.worst_point
    return [
        summary.method.value,
        summary.region,
        str(summary.n_points),
        str(summary.n_excluded),
        number(summary.max_abs_err),
        number(summary.max_rel_err),
        number(summary.median_rel_err),
        number(summary.p95_rel_err),
        number(worst.x if worst else None),
        number(worst.y if worst else None),
        number(worst.rho if worst else None),
    ]


def pairwise_deltas(values: Sequence[MethodValue]) -> List[tuple]:
    """(route_a, route_b, a - b) for every pair of routes in order."""
    return [
        (a.route, b.route, a.value - b.value)
        for a, b in itertools.combinations(values, 2)
    ]


class CSVFormatter:
    """
    Comma-separated output with '#' comment lines.

    The effective configuration comes first as '# key: value' lines, then a
    header row and the data. Summary and delta blocks follow after their own
    comment line.
    """

    def format_eval(
        self,
        point: EvalPoint,
        values: List[MethodValue],
        header: Dict[str, str],
    ) -> str:
        buffer, writer = self._start(header)
        writer.writerow(["x", "y", "rho", "route", "value", "converged", "detail"])
        for value in values:
            writer.writerow(
                [
                    machine_number(point.x),
                    machine_number(point.y),
                    machine_number(point.rho),
                    value.route,
                    machine_number(value.value),
                    str(value.converged).lower(),
                    value.detail or "",
                ]
            )
        if len(values) > 1:
            buffer.write("# deltas\n")
            writer.writerow(["route_a", "route_b", "delta"])
            for a, b, delta in pairwise_deltas(values):
                writer.writerow([a, b, machine_number(delta)])
        return buffer.getvalue()

    def format_sweep(self, result: SweepResult, header: Dict[str, str]) -> str:
        buffer, writer = self._start(header)
        writer.writerow(CSV_COLUMNS)
        writer.writerows(record_row(record) for record in result.records)
        self._summaries(buffer, writer, "summary", result.summaries)
        if result.tail_summaries:
            self._summaries(buffer, writer, "tail summary", result.tail_summaries)
        if result.claims:
            buffer.write("# claims\n")
            writer.writerow(["method", "statistic", "threshold", "measured", "holds"])
            for claim in result.claims:
                writer.writerow(
                    [
                        claim.method.value,
                        claim.statistic,
                        machine_number(claim.threshold),
                        machine_number(claim.measured),
                        str(claim.holds).lower(),
                    ]
                )
        buffer.write(f"# excluded: {len(result.excluded)}\n")
        return buffer.getvalue()

    def format_records(self, records: List[ErrorRecord], header: Dict[str, str]) -> str:
        buffer, writer = self._start(header)
        writer.writerow(CSV_COLUMNS)
        writer.writerows(record_row(record) for record in records)
        return buffer.getvalue()

    def format_series_profile(
        self,
        rows: List[SeriesProfileRow],
        header: Dict[str, str],
    ) -> str:
        buffer, writer = self._start(header)
        writer.writerow(["x", "y", "rho", "outer_terms_used", "converged", "value"])
        for row in rows:
            writer.writerow(
                [
                    machine_number(row.point.x),
                    machine_number(row.point.y),
                    machine_number(row.point.rho),
                    str(row.outer_terms_used),
                    str(row.converged).lower(),
                    machine_number(row.value),
                ]
            )
        return buffer.getvalue()

    def format_validation(
        self,
        report: ValidationReport,
        header: Dict[str, str],
    ) -> str:
        buffer, writer = self._start(header)
        writer.writerow(
            ["suite", "passed", "tolerance", "worst_error", "worst_point", "checked", "note"]
        )
        for suite in report.suites:
            writer.writerow(
                [
                    suite.name,
                    str(suite.passed).lower(),
                    machine_number(suite.tolerance),
                    machine_number(suite.worst_error),
                    suite.worst_point or "",
                    str(suite.checked),
                    suite.note or "",
                ]
            )
        buffer.write(f"# passed: {str(report.passed).lower()}\n")
        return buffer.getvalue()

    @staticmethod
    def _start(header: Dict[str, str]):
        buffer = io.StringIO()
        for key, value in header.items():
            buffer.write(f"# {key}: {value}\n")
        return buffer, csv.writer(buffer, lineterminator="\n")

    @staticmethod
    def _summaries(
        buffer: io.StringIO,
        writer,
        title: str,
        summaries: Iterable[SweepSummary],
    ) -> None:
        buffer.write(f"# {title}\n")
        writer.writerow(SUMMARY_COLUMNS)
        writer.writerows(summary_row(summary) for summary in summaries)
