"""Output format providers."""

from ..constants import OutputFormat
from ..protocols import ReportFormatter
from .csv_provider import CSVFormatter
from .human_provider import HumanFormatter
from .json_provider import JSONFormatter


def get_formatter(fmt: OutputFormat) -> ReportFormatter:
    """Formatter for an output format."""
    formatters = {
        OutputFormat.CSV: CSVFormatter,
        OutputFormat.JSON: JSONFormatter,
        OutputFormat.HUMAN: HumanFormatter,
    }
    return formatters[OutputFormat(fmt)]()


__all__ = [
    "CSVFormatter",
    "JSONFormatter",
    "HumanFormatter",
    "get_formatter",
]
