"""
Custom exceptions for the Gaussian Q-function library.
"""

from typing import Optional


class GaussQError(Exception):
    """Base exception for the library."""

    pass


class DomainError(GaussQError, ValueError):
    """Argument outside the domain of a routine."""

    def __init__(self, argument: str, value: float, message: str):
        self.argument = argument
        self.value = value
        self.message = message
        super().__init__(f"Invalid value {value!r} for '{argument}': {message}")


class CorrelationDomainError(DomainError):
    """Correlation coefficient with |rho| >= 1."""

    def __init__(self, rho: float):
        super().__init__(
            "rho",
            rho,
            "|rho| must be < 1; the (1 - rho^2) denominators are singular at rho = +/-1",
        )


class ConvergenceError(GaussQError):
    """Adaptive quadrature exhausted its subdivision budget."""

    def __init__(
        self,
        routine: str,
        estimate: float,
        error_bound: float,
        subdivisions: int,
    ):
        self.routine = routine
        self.estimate = estimate
        self.error_bound = error_bound
        self.subdivisions = subdivisions
        super().__init__(
            f"{routine} did not converge after {subdivisions} subdivisions: "
            f"best estimate {estimate!r}, error bound {error_bound:.3e}"
        )


class SweepGridError(GaussQError, ValueError):
    """Sweep grid specification is not usable."""

    def __init__(self, field: str, message: str):
        self.field = field
        self.message = message
        super().__init__(f"Invalid sweep grid field '{field}': {message}")


class OutputError(GaussQError):
    """Result file could not be written."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"Cannot write output to {path}: {message}")


class ValidationFailedError(GaussQError):
    """A built-in invariant suite failed."""

    def __init__(self, suite: str, detail: Optional[str] = None):
        self.suite = suite
        self.detail = detail
        message = f"Validation suite '{suite}' failed"
        if detail:
            message += f": {detail}"
        super().__init__(message)
