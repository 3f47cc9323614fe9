"""
Pydantic schemas for the Gaussian Q-function library.

Domain types for evaluation points, numerical specs, series diagnostics,
approximation constants, accuracy records and validation reports.
"""

from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .constants import (
    DEFAULT_ABS_TOL,
    DEFAULT_CONSECUTIVE_SMALL,
    DEFAULT_GRID_MAX,
    DEFAULT_GRID_MIN,
    DEFAULT_GRID_STEPS,
    DEFAULT_L_MAX,
    DEFAULT_MAX_SUBDIVISIONS,
    DEFAULT_REL_TOL,
    DEFAULT_RHO_VALUES,
    DEFAULT_SERIES_REL_TOL,
    EXCLUDING_FLAGS,
    MAX_L_MAX,
    MIN_REL_TOL,
    Method,
    OracleSelector,
    RecordFlag,
)
from .exceptions import CorrelationDomainError, SweepGridError


def _check_rho(rho: float) -> float:
    if not abs(rho) < 1.0:
        raise CorrelationDomainError(rho)
    return rho


# Scalar special functions

class HalfIntOrder(BaseModel):
    """Half-integer order s = twice_s / 2 of the incomplete gamma function."""

    model_config = ConfigDict(frozen=True)

    twice_s: int = Field(ge=1)

    @property
    def value(self) -> float:
        return self.twice_s / 2.0

    @classmethod
    def from_series_indices(cls, l: int, k: int) -> "HalfIntOrder":  # noqa: E741
        """Order 1 + l - k/2 of the (l, k) series term."""
        return cls(twice_s=2 * (1 + l) - k)


class TailKernelParams(BaseModel):
    """Shape of the integral of exp(-alpha v^2 + beta v) over [lower, inf)."""

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={"example": {"alpha": 0.8, "beta": 0.3, "lower": 0.5}},
    )

    alpha: float = Field(gt=0, allow_inf_nan=False)
    beta: float = Field(allow_inf_nan=False)
    lower: float = Field(allow_inf_nan=False)


# Oracle

class EvalPoint(BaseModel):
    """An (x, y, rho) triple at which Q(x, y; rho) is requested."""

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={"example": {"x": 1.0, "y": 2.0, "rho": 0.5}},
    )

    x: float = Field(allow_inf_nan=False)
    y: float = Field(allow_inf_nan=False)
    rho: float = Field(allow_inf_nan=False)

    @field_validator("rho")
    @classmethod
    def rho_inside_unit_interval(cls, v: float) -> float:
        return _check_rho(v)

    def swapped(self) -> "EvalPoint":
        """Same correlation with x and y exchanged."""
        return EvalPoint(x=self.y, y=self.x, rho=self.rho)

    def label(self) -> str:
        return f"(x={self.x:g}, y={self.y:g}, rho={self.rho:g})"


class QuadratureSpec(BaseModel):
    """Tolerances and subdivision budget of the adaptive quadrature."""

    model_config = ConfigDict(frozen=True)

    rel_tol: float = Field(default=DEFAULT_REL_TOL, ge=MIN_REL_TOL)
    abs_tol: float = Field(default=DEFAULT_ABS_TOL, gt=0)
    max_subdivisions: int = Field(default=DEFAULT_MAX_SUBDIVISIONS, gt=0)


class QuadratureResult(BaseModel):
    """Outcome of one adaptive integration."""

    model_config = ConfigDict(frozen=True)

    value: float
    error: float = Field(ge=0)
    evaluations: int = Field(ge=0)
    subdivisions: int = Field(ge=0)


# Series

class SeriesSpec(BaseModel):
    """Truncation policy of the exact series."""

    model_config = ConfigDict(frozen=True)

    rel_tol: float = Field(default=DEFAULT_SERIES_REL_TOL, gt=0)
    consecutive_small: int = Field(default=DEFAULT_CONSECUTIVE_SMALL, ge=1)
    l_max: int = Field(default=DEFAULT_L_MAX, ge=1, le=MAX_L_MAX)
    # Test hook: when False, rho = 0 is summed instead of using Q(x)Q(y)
    short_circuit_product: bool = True


class SeriesResult(BaseModel):
    """Value and convergence diagnostics of the exact series."""

    model_config = ConfigDict(frozen=True)

    value: float
    outer_terms_used: int = Field(ge=0)
    converged: bool
    last_term_magnitude: float = Field(ge=0)
    reflected: bool = False  # evaluated via Q(y) - Q(-x, y; -rho)


class SeriesProfileRow(BaseModel):
    """Term count of the series at one point."""

    model_config = ConfigDict(frozen=True)

    point: EvalPoint
    outer_terms_used: int
    converged: bool
    value: float


# Approximations

class FirstFormConstants(BaseModel):
    """Constants A and B of the single-exponential closed form."""

    model_config = ConfigDict(frozen=True)

    A: float = Field(ge=1.0)
    B: float


class SecondFormConstants(BaseModel):
    """Constants of the three-exponential closed form, paired (a, b), (c, d), (f, g)."""

    model_config = ConfigDict(frozen=True)

    a: float = Field(ge=0.5)
    b: float
    c: float = Field(ge=0.5)
    d: float
    f: float = Field(ge=0.5)
    g: float

    def pairs(self) -> Tuple[Tuple[float, float], ...]:
        """Exponent and linear constants in the order of the three terms."""
        return ((self.a, self.b), (self.c, self.d), (self.f, self.g))


# Analysis

class ErrorRecord(BaseModel):
    """One method-vs-reference comparison."""

    model_config = ConfigDict(frozen=True)

    x: float
    y: Optional[float] = None  # None for one-dimensional records
    rho: Optional[float] = None
    method: Method
    reference: float
    approx: float
    abs_err: float = Field(ge=0)
    abs_rel_err: Optional[float] = Field(default=None, ge=0)  # None: not applicable
    flags: List[RecordFlag] = Field(default_factory=list)

    @property
    def point(self) -> Optional[EvalPoint]:
        if self.y is None or self.rho is None:
            return None
        return EvalPoint(x=self.x, y=self.y, rho=self.rho)

    @property
    def excluded(self) -> bool:
        """Left out of summary statistics."""
        if self.abs_rel_err is None:
            return True
        return bool(set(self.flags) & EXCLUDING_FLAGS)


class SweepGrid(BaseModel):
    """Cartesian evaluation grid, traversed x-major, then y, then rho."""

    model_config = ConfigDict(frozen=True)

    x_min: float = Field(default=DEFAULT_GRID_MIN, allow_inf_nan=False)
    x_max: float = Field(default=DEFAULT_GRID_MAX, allow_inf_nan=False)
    x_steps: int = Field(default=DEFAULT_GRID_STEPS, ge=1)
    y_min: float = Field(default=DEFAULT_GRID_MIN, allow_inf_nan=False)
    y_max: float = Field(default=DEFAULT_GRID_MAX, allow_inf_nan=False)
    y_steps: int = Field(default=DEFAULT_GRID_STEPS, ge=1)
    rho_values: List[float] = Field(
        default_factory=lambda: list(DEFAULT_RHO_VALUES), min_length=1
    )

    @field_validator("rho_values")
    @classmethod
    def rho_values_inside_unit_interval(cls, v: List[float]) -> List[float]:
        for rho in v:
            _check_rho(rho)
        return v

    @model_validator(mode="after")
    def axes_are_ordered(self) -> "SweepGrid":
        for axis in ("x", "y"):
            lo = getattr(self, f"{axis}_min")
            hi = getattr(self, f"{axis}_max")
            steps = getattr(self, f"{axis}_steps")
            # A single-step axis is a single point
            if steps == 1 and lo != hi:
                raise SweepGridError(
                    f"{axis}_steps", f"a single step requires {axis}_min == {axis}_max"
                )
            if steps >= 2 and not lo < hi:
                raise SweepGridError(f"{axis}_min", f"must be < {axis}_max")
        return self

    def x_values(self) -> List[float]:
        return [float(v) for v in np.linspace(self.x_min, self.x_max, self.x_steps)]

    def y_values(self) -> List[float]:
        return [float(v) for v in np.linspace(self.y_min, self.y_max, self.y_steps)]

    def points(self) -> List[EvalPoint]:
        return [
            EvalPoint(x=x, y=y, rho=rho)
            for x in self.x_values()
            for y in self.y_values()
            for rho in self.rho_values
        ]

    @property
    def size(self) -> int:
        return self.x_steps * self.y_steps * len(self.rho_values)


class SweepSummary(BaseModel):
    """Aggregate accuracy of one method over a grid."""

    model_config = ConfigDict(frozen=True)

    method: Method
    grid: SweepGrid
    region: str = "core"  # "core" or "tail"
    max_abs_err: Optional[float] = None
    max_rel_err: Optional[float] = None
    median_rel_err: Optional[float] = None
    p95_rel_err: Optional[float] = None
    worst_point: Optional[EvalPoint] = None
    n_points: int = Field(ge=0)
    n_excluded: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def order_statistics_are_monotone(self) -> "SweepSummary":
        stats = (self.max_rel_err, self.p95_rel_err, self.median_rel_err)
        if self.n_points and None in stats:
            raise ValueError("non-empty summary needs max, p95 and median")
        if self.n_points and not stats[0] >= stats[1] >= stats[2] >= 0:
            raise ValueError("expected max >= p95 >= median >= 0")
        return self


class ClaimCheck(BaseModel):
    """A published accuracy statement measured on a rho = 0 grid."""

    model_config = ConfigDict(frozen=True)

    method: Method
    statistic: str  # "max_rel_err" or "p95_rel_err"
    threshold: float
    measured: Optional[float] = None
    holds: bool


class SweepResult(BaseModel):
    """Records plus per-method summaries of one sweep."""

    grid: SweepGrid
    reference: OracleSelector
    records: List[ErrorRecord]
    summaries: List[SweepSummary]
    tail_summaries: List[SweepSummary] = Field(default_factory=list)
    excluded: List[ErrorRecord] = Field(default_factory=list)
    claims: List[ClaimCheck] = Field(default_factory=list)

    def summary_for(self, method: Method) -> SweepSummary:
        for summary in self.summaries:
            if summary.method == method:
                return summary
        raise KeyError(method)


# CLI

class MethodValue(BaseModel):
    """One route's value for the eval command."""

    model_config = ConfigDict(frozen=True)

    route: str
    value: float
    converged: bool = True
    detail: Optional[str] = None


class SuiteResult(BaseModel):
    """Outcome of one built-in invariant suite."""

    name: str
    passed: bool
    tolerance: float
    worst_error: float = 0.0
    worst_point: Optional[str] = None
    checked: int = 0
    note: Optional[str] = None


class ValidationReport(BaseModel):
    """All invariant suites of one validate run."""

    passed: bool
    suites: List[SuiteResult]
    q1_perturbation: float = 0.0

    @property
    def failures(self) -> List[SuiteResult]:
        return [suite for suite in self.suites if not suite.passed]

