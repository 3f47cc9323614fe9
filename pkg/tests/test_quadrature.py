"""Tests for the adaptive Gauss-Kronrod integrator."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from linkbay_gaussq import AdaptiveQuadrature, ConvergenceError, QuadratureSpec


def test_gaussian_integral():
    quad = AdaptiveQuadrature(QuadratureSpec(rel_tol=1e-12))
    result = quad.integrate(lambda v: np.exp(-v * v), -8.0, 8.0, panels=8)
    assert result.value == pytest.approx(math.sqrt(math.pi), rel=1e-12)
    assert result.error <= 1e-12 * result.value


def test_low_degree_polynomial_needs_one_panel():
    result = AdaptiveQuadrature().integrate(lambda v: v**5, 0.0, 1.0)
    assert result.value == pytest.approx(1.0 / 6.0, rel=1e-14)
    assert result.subdivisions == 1
    assert result.evaluations == 15


def test_refines_until_tolerance():
    quad = AdaptiveQuadrature(QuadratureSpec(rel_tol=1e-10))
    result = quad.integrate(np.sqrt, 0.0, 1.0)
    assert result.value == pytest.approx(2.0 / 3.0, rel=1e-9)
    assert result.subdivisions > 1


@pytest.mark.parametrize("a, b", [(1.0, 1.0), (2.0, 1.0)])
def test_empty_interval_is_zero(a, b):
    result = AdaptiveQuadrature().integrate(np.exp, a, b)
    assert result.value == 0.0
    assert result.evaluations == 0


def test_budget_exhaustion_reports_best_estimate():
    spec = QuadratureSpec(rel_tol=1e-14, abs_tol=1e-300, max_subdivisions=2)
    quad = AdaptiveQuadrature(spec)
    with pytest.raises(ConvergenceError) as info:
        quad.integrate(lambda v: np.sign(v - 1.0 / 3.0), 0.0, 1.0, routine="step")
    error = info.value
    assert error.routine == "step"
    assert error.subdivisions == 2
    assert error.error_bound > 0.0
    assert error.estimate == pytest.approx(1.0 / 3.0, abs=0.1)


def test_tolerance_floor_enforced():
    with pytest.raises(ValidationError):
        QuadratureSpec(rel_tol=1e-15)


def test_budget_must_be_positive():
    with pytest.raises(ValidationError):
        QuadratureSpec(max_subdivisions=0)
