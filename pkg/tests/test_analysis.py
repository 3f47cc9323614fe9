"""Tests for accuracy sweeps and summaries."""

import numpy as np
import pytest
from pydantic import ValidationError

from linkbay_gaussq import (
    AccuracyAnalyzer,
    ConvergenceError,
    DomainError,
    EvalPoint,
    Method,
    OracleSelector,
    RecordFlag,
    SweepGrid,
    SweepGridError,
    SweepSummary,
    error_metrics,
    q1,
    q1_approx_exp,
)
from linkbay_gaussq.providers import CSVFormatter
from linkbay_gaussq.services.analysis import summarize


class DiagonalFailureOracle:
    """Reference provider that fails to converge wherever x == y."""

    def evaluate(self, p, selector=OracleSelector.AUTO):
        if p.x == p.y:
            raise ConvergenceError("q2_reduced", 0.1, 1e-3, 2000)
        return q1(p.x) * q1(p.y)


class ZeroOracle:
    def evaluate(self, p, selector=OracleSelector.AUTO):
        return 0.0


def origin_grid() -> SweepGrid:
    return SweepGrid(x_min=0.0, x_max=0.0, x_steps=1, y_min=0.0, y_max=0.0, y_steps=1)


class TestErrorMetrics:
    def test_absolute_and_relative(self):
        abs_err, rel_err = error_metrics(0.25, 0.245)
        assert abs_err == pytest.approx(0.005, rel=1e-12)
        assert rel_err == pytest.approx(0.02, rel=1e-12)

    def test_relative_not_applicable_for_zero_reference(self):
        assert error_metrics(0.0, 1e-5) == (1e-5, None)

    def test_relative_not_applicable_below_underflow(self):
        _, rel_err = error_metrics(1e-310, 0.0)
        assert rel_err is None


class TestSweepGrid:
    def test_default_grid(self):
        grid = SweepGrid()
        assert grid.size == 169
        assert grid.x_values()[0] == 0.0
        assert grid.x_values()[-1] == 3.0
        assert grid.x_values()[1] == pytest.approx(0.25)

    def test_traversal_order(self):
        grid = SweepGrid(x_max=1.0, x_steps=2, y_max=1.0, y_steps=2, rho_values=[0.0, 0.5])
        labels = [(p.x, p.y, p.rho) for p in grid.points()]
        assert labels[:3] == [(0.0, 0.0, 0.0), (0.0, 0.0, 0.5), (0.0, 1.0, 0.0)]
        assert len(labels) == grid.size == 8

    def test_single_step_requires_degenerate_axis(self):
        with pytest.raises(ValidationError):
            SweepGrid(x_min=0.0, x_max=1.0, x_steps=1)

    def test_reversed_axis_rejected(self):
        with pytest.raises(ValidationError):
            SweepGrid(y_min=2.0, y_max=1.0)

    def test_correlation_list_checked(self):
        with pytest.raises(ValidationError):
            SweepGrid(rho_values=[0.0, 1.0])

    def test_empty_correlation_list_rejected(self):
        with pytest.raises(ValidationError):
            SweepGrid(rho_values=[])


class TestSweep:
    def test_origin_point(self, analyzer):
        result = analyzer.sweep(origin_grid(), [Method.FIRST_FORM])
        assert len(result.records) == 1
        record = result.records[0]
        assert record.reference == 0.25
        assert record.approx == pytest.approx(0.245, rel=1e-15)
        assert record.abs_rel_err == pytest.approx(0.02, rel=1e-12)
        assert record.flags == []

    def test_claimed_first_form_accuracy_near_origin(self, analyzer):
        grid = SweepGrid(y_max=1.25, y_steps=6)
        result = analyzer.sweep(grid, [Method.FIRST_FORM])
        assert result.summary_for(Method.FIRST_FORM).max_rel_err < 0.05
        assert [claim.holds for claim in result.claims] == [True]

    def test_claimed_second_form_accuracy_on_core_range(self, analyzer):
        grid = SweepGrid(y_min=0.25, y_max=1.0, y_steps=4)
        result = analyzer.sweep(grid, [Method.SECOND_FORM])
        summary = result.summary_for(Method.SECOND_FORM)
        assert summary.p95_rel_err < 0.04
        claim = result.claims[0]
        assert claim.method == Method.SECOND_FORM
        assert claim.statistic == "p95_rel_err"
        assert claim.holds

    def test_default_grid_worst_point_is_far_edge(self, analyzer):
        result = analyzer.sweep(SweepGrid(), [Method.FIRST_FORM, Method.SECOND_FORM])
        first = result.summary_for(Method.FIRST_FORM)
        # At rho = 0 the error in x cancels; only the model of Q(y) is left
        edge_error = abs(q1_approx_exp(3.0) - q1(3.0)) / q1(3.0)
        assert first.max_rel_err == pytest.approx(edge_error, rel=1e-9)
        assert first.worst_point.y == 3.0
        assert first.n_points == 169
        claims = {claim.method: claim for claim in result.claims}
        assert not claims[Method.FIRST_FORM].holds
        assert claims[Method.FIRST_FORM].measured == first.max_rel_err

    def test_summary_matches_records(self, analyzer):
        grid = SweepGrid(x_steps=5, y_steps=5, rho_values=[0.0, 0.4])
        result = analyzer.sweep(grid, [Method.SECOND_FORM])
        rel = np.array([r.abs_rel_err for r in result.records])
        summary = result.summary_for(Method.SECOND_FORM)
        assert summary.max_rel_err == float(np.max(rel))
        assert summary.median_rel_err == float(np.median(rel))
        assert summary.p95_rel_err == float(np.percentile(rel, 95.0))
        assert summary.max_abs_err == max(r.abs_err for r in result.records)
        assert result.claims == []

    def test_product_and_quadrature_references_agree(self, analyzer):
        grid = SweepGrid(x_steps=4, y_steps=4)
        exact = analyzer.sweep(grid, [Method.FIRST_FORM], OracleSelector.PRODUCT)
        numeric = analyzer.sweep(grid, [Method.FIRST_FORM], OracleSelector.REDUCED)
        a = exact.summary_for(Method.FIRST_FORM)
        b = numeric.summary_for(Method.FIRST_FORM)
        for field in ("max_rel_err", "median_rel_err", "p95_rel_err"):
            assert getattr(a, field) == pytest.approx(getattr(b, field), abs=1e-8)

    def test_concurrent_sweep_is_deterministic(self, oracle, series):
        grid = SweepGrid(x_steps=4, y_steps=3, rho_values=[0.0, 0.3])
        methods = [Method.FIRST_FORM, Method.SECOND_FORM]
        serial = AccuracyAnalyzer(oracle, series).sweep(grid, methods)
        threaded = AccuracyAnalyzer(oracle, series, max_workers=4).sweep(grid, methods)
        formatter = CSVFormatter()
        assert formatter.format_sweep(serial, {}) == formatter.format_sweep(threaded, {})

    def test_series_method(self, analyzer):
        grid = SweepGrid(x_max=1.0, x_steps=2, y_max=1.0, y_steps=2, rho_values=[0.3])
        result = analyzer.sweep(grid, [Method.SERIES])
        assert result.summary_for(Method.SERIES).max_abs_err < 1e-6
        assert not result.excluded

    def test_divergent_series_left_out_of_summary(self, analyzer):
        grid = SweepGrid(
            x_min=1.0, x_max=1.0, x_steps=1, y_min=1.0, y_max=1.0, y_steps=1,
            rho_values=[0.3, 0.99],
        )
        result = analyzer.sweep(grid, [Method.SERIES])
        assert [r.rho for r in result.excluded] == [0.99]
        assert RecordFlag.SERIES_UNCONVERGED in result.excluded[0].flags
        summary = result.summary_for(Method.SERIES)
        assert summary.n_points == 1
        assert summary.n_excluded == 1
        assert summary.max_abs_err < 1e-6

    def test_tail_points_summarized_separately(self, analyzer):
        grid = SweepGrid(x_min=0.0, x_max=6.0, x_steps=3, y_min=1.0, y_max=1.0, y_steps=1)
        result = analyzer.sweep(grid, [Method.FIRST_FORM])
        tail = [r for r in result.records if RecordFlag.TAIL in r.flags]
        assert [r.x for r in tail] == [6.0]
        assert result.summary_for(Method.FIRST_FORM).n_points == 2
        assert result.tail_summaries[0].region == "tail"
        assert result.tail_summaries[0].n_points == 1

    def test_no_tail_summary_inside_core(self, analyzer):
        result = analyzer.sweep(origin_grid(), [Method.SECOND_FORM])
        assert result.tail_summaries == []

    def test_unconverged_reference_is_excluded(self, caplog):
        analyzer = AccuracyAnalyzer(oracle=DiagonalFailureOracle())
        grid = SweepGrid(x_max=1.0, x_steps=2, y_max=1.0, y_steps=2)
        result = analyzer.sweep(grid, [Method.FIRST_FORM])
        assert len(result.excluded) == 2
        for record in result.excluded:
            assert RecordFlag.ORACLE_UNCONVERGED in record.flags
            assert record.reference == 0.1
        summary = result.summary_for(Method.FIRST_FORM)
        assert summary.n_points == 2
        assert summary.n_excluded == 2
        assert "excluded from summaries" in caplog.text

    def test_vanishing_reference_is_excluded(self):
        analyzer = AccuracyAnalyzer(oracle=ZeroOracle())
        result = analyzer.sweep(origin_grid(), [Method.FIRST_FORM])
        record = result.records[0]
        assert record.abs_rel_err is None
        assert RecordFlag.REFERENCE_UNDERFLOW in record.flags
        summary = result.summary_for(Method.FIRST_FORM)
        assert summary.n_points == 0
        assert summary.max_rel_err is None
        assert result.claims == []

    def test_negative_arguments_flagged_for_closed_forms(self, analyzer):
        grid = SweepGrid(x_min=-1.0, x_max=-1.0, x_steps=1, y_min=1.0, y_max=1.0, y_steps=1)
        result = analyzer.sweep(grid, [Method.FIRST_FORM])
        assert RecordFlag.OUT_OF_DOMAIN in result.records[0].flags
        assert not result.records[0].excluded

    def test_one_dimensional_methods_rejected(self, analyzer):
        with pytest.raises(DomainError):
            analyzer.sweep(origin_grid(), [Method.Q1_EXP])

    def test_method_list_required(self, analyzer):
        with pytest.raises(SweepGridError):
            analyzer.sweep(origin_grid(), [])


class TestQ1ErrorProfile:
    def test_records_per_point(self, analyzer):
        records = analyzer.q1_error_profile(0.0, 5.0, 101)
        assert len(records) == 202
        assert [r.method for r in records[:2]] == [Method.Q1_EXP, Method.Q1_3EXP]
        assert all(r.y is None and r.point is None for r in records)

    def test_errors_at_origin(self, analyzer):
        exp_record, three_exp_record = analyzer.q1_error_profile(0.0, 1.0, 2)[:2]
        assert exp_record.abs_err == pytest.approx(0.01, abs=1e-12)
        assert three_exp_record.abs_err == pytest.approx(0.022, abs=1e-12)

    def test_tail_flagged(self, analyzer):
        records = analyzer.q1_error_profile(4.0, 6.0, 3)
        assert RecordFlag.TAIL in records[-1].flags
        assert RecordFlag.TAIL not in records[0].flags

    @pytest.mark.parametrize("x_min, x_max, steps", [(0.0, 1.0, 1), (1.0, 1.0, 5), (2.0, 1.0, 5)])
    def test_invalid_range(self, analyzer, x_min, x_max, steps):
        with pytest.raises(SweepGridError):
            analyzer.q1_error_profile(x_min, x_max, steps)


class TestSummarize:
    def test_empty_method(self):
        summary = summarize([], Method.SERIES, origin_grid())
        assert summary.n_points == 0
        assert summary.worst_point is None

    def test_order_statistics_must_be_monotone(self):
        with pytest.raises(ValidationError):
            SweepSummary(
                method=Method.FIRST_FORM,
                grid=origin_grid(),
                max_rel_err=0.01,
                median_rel_err=0.02,
                p95_rel_err=0.015,
                worst_point=EvalPoint(x=0.0, y=0.0, rho=0.0),
                n_points=3,
            )
