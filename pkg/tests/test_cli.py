"""Tests for the command-line interface."""

import json

import pytest

from linkbay_gaussq import ConvergenceError, ReferenceOracle, __version__
from linkbay_gaussq.cli import build_parser, main, parse_methods, parse_points, parse_range
from linkbay_gaussq.constants import CSV_COLUMNS, Method

from .helpers import csv_blocks


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestArgumentParsing:
    def test_range(self):
        assert parse_range("0:3:13") == (0.0, 3.0, 13)

    @pytest.mark.parametrize("text", ["0:3", "a:b:c", "0:3:1.5"])
    def test_bad_range(self, text):
        with pytest.raises(Exception):
            parse_range(text)

    def test_method_aliases(self):
        assert parse_methods("first,second_form,series") == [
            Method.FIRST_FORM,
            Method.SECOND_FORM,
            Method.SERIES,
        ]

    def test_points(self):
        assert parse_points("1,1,0;0.5,2,0.8") == [(1.0, 1.0, 0.0), (0.5, 2.0, 0.8)]

    @pytest.mark.parametrize(
        "argv, attribute, expected",
        [
            (["sweep", "--rho-list", "-0.5,0.5"], "rho_list", [-0.5, 0.5]),
            (["sweep", "--x-range", "-2:3:3"], "x_range", (-2.0, 3.0, 3)),
            (["sweep", "--y-range", "-.5:1:4"], "y_range", (-0.5, 1.0, 4)),
            (["series-profile", "--points", "-1,0.5,-0.3"], "points", [(-1.0, 0.5, -0.3)]),
        ],
    )
    def test_negative_values_without_equals(self, argv, attribute, expected):
        args = build_parser().parse_args(argv)
        assert getattr(args, attribute) == expected

    def test_defaults(self):
        args = build_parser().parse_args(["sweep"])
        assert args.x_range == (0.0, 3.0, 13)
        assert args.rho_list == [0.0]
        assert args.method == [Method.FIRST_FORM, Method.SECOND_FORM]


class TestEval:
    def test_oracle_at_origin(self, capsys):
        code, out, _ = run(capsys, "eval", "--x", "0", "--y", "0", "--rho", "0", "--format", "csv")
        assert code == 0
        rows = csv_blocks(out)[0]
        assert rows[1][3] == "oracle:auto"
        assert float(rows[1][4]) == 0.25

    def test_header_records_configuration(self, capsys):
        _, out, _ = run(capsys, "eval", "--x", "1", "--y", "1", "--rho", "0", "--format", "csv")
        assert "# command: eval\n" in out
        assert f"# version: {__version__}\n" in out
        assert "# quadrature_rel_tol: 1e-10\n" in out
        assert "# quadrature_abs_tol: 1e-12\n" in out
        assert "# quadrature_max_subdivisions: 2000\n" in out
        assert "# series_rel_tol: 1e-12\n" in out
        assert "# series_l_max: 200\n" in out

    def test_all_routes(self, capsys):
        code, out, _ = run(
            capsys, "eval", "--x", "1", "--y", "1", "--rho", "0.5",
            "--method", "all", "--format", "json",
        )
        assert code == 0
        document = json.loads(out)
        values = {v["route"]: v["value"] for v in document["values"]}
        assert list(values) == [
            "oracle:auto", "oracle:craig", "series", "first_form", "second_form",
        ]
        assert values["oracle:craig"] == pytest.approx(values["oracle:auto"], abs=1e-8)
        assert values["series"] == pytest.approx(values["oracle:auto"], abs=1e-6)
        assert len(document["deltas"]) == 10

    def test_all_routes_use_double_integral_off_quadrant(self, capsys):
        code, out, _ = run(
            capsys, "eval", "--x", "-0.5", "--y", "1", "--rho", "0.3",
            "--method", "all", "--format", "json",
        )
        assert code == 0
        routes = [v["route"] for v in json.loads(out)["values"]]
        assert routes[1] == "oracle:double"

    def test_unconverged_series_still_reported(self, capsys):
        code, out, _ = run(
            capsys, "eval", "--x", "0.5", "--y", "2", "--rho", "0.8",
            "--method", "series", "--format", "json",
        )
        assert code == 0
        assert json.loads(out)["values"][0]["converged"] is False

    @pytest.mark.parametrize("rho", ["1.0", "-1", "1.5"])
    def test_boundary_correlation_is_usage_error(self, capsys, caplog, rho):
        code, out, _ = run(capsys, "eval", "--x", "0", "--y", "0", "--rho", rho)
        assert code == 2
        assert out == ""
        assert "1 - rho^2" in caplog.text

    def test_malformed_number(self, capsys):
        code, _, err = run(capsys, "eval", "--x", "abc", "--y", "0", "--rho", "0")
        assert code == 2
        assert "--x" in err

    def test_tolerance_below_floor(self, capsys):
        code, _, _ = run(capsys, "eval", "--x", "0", "--y", "0", "--rho", "0.5", "--rel-tol", "1e-16")
        assert code == 2

    def test_non_convergence_exit_code(self, capsys, monkeypatch):
        def fail(self, p, selector=None):
            raise ConvergenceError("q2_reduced", 0.123, 1e-3, 2000)

        monkeypatch.setattr(ReferenceOracle, "evaluate", fail)
        code, out, _ = run(capsys, "eval", "--x", "1", "--y", "1", "--rho", "0.5")
        assert code == 3
        assert "best estimate: 0.123" in out


class TestSweep:
    def test_single_point_to_file(self, capsys, tmp_path):
        target = tmp_path / "sweep.csv"
        code, out, _ = run(
            capsys, "sweep", "--x-range", "0:0:1", "--y-range", "0:0:1",
            "--method", "first", "--format", "csv", "--out", str(target),
        )
        assert code == 0
        assert out == ""
        text = target.read_text(encoding="utf-8")
        assert "\r" not in text
        records = csv_blocks(text)[0]
        assert records[0] == list(CSV_COLUMNS)
        assert len(records) == 2
        assert float(records[1][7]) == pytest.approx(0.02, rel=1e-12)

    def test_unwritable_output(self, capsys, tmp_path):
        target = tmp_path / "missing" / "sweep.csv"
        code, _, _ = run(
            capsys, "sweep", "--x-range", "0:0:1", "--y-range", "0:0:1",
            "--format", "csv", "--out", str(target),
        )
        assert code == 4

    def test_bad_grid(self, capsys):
        code, _, _ = run(capsys, "sweep", "--x-range", "0:1:1")
        assert code == 2

    def test_unknown_method(self, capsys):
        code, _, _ = run(capsys, "sweep", "--method", "third")
        assert code == 2

    def test_correlated_grid_with_threads(self, capsys):
        code, out, _ = run(
            capsys, "sweep", "--x-range", "0:1:2", "--y-range", "0:1:2",
            "--rho-list", "-0.5,0.5", "--method", "series,second",
            "--max-workers", "2", "--format", "json",
        )
        assert code == 0
        document = json.loads(out)
        assert len(document["records"]) == 16
        assert document["claims"] == []

    def test_negative_ranges_on_command_line(self, capsys):
        code, out, _ = run(
            capsys, "sweep", "--x-range", "-1:1:3", "--y-range", "0:1:2",
            "--rho-list", "-0.5", "--method", "first", "--format", "json",
        )
        assert code == 0
        document = json.loads(out)
        assert len(document["records"]) == 6
        assert {record["x"] for record in document["records"]} == {-1.0, 0.0, 1.0}


class TestSeriesProfile:
    def test_uncorrelated_point_needs_no_terms(self, capsys):
        code, out, _ = run(capsys, "series-profile", "--points", "1,1,0", "--format", "csv")
        assert code == 0
        rows = csv_blocks(out)[0]
        assert rows[1][3] == "0"
        assert rows[1][4] == "true"

    def test_grid_flags(self, capsys):
        code, out, _ = run(
            capsys, "series-profile", "--x-range", "1:1:1", "--y-range", "1:1:1",
            "--rho-list", "0.1,0.3,0.5", "--format", "csv",
        )
        assert code == 0
        counts = [int(row[3]) for row in csv_blocks(out)[0][1:]]
        assert counts == sorted(counts)

    def test_points_required(self, capsys):
        code, _, _ = run(capsys, "series-profile")
        assert code == 2


class TestQ1Profile:
    def test_default_range(self, capsys):
        code, out, _ = run(capsys, "q1-profile", "--format", "csv")
        assert code == 0
        assert len(csv_blocks(out)[0]) == 1 + 202


class TestValidate:
    def test_selected_suite(self, capsys):
        code, out, _ = run(capsys, "validate", "--suite", "q1_reflection", "--format", "json")
        assert code == 0
        document = json.loads(out)
        assert document["passed"] is True
        assert [s["name"] for s in document["suites"]] == ["q1_reflection"]

    def test_perturbed_q_fails(self, capsys):
        code, out, _ = run(
            capsys, "validate", "--suite", "q1_reflection", "--perturb-q1", "1e-6",
            "--format", "csv",
        )
        assert code == 1
        assert out.endswith("# passed: false\n")

    def test_unknown_suite(self, capsys):
        code, _, _ = run(capsys, "validate", "--suite", "no_such_suite")
        assert code == 2

    def test_cost_trend_suite(self, capsys):
        code, out, _ = run(
            capsys, "validate", "--suite", "series_cost_trend", "--format", "json"
        )
        assert code == 0
        suite = json.loads(out)["suites"][0]
        assert suite["passed"] is True
        assert suite["worst_error"] == 0.0

    @pytest.mark.slow
    def test_all_suites(self, capsys):
        code, _, _ = run(capsys, "validate", "--format", "csv")
        assert code == 0


def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0
    assert __version__ in out
