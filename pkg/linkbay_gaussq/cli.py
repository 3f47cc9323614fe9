"""
Command-line interface.

Commands:
    eval            Q(x, y; rho) by one or every route
    sweep           Accuracy of the approximations over a grid
    series-profile  Outer terms the series needs per point
    q1-profile      Errors of the one-dimensional Q models
    validate        Built-in invariant suites

Exit codes: 0 ok, 1 validation failure, 2 usage or domain error,
3 oracle non-convergence, 4 output not writable.
"""

import argparse
import logging
import re
import sys
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from . import __version__
from .constants import (
    DEFAULT_GRID_MAX,
    DEFAULT_GRID_MIN,
    DEFAULT_GRID_STEPS,
    DEFAULT_L_MAX,
    DEFAULT_REL_TOL,
    DEFAULT_SERIES_REL_TOL,
    EvalMethod,
    ExitCode,
    Method,
    OracleSelector,
    OutputFormat,
)
from .exceptions import (
    ConvergenceError,
    DomainError,
    OutputError,
    SweepGridError,
    ValidationFailedError,
)
from .providers import get_formatter
from .schemas import EvalPoint, MethodValue, QuadratureSpec, SeriesSpec, SweepGrid
from .services.analysis import AccuracyAnalyzer
from .services.approx import q2_approx_first, q2_approx_second
from .services.oracle import ReferenceOracle
from .services.series import SeriesEvaluator
from .services.validation import ValidationRunner, ensure_passed

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"

METHOD_ALIASES = {
    "series": Method.SERIES,
    "first": Method.FIRST_FORM,
    "first_form": Method.FIRST_FORM,
    "second": Method.SECOND_FORM,
    "second_form": Method.SECOND_FORM,
}

Range = Tuple[float, float, int]


class NumericArgumentParser(argparse.ArgumentParser):
    """Reads "-0.5,0.5" or "-2:3:3" as option values, not as flags."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\.?\d")


def parse_range(text: str) -> Range:
    """MIN:MAX:STEPS."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected MIN:MAX:STEPS, got {text!r}")
    try:
        return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MIN:MAX:STEPS, got {text!r}")


def parse_float_list(text: str) -> List[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {text!r}")


def parse_methods(text: str) -> List[Method]:
    methods = []
    for name in text.split(","):
        name = name.strip()
        if name not in METHOD_ALIASES:
            raise argparse.ArgumentTypeError(
                f"unknown method {name!r}; choose from {', '.join(METHOD_ALIASES)}"
            )
        methods.append(METHOD_ALIASES[name])
    return methods


def parse_points(text: str) -> List[Tuple[float, float, float]]:
    """x,y,rho;x,y,rho;..."""
    points = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        values = parse_float_list(chunk)
        if len(values) != 3:
            raise argparse.ArgumentTypeError(f"expected x,y,rho, got {chunk!r}")
        points.append((values[0], values[1], values[2]))
    return points


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        type=OutputFormat,
        choices=[item.value for item in OutputFormat],
        default=OutputFormat.HUMAN,
        help="Output format.",
    )
    common.add_argument("--out", default=None, help="Write output to PATH instead of stdout.")
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging.")

    default_range = f"{DEFAULT_GRID_MIN:g}:{DEFAULT_GRID_MAX:g}:{DEFAULT_GRID_STEPS}"

    parser = NumericArgumentParser(
        prog="linkbay-gaussq",
        description="Two-dimensional Gaussian Q-function: exact routes, series and "
        "closed-form approximations.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("eval", parents=[common], help="Evaluate Q(x, y; rho).")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument(
        "--method",
        type=EvalMethod,
        choices=[item.value for item in EvalMethod],
        default=EvalMethod.ORACLE,
        help="Route; 'all' prints every route plus pairwise deltas.",
    )
    p.add_argument(
        "--reference",
        type=OracleSelector,
        choices=[item.value for item in OracleSelector],
        default=OracleSelector.AUTO,
        help="Quadrature route used for 'oracle'.",
    )
    p.add_argument("--rel-tol", type=float, default=DEFAULT_REL_TOL, help="Quadrature tolerance.")
    p.add_argument("--l-max", type=int, default=DEFAULT_L_MAX, help="Series outer term cap.")
    p.set_defaults(handler=cmd_eval)

    p = commands.add_parser("sweep", parents=[common], help="Accuracy over a grid.")
    p.add_argument("--x-range", type=parse_range, default=parse_range(default_range))
    p.add_argument("--y-range", type=parse_range, default=parse_range(default_range))
    p.add_argument("--rho-list", type=parse_float_list, default=[0.0])
    p.add_argument(
        "--method",
        type=parse_methods,
        default=[Method.FIRST_FORM, Method.SECOND_FORM],
        help="Comma-separated: series, first, second.",
    )
    p.add_argument(
        "--reference",
        type=OracleSelector,
        choices=[item.value for item in OracleSelector],
        default=OracleSelector.AUTO,
    )
    p.add_argument("--rel-tol", type=float, default=DEFAULT_REL_TOL, help="Quadrature tolerance.")
    p.add_argument("--l-max", type=int, default=DEFAULT_L_MAX, help="Series outer term cap.")
    p.add_argument("--max-workers", type=int, default=None, help="Evaluate points in threads.")
    p.set_defaults(handler=cmd_sweep)

    p = commands.add_parser(
        "series-profile", parents=[common], help="Series terms needed per point."
    )
    p.add_argument("--points", type=parse_points, default=None, help="x,y,rho;x,y,rho")
    p.add_argument("--x-range", type=parse_range, default=None)
    p.add_argument("--y-range", type=parse_range, default=None)
    p.add_argument("--rho-list", type=parse_float_list, default=None)
    p.add_argument(
        "--rel-tol", type=float, default=DEFAULT_SERIES_REL_TOL, help="Series tolerance."
    )
    p.add_argument("--l-max", type=int, default=DEFAULT_L_MAX)
    p.set_defaults(handler=cmd_series_profile)

    p = commands.add_parser(
        "q1-profile", parents=[common], help="Errors of the one-dimensional models."
    )
    p.add_argument("--x-range", type=parse_range, default=parse_range("0:5:101"))
    p.set_defaults(handler=cmd_q1_profile)

    p = commands.add_parser("validate", parents=[common], help="Run invariant suites.")
    p.add_argument(
        "--suite", action="append", default=None, help="Run only this suite (repeatable)."
    )
    p.add_argument("--perturb-q1", type=float, default=0.0, help=argparse.SUPPRESS)
    p.set_defaults(handler=cmd_validate)

    return parser


def cmd_eval(args: argparse.Namespace) -> int:
    point = EvalPoint(x=args.x, y=args.y, rho=args.rho)
    quadrature = QuadratureSpec(rel_tol=args.rel_tol)
    series_spec = SeriesSpec(l_max=args.l_max)
    oracle = ReferenceOracle(quadrature)
    series = SeriesEvaluator(series_spec)

    values: List[MethodValue] = []
    if args.method in (EvalMethod.ORACLE, EvalMethod.ALL):
        values.append(
            MethodValue(
                route=f"oracle:{args.reference.value}",
                value=oracle.evaluate(point, args.reference),
            )
        )
    if args.method == EvalMethod.ALL:
        # Second, independent quadrature route
        if point.x > 0.0 and point.y > 0.0:
            values.append(MethodValue(route="oracle:craig", value=oracle.q2_craig(point)))
        else:
            values.append(MethodValue(route="oracle:double", value=oracle.q2_double(point)))
    if args.method in (EvalMethod.SERIES, EvalMethod.ALL):
        result = series.q2_series(point)
        values.append(
            MethodValue(
                route="series",
                value=result.value,
                converged=result.converged,
                detail=f"outer_terms={result.outer_terms_used}"
                + (", reflected" if result.reflected else ""),
            )
        )
    if args.method in (EvalMethod.FIRST, EvalMethod.ALL):
        values.append(MethodValue(route="first_form", value=q2_approx_first(point)))
    if args.method in (EvalMethod.SECOND, EvalMethod.ALL):
        values.append(MethodValue(route="second_form", value=q2_approx_second(point)))

    header = _header(
        args,
        method=args.method.value,
        reference=args.reference.value,
        **_quadrature_settings(quadrature),
        **_series_settings(series_spec),
    )
    _emit(get_formatter(args.format).format_eval(point, values, header), args.out)
    return ExitCode.OK


def cmd_sweep(args: argparse.Namespace) -> int:
    grid = _grid(args.x_range, args.y_range, args.rho_list)
    quadrature = QuadratureSpec(rel_tol=args.rel_tol)
    series_spec = SeriesSpec(l_max=args.l_max)
    analyzer = AccuracyAnalyzer(
        oracle=ReferenceOracle(quadrature),
        series=SeriesEvaluator(series_spec),
        max_workers=args.max_workers,
    )
    result = analyzer.sweep(grid, args.method, args.reference)
    header = _header(
        args,
        x_range=_range_text(args.x_range),
        y_range=_range_text(args.y_range),
        rho_list=",".join(f"{rho:g}" for rho in args.rho_list),
        methods=",".join(method.value for method in args.method),
        reference=args.reference.value,
        max_workers=str(args.max_workers or 1),
        **_quadrature_settings(quadrature),
        **_series_settings(series_spec),
    )
    _emit(get_formatter(args.format).format_sweep(result, header), args.out)
    return ExitCode.OK


def cmd_series_profile(args: argparse.Namespace) -> int:
    if args.points:
        points = [EvalPoint(x=x, y=y, rho=rho) for x, y, rho in args.points]
        where = ";".join(f"{p.x:g},{p.y:g},{p.rho:g}" for p in points)
    elif args.x_range or args.y_range or args.rho_list:
        default = (DEFAULT_GRID_MIN, DEFAULT_GRID_MAX, DEFAULT_GRID_STEPS)
        grid = _grid(
            args.x_range or default, args.y_range or default, args.rho_list or [0.0]
        )
        points = grid.points()
        where = f"grid of {grid.size} points"
    else:
        raise DomainError("points", None, "give --points or grid flags")

    series_spec = SeriesSpec(rel_tol=args.rel_tol, l_max=args.l_max)
    evaluator = SeriesEvaluator(series_spec)
    rows = evaluator.convergence_profile(points)
    for row in rows:
        if not row.converged:
            logger.warning("Series not converged at %s", row.point.label())
    header = _header(
        args, points=where, **_series_settings(series_spec)
    )
    _emit(get_formatter(args.format).format_series_profile(rows, header), args.out)
    return ExitCode.OK


def cmd_q1_profile(args: argparse.Namespace) -> int:
    x_min, x_max, steps = args.x_range
    records = AccuracyAnalyzer().q1_error_profile(x_min, x_max, steps)
    header = _header(args, x_range=_range_text(args.x_range))
    _emit(get_formatter(args.format).format_records(records, header), args.out)
    return ExitCode.OK


def cmd_validate(args: argparse.Namespace) -> int:
    if args.perturb_q1:
        runner = ValidationRunner.with_perturbed_q1(args.perturb_q1)
    else:
        runner = ValidationRunner()
    for name in args.suite or []:
        if name not in runner.suites():
            raise DomainError("suite", name, f"choose from {', '.join(runner.suites())}")
    report = runner.run(args.suite)
    header = _header(args, suites=",".join(args.suite) if args.suite else "all")
    if args.perturb_q1:
        header["q1_perturbation"] = f"{args.perturb_q1:g}"
    _emit(get_formatter(args.format).format_validation(report, header), args.out)
    ensure_passed(report)
    return ExitCode.OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point of the linkbay-gaussq console script.

    Example:
        ```
        linkbay-gaussq eval --x 1 --y 1 --rho 0.5 --method all
        linkbay-gaussq sweep --method first,second --format csv --out sweep.csv
        ```
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format=LOG_FORMAT,
        stream=sys.stderr,
    )

    try:
        return int(args.handler(args))
    except ValidationError as e:
        for error in e.errors():
            logger.error("%s", error["msg"])
        return ExitCode.USAGE
    except (DomainError, SweepGridError) as e:
        logger.error("%s", e)
        return ExitCode.USAGE
    except ConvergenceError as e:
        logger.error("%s", e)
        sys.stdout.write(f"best estimate: {e.estimate!r} (error bound {e.error_bound:.3e})\n")
        return ExitCode.NON_CONVERGENCE
    except OutputError as e:
        logger.error("%s", e)
        return ExitCode.IO
    except ValidationFailedError as e:
        logger.error("%s", e)
        return ExitCode.VALIDATION_FAILED


def _grid(x_range: Range, y_range: Range, rho_values: List[float]) -> SweepGrid:
    return SweepGrid(
        x_min=x_range[0],
        x_max=x_range[1],
        x_steps=x_range[2],
        y_min=y_range[0],
        y_max=y_range[1],
        y_steps=y_range[2],
        rho_values=rho_values,
    )


def _range_text(value: Range) -> str:
    return f"{value[0]:g}:{value[1]:g}:{value[2]}"


def _header(args: argparse.Namespace, **settings: str) -> Dict[str, str]:
    header = {"command": args.command, "version": __version__}
    header.update(settings)
    return header


def _quadrature_settings(spec: QuadratureSpec) -> Dict[str, str]:
    return {
        "quadrature_rel_tol": f"{spec.rel_tol:g}",
        "quadrature_abs_tol": f"{spec.abs_tol:g}",
        "quadrature_max_subdivisions": str(spec.max_subdivisions),
    }


def _series_settings(spec: SeriesSpec) -> Dict[str, str]:
    return {
        "series_rel_tol": f"{spec.rel_tol:g}",
        "series_consecutive_small": str(spec.consecutive_small),
        "series_l_max": str(spec.l_max),
        "series_short_circuit_product": str(spec.short_circuit_product).lower(),
    }


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    except OSError as e:
        raise OutputError(out, e.strerror or str(e))
    logger.debug("Wrote %s", out)
