"""Command-line entry point: ``qfree <command> ...``."""

from __future__ import annotations

import argparse
from dataclasses import asdict
import json
import logging
from pathlib import Path
import sys
from typing import Any

import numpy as np
import structlog

from calculus import (
    MatrixTuple,
    commutative_eval,
    free_eval,
    is_strictly_r_contractive,
    joint_spectral_radius,
    taylor_eval,
)
from expression import Expression, evaluate, evaluate_free, parse
from free_series import FreeSeries, entire_seminorm, polydisk_seminorm, popescu_seminorm
from models import Mode, Report, ReportFormat, RunConfig, SuiteName
from quantum_algebra import (
    OrderedSeries,
    SeminormVariant,
    affine_seminorm,
    normal_order,
    torus_seminorm,
)
from render_report import failing_records_table, render_report_table
from report_io import emit_report, load_report, save_report
from serialization import (
    dump_payload,
    free_series_to_payload,
    load_free_series,
    load_matrix_tuple,
    matrix_tuple_to_payload,
    ordered_series_to_payload,
    star_polynomial_to_payload,
)
from star_rep import (
    OpNormMethod,
    StarPolynomial,
    TruncatedRep,
    ball_seminorm,
    embed,
    op_norm,
    rep_apply,
    star_normal_order,
)
from suites import run_suite

TABLE_FORMAT = "table"

log = structlog.get_logger()


def configure_logging(verbose: bool = False) -> None:
    """Send structlog output to stderr so stdout carries only results."""

    structlog.configure(
        wrapper_class=structlog.make_filtering_bound_logger(
            logging.DEBUG if verbose else logging.INFO
        ),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=2, help="number of generators")
    common.add_argument("--q", default="0.5", help='"num/den" (exact) or a decimal')
    common.add_argument("--mode", choices=[mode.value for mode in Mode])
    common.add_argument("--rho", type=float, nargs="+")
    common.add_argument("--rho2", type=float, nargs="+")
    common.add_argument("--r", type=float, nargs="+")
    common.add_argument("--N", dest="cutoff", type=int, help="truncation level")
    common.add_argument("--kmax", type=int, default=8)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=100)
    common.add_argument("--deg", dest="degree", type=int, default=3)
    common.add_argument("--tol", dest="tolerance", type=float)
    common.add_argument(
        "--format",
        dest="output_format",
        choices=[*(fmt.value for fmt in ReportFormat), TABLE_FORMAT],
    )
    common.add_argument("--out", type=Path, help="write the result here")
    common.add_argument("--budget", type=int, default=2**20)
    common.add_argument("--verbose", action="store_true")
    return common


def _expression_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("expression", nargs="?")
    parser.add_argument("--expr", help="the expression, as an option")


def _tuple_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--tuple",
        "--matrices",
        dest="matrices",
        required=True,
        help="matrix tuple as JSON text or a file path",
    )


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="qfree", description="Quantized free function algebras at desk scale."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    normal = commands.add_parser(
        "normal-order", parents=[common], help="normal-order a free expression"
    )
    _expression_options(normal)
    normal.add_argument("--input", help="free series as JSON text or a file path")
    normal.add_argument("--json", action="store_true", help="print the JSON form")

    star = commands.add_parser(
        "star-normal-order", parents=[common], help="normal-order a star expression"
    )
    _expression_options(star)
    star.add_argument("--json", action="store_true", help="print the JSON form")

    seminorm = commands.add_parser(
        "seminorm", parents=[common], help="evaluate the seminorm families"
    )
    _expression_options(seminorm)

    rep_norm = commands.add_parser(
        "rep-norm", parents=[common], help="operator norm in the truncated Fock space"
    )
    _expression_options(rep_norm)
    rep_norm.add_argument(
        "--triplets", action="store_true", help="print the matrix as row col re im"
    )
    rep_norm.add_argument(
        "--method",
        choices=[method.value for method in OpNormMethod],
        default=OpNormMethod.AUTO.value,
    )

    evaluation = commands.add_parser(
        "eval", parents=[common], help="evaluate an expression at a matrix tuple"
    )
    _expression_options(evaluation)
    evaluation.add_argument("--series", help="free series as JSON text or a file path")
    _tuple_option(evaluation)

    jsr = commands.add_parser(
        "jsr", parents=[common], help="joint spectral radius of a matrix tuple"
    )
    _tuple_option(jsr)

    verify = commands.add_parser(
        "verify", parents=[common], help="run a verification suite"
    )
    verify.add_argument("suite", choices=[suite.value for suite in SuiteName])

    report = commands.add_parser(
        "report", parents=[common], help="re-emit a saved report"
    )
    report.add_argument("path", type=Path)
    return parser


def config_from_args(args: argparse.Namespace, default_mode: Mode) -> RunConfig:
    output_format = (
        ReportFormat.CSV if args.output_format == ReportFormat.CSV else ReportFormat.JSON
    )
    return RunConfig(
        n=args.n,
        q=args.q,
        mode=Mode(args.mode or default_mode),
        cutoff=args.cutoff,
        rho_grid=tuple(args.rho) if args.rho else None,
        rho2_grid=tuple(args.rho2) if args.rho2 else None,
        r_grid=tuple(args.r) if args.r else None,
        seed=args.seed,
        samples=args.samples,
        degree=args.degree,
        tolerance=args.tolerance,
        output_format=output_format,
        budget=args.budget,
        kmax=args.kmax,
    )


def _write(text: str, out: Path | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out is None:
        sys.stdout.write(text)
        return
    try:
        out.write_text(text, encoding="utf-8")
    except OSError as e:
        raise ValueError(f"Error writing output to {out}") from e
    log.info("Wrote output", path=str(out))


def _expression_text(args: argparse.Namespace) -> str | None:
    if args.expr is not None and args.expression is not None:
        raise ValueError("Give the expression once, positionally or with --expr")
    return args.expr if args.expr is not None else args.expression


def _parsed_expression(args: argparse.Namespace, config: RunConfig) -> Expression:
    text = _expression_text(args)
    if text is None:
        raise ValueError("Give an expression or --expr")
    return parse(text, config)


def _series_text(
    value: FreeSeries | OrderedSeries | StarPolynomial, as_json: bool
) -> str:
    if not as_json:
        return value.canonical_text()
    if isinstance(value, FreeSeries):
        return dump_payload(free_series_to_payload(value))
    if isinstance(value, OrderedSeries):
        return dump_payload(ordered_series_to_payload(value))
    return dump_payload(star_polynomial_to_payload(value))


def cmd_normal_order(args: argparse.Namespace) -> int:
    config = config_from_args(args, Mode.AFFINE)
    if config.mode not in {Mode.AFFINE, Mode.TORUS}:
        raise ValueError("normal-order works in affine or torus mode")
    if args.input is not None:
        if config.mode is Mode.TORUS:
            raise ValueError("--input series are words and need affine mode")
        result = normal_order(load_free_series(args.input), config.q_value)
    elif _expression_text(args) is not None:
        result = evaluate(_parsed_expression(args, config), config)
    else:
        raise ValueError("Give an expression, --expr or --input")
    _write(_series_text(result, args.json), args.out)
    return 0


def cmd_star_normal_order(args: argparse.Namespace) -> int:
    config = config_from_args(args, Mode.STAR)
    if config.mode is not Mode.STAR:
        raise ValueError("star-normal-order works in star mode")
    result = star_normal_order(
        evaluate_free(_parsed_expression(args, config), config), config.q_value
    )
    _write(_series_text(result, args.json), args.out)
    return 0


def _seminorm_rows(
    value: FreeSeries | OrderedSeries, config: RunConfig
) -> list[dict[str, Any]]:
    rhos = config.rho_grid or (1.0,)
    rows: list[dict[str, Any]] = []
    if isinstance(value, FreeSeries):
        for rho in rhos:
            rows.append(
                {"family": "entire", "rho": rho, "value": entire_seminorm(value, rho).value}
            )
            for rho2 in config.rho2_grid or ():
                rows.append(
                    {
                        "family": "polydisk",
                        "rho1": rho,
                        "rho2": rho2,
                        "value": polydisk_seminorm(value, rho, rho2).value,
                    }
                )
        for r in config.r_grid or ():
            rows.append(
                {"family": "popescu", "r": r, "value": popescu_seminorm(value, r).value}
            )
        return rows
    if config.mode is Mode.TORUS:
        return [
            {"family": "torus", "rho": rho, "value": torus_seminorm(value, rho)}
            for rho in rhos
        ]
    for rho in rhos:
        for variant in SeminormVariant:
            rows.append(
                {
                    "family": f"affine-{variant.value}",
                    "rho": rho,
                    "value": affine_seminorm(value, rho, variant),
                }
            )
    return rows


def cmd_seminorm(args: argparse.Namespace) -> int:
    config = config_from_args(args, Mode.FREE)
    if config.mode is Mode.STAR:
        raise ValueError("Star polynomials have no series seminorm; use rep-norm")
    value = evaluate(_parsed_expression(args, config), config)
    _write(json.dumps(_seminorm_rows(value, config), indent=2), args.out)
    return 0


def cmd_rep_norm(args: argparse.Namespace) -> int:
    config = config_from_args(args, Mode.AFFINE)
    if config.mode not in {Mode.AFFINE, Mode.STAR}:
        raise ValueError("rep-norm works in affine or star mode")
    value = evaluate(_parsed_expression(args, config), config)
    cutoff = config.cutoff if config.cutoff is not None else value.degree
    rep = TruncatedRep(config.n, config.q_float, cutoff)
    method = OpNormMethod(args.method)
    r = config.r_grid[0] if config.r_grid else None
    if r is not None and not isinstance(value, OrderedSeries):
        raise ValueError("--r (the ball seminorm) needs affine mode")
    if args.triplets:
        polynomial = value if isinstance(value, StarPolynomial) else embed(value)
        _write(rep_apply(polynomial, rep).to_triplets(), args.out)
        return 0
    if r is not None:
        norm = ball_seminorm(value, r, rep, method=method)
    else:
        polynomial = value if isinstance(value, StarPolynomial) else embed(value)
        norm = op_norm(rep_apply(polynomial, rep), method=method)
    result = {"norm": norm, "N": cutoff, "dim": rep.dim, "method": method.value}
    if r is not None:
        result["r"] = r
    _write(json.dumps(result, indent=2), args.out)
    return 0


def _free_value(series: FreeSeries, a: MatrixTuple, config: RunConfig) -> np.ndarray:
    if config.r_grid:
        return taylor_eval(series, a, config.r_grid[0], config.kmax, config.budget)
    return free_eval(series, a)


def cmd_eval(args: argparse.Namespace) -> int:
    config = config_from_args(args, Mode.FREE)
    a = load_matrix_tuple(args.matrices)
    if args.series is not None:
        if _expression_text(args) is not None:
            raise ValueError("Give either an expression or --series, not both")
        if config.mode is not Mode.FREE:
            raise ValueError("--series holds a free series and needs free mode")
        matrix = _free_value(load_free_series(args.series), a, config)
    elif config.mode is Mode.FREE:
        series = evaluate_free(_parsed_expression(args, config), config)
        matrix = _free_value(series, a, config)
    elif config.mode is Mode.AFFINE:
        matrix = commutative_eval(evaluate(_parsed_expression(args, config), config), a)
    else:
        raise ValueError("eval works in free or affine mode")
    _write(dump_payload(matrix_tuple_to_payload(MatrixTuple((matrix,)))), args.out)
    return 0


def cmd_jsr(args: argparse.Namespace) -> int:
    config = config_from_args(args, Mode.FREE)
    a = load_matrix_tuple(args.matrices)
    estimate = joint_spectral_radius(a, config.kmax, config.budget)
    result: dict[str, Any] = asdict(estimate)
    if config.r_grid:
        result["r"] = config.r_grid[0]
        result["verdict"] = is_strictly_r_contractive(
            a, config.r_grid[0], config.kmax, config.budget
        ).value
    _write(json.dumps(result, indent=2), args.out)
    return 0


def _emit(report: Report, output_format: str | None) -> str:
    if output_format == TABLE_FORMAT:
        return render_report_table(report)
    return emit_report(report, output_format or ReportFormat.JSON)


def cmd_verify(args: argparse.Namespace) -> int:
    config = config_from_args(args, Mode.AFFINE)
    report = Report.build(args.suite, config, run_suite(args.suite, config))
    if args.out is not None and args.output_format != TABLE_FORMAT:
        save_report(report, args.out, config.output_format)
    else:
        _write(_emit(report, args.output_format), args.out)
    if report.all_passed:
        return 0
    log.warning(
        "Checks failed",
        suite=report.suite,
        failed=report.summary.total - report.summary.passed,
    )
    sys.stderr.write(failing_records_table(report))
    return 1


def cmd_report(args: argparse.Namespace) -> int:
    report = load_report(args.path)
    _write(_emit(report, args.output_format), args.out)
    return 0


COMMANDS = {
    "normal-order": cmd_normal_order,
    "star-normal-order": cmd_star_normal_order,
    "seminorm": cmd_seminorm,
    "rep-norm": cmd_rep_norm,
    "eval": cmd_eval,
    "jsr": cmd_jsr,
    "verify": cmd_verify,
    "report": cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except ValueError as e:
        log.error("Command failed", command=args.command, error=str(e))
        return 2


if __name__ == "__main__":
    sys.exit(main())
