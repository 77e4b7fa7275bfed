"""Command-line front end.

Subcommands::

    profile    error profile, bounds and ESE of one scenario
    table1     recompute the built-in reference table and compare
    curve      ESE-ratio curve over a weight grid, with linear bounds
    contour    optimal-weight grid over the two variance ratios
    validate   Monte Carlo agreement with the closed form
    federate   reduce a multi-helper federation and report its weight

Exit codes: 0 success, 1 invalid input, 2 validation failure. All CSV output
is UTF-8 with LF line endings and a header row; numbers use the shortest
round-trip decimal form except the reference-table comparison columns,
which are fixed to two decimals (half-even). Identical configuration and
seed produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys

import numpy as np

from .config import ConfigError, RunConfig, load_run_config
from .federation import reduce_to_two_agent
from .montecarlo import validate_scenario
from .table1 import RowStatus, reproduce_table
from .theory import (
    ErrorProfile,
    Scenario,
    alpha_star_upper_bounds,
    error_profile,
    ese_of_alpha,
    max_ese,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_VALIDATION = 2

_DEFAULT_CURVE_GRID = 1001
_DEFAULT_CONTOUR_GRID = 101


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; remap to the invalid-input code."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INVALID)


def _fmt(value: float) -> str:
    """Shortest decimal string that round-trips to the same float."""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(float(value))


def _fmt2(value: float) -> str:
    """Fixed two decimals, half-even; infinities pass through."""
    if math.isinf(value):
        return "inf"
    return f"{round(value, 2):.2f}"


def _fmt_cell(value: float | None) -> str:
    if value is None:
        return "*"
    if math.isinf(value):
        return "inf"
    if value == int(value):
        return str(int(value))
    return _fmt(value)


def _write_csv(header: list[str], rows: list[list[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _profile_lines(scenario: Scenario, profile: ErrorProfile, alphas: tuple[float, ...]) -> list[str]:
    lines = [
        f"scenario: mu_x={_fmt(scenario.mu_x)} var_x={_fmt(scenario.var_x)} n_x={scenario.n_x} "
        f"mu_y={_fmt(scenario.mu_y)} var_y={_fmt(scenario.var_y)} "
        f"n_y={'inf' if scenario.infinite_helper else scenario.n_y}",
        f"e0 = {_fmt(profile.e0)}",
        f"e1 = {_fmt(profile.e1)}",
        f"alpha_star = {_fmt(profile.alpha_star)}",
        f"degenerate = {'true' if profile.degenerate else 'false'}",
        f"ese_opt = {_fmt(profile.ese_opt)}",
        f"break_even = {_fmt(profile.break_even)}",
    ]
    if scenario.var_x > 0:
        bound_bias, bound_var = alpha_star_upper_bounds(scenario)
        lines.append(f"bound_bias = {_fmt(bound_bias)}")
        lines.append(f"bound_var = {_fmt(bound_var)}")
    else:
        lines.append("warning: local model already exact (var_x = 0); averaging cannot help")
        lines.append("bound_bias = n/a")
        lines.append("bound_var = n/a")
    lines.append(f"max_ese = {_fmt(max_ese(profile))}")
    for alpha in alphas:
        value = ese_of_alpha(profile, alpha)
        if profile.e0 > 0:
            lines.append(f"ese({_fmt(alpha)}) = {_fmt(value)} (ratio {_fmt(value / profile.e0)})")
        else:
            lines.append(f"ese({_fmt(alpha)}) = {_fmt(value)}")
    return lines


def cmd_profile(config: RunConfig) -> int:
    scenario = config.scenarios[0].two_agent().to_scenario()
    profile = error_profile(scenario)
    text = "\n".join(_profile_lines(scenario, profile, config.alphas)) + "\n"
    _emit(text, config.out)
    return EXIT_OK


def cmd_table1(config: RunConfig) -> int:
    comparisons = reproduce_table()
    header = [
        "row",
        "bias2_over_varx",
        "n_x",
        "vary_over_varx",
        "ny_over_nx",
        "alpha_star",
        "e_ratio_opt",
        "e_ratio_fifth",
        "e_ratio_half",
        "printed_alpha_star",
        "printed_e_ratio_opt",
        "printed_e_ratio_fifth",
        "printed_e_ratio_half",
        "status",
    ]
    rows = []
    for comparison in comparisons:
        row = comparison.row
        reference = comparison.reference
        rows.append(
            [
                str(comparison.index),
                _fmt_cell(row.bias2_over_varx),
                _fmt_cell(row.n_x),
                _fmt_cell(row.vary_over_varx),
                _fmt_cell(row.ny_over_nx),
                _fmt2(row.alpha_star),
                _fmt2(row.e_ratio_opt),
                _fmt2(row.e_ratio_fifth),
                _fmt2(row.e_ratio_half),
                reference.alpha_star,
                reference.e_ratio_opt,
                reference.e_ratio_fifth,
                reference.e_ratio_half,
                row.status.value,
            ]
        )
    csv_text = _write_csv(header, rows)
    mismatches = [c for c in comparisons if c.row.status is not RowStatus.MATCH]
    report_lines = [
        f"rows: {len(comparisons)}, match: {len(comparisons) - len(mismatches)}, "
        f"mismatch: {len(mismatches)}"
    ]
    for comparison in mismatches:
        bad = [column for column, ok in comparison.cell_matches.items() if not ok]
        values = ", ".join(
            f"{column} computed {_fmt2(getattr(comparison.row, column))} "
            f"vs printed {comparison.reference.printed(column)}"
            for column in bad
        )
        report_lines.append(f"row {comparison.index}: {values}")
    report = "\n".join(report_lines) + "\n"
    if config.out is None:
        sys.stdout.write(csv_text)
        sys.stderr.write(report)
    else:
        _emit(csv_text, config.out)
        sys.stdout.write(report)
    return EXIT_OK


def cmd_curve(config: RunConfig) -> int:
    scenario = config.scenarios[0].two_agent().to_scenario()
    profile = error_profile(scenario)
    if profile.alpha_star <= 0.0:
        print(
            "error: curve requires alpha_star > 0 (var_x > 0 and a non-degenerate scenario)",
            file=sys.stderr,
        )
        return EXIT_INVALID
    points = config.grid if config.grid is not None else _DEFAULT_CURVE_GRID
    rows = []
    for alpha in np.linspace(0.0, 1.0, points):
        alpha = float(alpha)
        ratio = ese_of_alpha(profile, alpha) / profile.e0
        upper = _fmt(1.0 - alpha) if alpha <= profile.alpha_star else ""
        rows.append([_fmt(alpha), _fmt(ratio), _fmt(1.0 - 2.0 * alpha), upper])
    _emit(_write_csv(["alpha", "ese_ratio", "lower_bound", "upper_bound_segment"], rows), config.out)
    return EXIT_OK


def cmd_contour(config: RunConfig) -> int:
    u_min, u_max, v_min, v_max = config.contour_bounds
    points = config.grid if config.grid is not None else _DEFAULT_CONTOUR_GRID
    u_grid = np.logspace(math.log10(u_min), math.log10(u_max), points)
    v_grid = np.logspace(math.log10(v_min), math.log10(v_max), points)
    rows = []
    for u in u_grid:
        for v in v_grid:
            # u = Var[xbar]/bias^2 and v = Var[xbar]/Var[ybar] determine
            # the optimal weight: 1 / (1 + 1/u + 1/v).
            alpha_star = 1.0 / (1.0 + 1.0 / float(u) + 1.0 / float(v))
            rows.append([_fmt(float(u)), _fmt(float(v)), _fmt(alpha_star)])
    _emit(
        _write_csv(["varxbar_over_bias2", "varxbar_over_varybar", "alpha_star"], rows),
        config.out,
    )
    return EXIT_OK


def cmd_validate(config: RunConfig) -> int:
    lines = []
    all_passed = True
    for index, parsed in enumerate(config.scenarios, start=1):
        sampled = parsed.two_agent()
        report = validate_scenario(
            sampled, config.trials, config.seed, k=config.k, expected=parsed.expected
        )
        all_passed = all_passed and report.passed
        lines.append(
            f"scenario {index}: {'PASS' if report.passed else 'FAIL'} "
            f"(trials={report.trials}, k={_fmt(report.k)}, seed={report.seed.master_seed})"
        )
        for point in report.points:
            lines.append(
                f"  alpha={_fmt(point.alpha)} mc={_fmt(point.estimate.mean_sq_error)} "
                f"closed={_fmt(point.closed_form)} se={_fmt(point.estimate.std_error)} "
                f"dev={_fmt(point.deviation)} {'ok' if point.passed else 'FAIL'}"
            )
    lines.append("overall: " + ("PASS" if all_passed else "FAIL"))
    _emit("\n".join(lines) + "\n", config.out)
    return EXIT_OK if all_passed else EXIT_VALIDATION


def cmd_federate(config: RunConfig) -> int:
    federation = config.scenarios[0].federation()
    scenario = reduce_to_two_agent(federation)
    profile = error_profile(scenario)
    total = scenario.n_y
    lines = [
        f"helpers = {len(federation.helpers)}",
        f"pooled_n = {total}",
        f"reduced: mu_y={_fmt(scenario.mu_y)} var_y={_fmt(scenario.var_y)} n_y={total} "
        f"var_ybar={_fmt(scenario.var_helper_mean)}",
        f"e0 = {_fmt(profile.e0)}",
        f"e1 = {_fmt(profile.e1)}",
        f"alpha_star = {_fmt(profile.alpha_star)}",
        f"ese_opt = {_fmt(profile.ese_opt)}",
        f"ese_ratio_opt = {_fmt(1.0 - profile.alpha_star)}",
    ]
    _emit("\n".join(lines) + "\n", config.out)
    return EXIT_OK


_COMMANDS = {
    "profile": (cmd_profile, True),
    "table1": (cmd_table1, False),
    "curve": (cmd_curve, True),
    "contour": (cmd_contour, False),
    "validate": (cmd_validate, True),
    "federate": (cmd_federate, True),
}


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="collab-avg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        command = sub.add_parser(name)
        command.add_argument("--scenario", help="scenario file (YAML)")
        command.add_argument("--out", help="output path (default: stdout)")
        command.add_argument("--seed", type=int, help="master seed (fallback: file, then $COLLAB_AVG_SEED)")
        command.add_argument("--trials", type=int, help="Monte Carlo trials per point")
        command.add_argument("--grid", type=int, help="grid resolution (curve/contour)")
        command.add_argument("--k", type=float, help="acceptance band in standard errors")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    run, needs_scenario = _COMMANDS[args.command]
    try:
        config = load_run_config(
            args.scenario,
            seed=args.seed,
            trials=args.trials,
            k=args.k,
            grid=args.grid,
            out=args.out,
            require_scenario=needs_scenario,
        )
        if args.grid is not None and args.grid < 2:
            raise ConfigError("--grid must be >= 2")
        return run(config)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
