"""Command-line surface: simulate scenarios, cross-check closed forms against
the recursion, evaluate the debt-decrease condition, and sweep parameters.

Exit status: 0 on success (a failing decrease condition is data, not an
error), 1 on scenario/model errors, 2 on command-line misuse.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analysis, io
from .model import ConstantSchedule, ModelError

_GRID_HELP = ("grid specification: 'start:stop:count' for inclusive linear "
              "spacing, or comma-separated explicit values")


def _fmt(x: float) -> str:
    return format(x, ".12g")


def parse_grid(spec: str) -> list[float]:
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"bad grid {spec!r}; {_GRID_HELP}")
        try:
            start, stop = float(parts[0]), float(parts[1])
            count = int(parts[2])
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad grid {spec!r}; {_GRID_HELP}")
        if count < 1:
            raise argparse.ArgumentTypeError("grid count must be >= 1")
        if count == 1:
            return [start]
        step = (stop - start) / (count - 1)
        return [start + i * step for i in range(count)]
    try:
        return [float(tok) for tok in spec.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {spec!r}; {_GRID_HELP}")


def _load(path: str) -> "io.Scenario":
    return io.load_scenario(Path(path).read_text(encoding="utf-8"))


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def _bool(flag: bool) -> str:
    return "true" if flag else "false"


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_simulate(args) -> int:
    scenario = _load(args.scenario)
    traj = analysis.simulate(scenario)
    _emit(io.write_trajectory(traj, format=args.format), args.output)
    return 0


def cmd_closed_form(args) -> int:
    scenario = _load(args.scenario)
    traj = analysis.simulate(scenario)
    horizon = scenario.horizon
    if isinstance(scenario.debt.schedule, ConstantSchedule):
        closed = [analysis.debt_closed_form_fixed_point(scenario.debt,
                                                        scenario.consumer, k)
                  for k in range(1, horizon + 1)]
    else:
        closed = [analysis.debt_closed_form_schedule(scenario.debt,
                                                     scenario.consumer, k)
                  for k in range(1, horizon + 1)]
    recursive = [float(d) for d in traj.debt[1:]]
    deviation = analysis.max_rel_deviation(recursive, closed)

    if args.format == "json":
        doc = {
            "k": list(range(horizon + 1)),
            "D_recursive": [scenario.debt.d0] + recursive,
            "D_closed_form": [scenario.debt.d0] + closed,
            "max_rel_dev": deviation,
        }
        _emit(json.dumps(doc, indent=2) + "\n", args.output)
    else:
        lines = ["k,D_recursive,D_closed_form"]
        lines.append(f"0,{_fmt(scenario.debt.d0)},{_fmt(scenario.debt.d0)}")
        for k in range(1, horizon + 1):
            lines.append(f"{k},{_fmt(recursive[k - 1])},{_fmt(closed[k - 1])}")
        lines.append(f"# max_rel_dev = {_fmt(deviation)}")
        _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_condition(args) -> int:
    scenario = _load(args.scenario)
    if not isinstance(scenario.debt.schedule, ConstantSchedule) and args.year is None:
        print("error: --year is required for linear/explicit expenditure schedules",
              file=sys.stderr)
        return 2
    report = analysis.decrease_condition(scenario.consumer, scenario.debt, args.year)

    if args.format == "json":
        doc = {
            "lhs": report.lhs,
            "rhs": report.rhs,
            "margin": report.margin,
            "holds": report.holds,
            "regime": report.regime.value,
            "k": report.k,
            "rhs_limit": report.rhs_limit,
        }
        _emit(json.dumps(doc, indent=2) + "\n", args.output)
        return 0

    verdict = ("debt decreases steadily" if report.holds
               else "debt will not steadily decrease")
    lines = [
        f"condition {'holds' if report.holds else 'fails'} "
        f"(margin {_fmt(report.margin)}): {verdict}",
        f"lhs = {_fmt(report.lhs)}",
        f"rhs = {_fmt(report.rhs)}",
        f"margin = {_fmt(report.margin)}",
        f"holds = {_bool(report.holds)}",
        f"regime = {report.regime.value}",
    ]
    if report.k is not None:
        lines.append(f"k = {report.k}")
    if report.rhs_limit is not None:
        lines.append(f"rhs_limit = {_fmt(report.rhs_limit)}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_fixed_point(args) -> int:
    scenario = _load(args.scenario)
    fp = analysis.fixed_point(scenario.consumer)
    if args.format == "json":
        _emit(json.dumps({"b_lambda": fp.b_lambda}) + "\n", args.output)
    else:
        _emit(f"b_lambda = {_fmt(fp.b_lambda)}\n", args.output)
    return 0


def cmd_sweep(args) -> int:
    scenario = _load(args.scenario)
    if (not isinstance(scenario.debt.schedule, ConstantSchedule)
            and args.axis != "g0" and args.year is None):
        print("error: --year is required for linear/explicit expenditure schedules",
              file=sys.stderr)
        return 2
    points = analysis.sweep(scenario, args.axis, args.grid, k=args.year)

    if args.format == "json":
        doc = []
        for p in points:
            entry = {"value": p.value, "final_D": p.final_debt, "error": p.error}
            if p.report is not None:
                entry.update(lhs=p.report.lhs, rhs=p.report.rhs,
                             margin=p.report.margin, holds=p.report.holds,
                             regime=p.report.regime.value)
            doc.append(entry)
        _emit(json.dumps(doc, indent=2) + "\n", args.output)
        return 0

    lines = ["value,lhs,rhs,margin,holds,final_D,error"]
    for p in points:
        if p.report is not None:
            lhs, rhs = _fmt(p.report.lhs), _fmt(p.report.rhs)
            margin, holds = _fmt(p.report.margin), _bool(p.report.holds)
        else:
            lhs = rhs = margin = holds = ""
        final = "" if p.final_debt is None else _fmt(p.final_debt)
        error = "" if p.error is None else p.error.replace(",", ";")
        lines.append(f"{_fmt(p.value)},{lhs},{rhs},{margin},{holds},{final},{error}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


# ---------------------------------------------------------------------------
# Parser / entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="debtdyn",
        description="Coupled consumer-budget / public-debt dynamics: simulate, "
                    "cross-check closed forms, and evaluate decrease conditions.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("scenario", help="path to a YAML scenario file")
    common.add_argument("-o", "--output", default=None,
                        help="output file (default: standard output)")
    common.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="output format (default: csv; non-tabular "
                             "subcommands print key = value text for csv)")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[common],
                       help="run the budget/debt recursion and emit the trajectory")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("closed-form", parents=[common],
                       help="closed-form debt series next to the recursion series "
                            "and their max relative deviation (assumes the budget "
                            "starts at the fixed point; requires beta=0, alpha=gamma)")
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("condition", parents=[common],
                       help="evaluate the strict debt-decrease condition "
                            "(verdict is data: exit 0 either way)")
    p.add_argument("-k", "--year", type=int, default=None,
                   help="evaluation year; required for linear/explicit schedules")
    p.set_defaults(func=cmd_condition)

    p = sub.add_parser("fixed-point", parents=[common],
                       help="print the consumer budget fixed point b_lambda")
    p.set_defaults(func=cmd_fixed_point)

    p = sub.add_parser("sweep", parents=[common],
                       help="decrease condition + terminal simulated debt across "
                            "a one-parameter grid")
    p.add_argument("--axis", required=True, choices=analysis.SWEEP_AXES,
                   help="parameter to sweep ('alpha' moves alpha and gamma together)")
    p.add_argument("--grid", required=True, type=parse_grid, help=_GRID_HELP)
    p.add_argument("-k", "--year", type=int, default=None,
                   help="condition year; required for linear/explicit schedules")
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (io.ParseError, io.ValidationError, ModelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:  # bad year/axis combinations are usage errors
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
