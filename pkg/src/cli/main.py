"""
Command-line entry point: ``gravent <command> [options]``.

Exit codes: 0 success or feasible, 1 completed but infeasible (or a failed
validation row), 2 invalid configuration, 3 domain, state or numerical
failure.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence, TextIO

from src.cli.commands import (
    ExitCode,
    cmd_bounds,
    cmd_report,
    cmd_simulate,
    cmd_sweep,
    cmd_validate,
)
from src.cli.config_loader import load_config
from src.models.budget_model import ChannelId
from src.models.experiment_model import Protocol
from src.models.feasibility_model import Unknown
from src.utils.error_utils import (
    ConfigurationError,
    DomainError,
    NumericalError,
    StateError,
    structured_error_message,
)
from src.utils.logging_utils import ensure_logging_configured, log_event


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Machine-readable output.")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--quiet", action="store_true", help="Log errors only.")
    verbosity.add_argument("--verbose", action="store_true", help="Log debug events.")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="gravent",
        description="Rate budgets and feasibility bounds for gravitational-entanglement experiments.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    report = commands.add_parser("report", parents=[common], help="Print the rate budget.")
    report.add_argument("config", type=Path)

    bounds = commands.add_parser("bounds", parents=[common], help="Solve for one unknown.")
    bounds.add_argument("config", type=Path)
    bounds.add_argument("--unknown", required=True, choices=[u.value for u in Unknown])
    channel = bounds.add_mutually_exclusive_group()
    channel.add_argument(
        "--channel",
        choices=[c.value for c in ChannelId] + ["all"],
        help="One channel, or 'all' for the minimum over every channel (default: one by one).",
    )
    channel.add_argument(
        "--all-channels",
        action="store_const",
        const="all",
        dest="channel",
        help="Same as --channel all.",
    )

    sweep = commands.add_parser("sweep", parents=[common], help="Two-axis grid scan.")
    sweep.add_argument("config", type=Path)
    sweep.add_argument("sweep_spec", type=Path)
    sweep.add_argument("--out", type=Path, default=Path("."), help="Output directory.")
    sweep.add_argument("--workers", type=int, help="Override the sweep file's thread count.")

    simulate = commands.add_parser("simulate", parents=[common], help="Run a protocol simulator.")
    simulate.add_argument("config", type=Path)
    simulate.add_argument("--protocol", choices=[p.value for p in Protocol])
    simulate.add_argument("--t-max", type=float, dest="t_max", help="Horizon [s].")
    simulate.add_argument("--samples", type=int, default=101)
    simulate.add_argument("--coupling", type=float, help="Oscillator coupling g [1/s].")
    simulate.add_argument("--out", type=Path, default=Path("trace.csv"))

    validate = commands.add_parser("validate", parents=[common], help="Recompute the worked numbers.")
    validate.add_argument("--csv", type=Path, help="Also write the table as CSV.")

    return parser


def _log_level(args: argparse.Namespace) -> int:
    if args.verbose:
        return logging.DEBUG
    if args.quiet:
        return logging.ERROR
    return logging.WARNING


def _dispatch(args: argparse.Namespace, out: TextIO) -> ExitCode:
    if args.command == "validate":
        return cmd_validate(out, args.json, args.csv)

    config = load_config(args.config)
    match args.command:
        case "report":
            return cmd_report(config, out, args.json)
        case "bounds":
            return cmd_bounds(config, Unknown(args.unknown), args.channel, out, args.json)
        case "sweep":
            return cmd_sweep(config, args.sweep_spec, args.out, out, args.json, args.workers)
        case "simulate":
            protocol = Protocol(args.protocol) if args.protocol else None
            return cmd_simulate(
                config, protocol, args.t_max, args.samples, args.out, out, args.json, args.coupling
            )
    raise ConfigurationError(f"unknown command {args.command!r}")


def _report_error(exc: Exception, json_mode: bool, out: TextIO) -> None:
    if json_mode:
        out.write(structured_error_message(exc) + "\n")
    else:
        print(f"error: {exc}", file=sys.stderr)


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, matching the configuration code
        return int(exc.code or 0)

    ensure_logging_configured(_log_level(args))
    log_event("command_start", logging.DEBUG, area="cli", command=args.command)

    try:
        code = _dispatch(args, out)
    except ConfigurationError as exc:
        _report_error(exc, args.json, out)
        code = ExitCode.CONFIGURATION
    except (DomainError, StateError, NumericalError, OSError) as exc:
        _report_error(exc, args.json, out)
        code = ExitCode.NUMERICAL

    log_event("command_exit", logging.DEBUG, area="cli", command=args.command, exit_code=int(code))
    return int(code)


# python -m src.cli.main validate
if __name__ == "__main__":
    sys.exit(main())
