"""
Subcommand implementations. Each returns an ExitCode and writes its report
to ``out``; errors propagate to ``main`` for the exit-code mapping.
"""

import json
import logging
import math
from enum import IntEnum
from pathlib import Path
from typing import Optional, TextIO

import numpy as np

from src.cli.config_loader import load_sweep_spec
from src.cli.formatting import bound_text, budget_text, delocalization_text
from src.lib.feasibility.delocalization import required_delocalization
from src.lib.feasibility.paper_cases import validate_paper_examples
from src.lib.feasibility.report import (
    validation_json,
    validation_table,
    write_validation_csv,
)
from src.lib.feasibility.solver import evaluate, selected_channels, solve_bound
from src.lib.protocols.csign import csign_trace
from src.lib.protocols.gaussian import gaussian_init, oscillator_trace
from src.lib.protocols.trace_export import write_trace_csv
from src.lib.quantities.derived import mass
from src.lib.rates.budget import channel_rates, config_entanglement_rate
from src.lib.rates.entanglement import entanglement_rate
from src.lib.sweep.export import write_frontier_csv, write_grid_csv, write_svg
from src.lib.sweep.frontier import frontier
from src.lib.sweep.grid import run_sweep
from src.models.budget_model import CSIGN_CHANNELS, ChannelId
from src.models.experiment_model import ExperimentConfig, Protocol, RateMode
from src.models.feasibility_model import BoundResult, Unknown
from src.models.protocol_model import SimTrace
from src.models.sweep_model import Frontier
from src.utils.error_utils import BracketError, ConfigurationError, FrontierError
from src.utils.format_utils import engineering
from src.utils.logging_utils import log_event

ONSET_THRESHOLD = 1e-6
OSCILLATOR_DEFAULT_PERIODS = 10


class ExitCode(IntEnum):
    OK = 0
    INFEASIBLE = 1
    CONFIGURATION = 2
    NUMERICAL = 3


def cmd_report(config: ExperimentConfig, out: TextIO, json_mode: bool = False) -> ExitCode:
    budget = evaluate(config)
    if json_mode:
        out.write(budget.model_dump_json(indent=2) + "\n")
    else:
        out.write(budget_text(budget, config.protocol.value) + "\n")
    return ExitCode.OK if budget.feasible else ExitCode.INFEASIBLE


def cmd_bounds(
    config: ExperimentConfig,
    unknown: Unknown,
    channel: Optional[str],
    out: TextIO,
    json_mode: bool = False,
) -> ExitCode:
    """
    Solve for one unknown.

    ``channel`` names one channel, ``"all"`` takes the minimum margin over
    every channel of the protocol, and None solves channel by channel.
    """
    if channel is not None:
        chosen = None if channel == "all" else [ChannelId(channel)]
        result = solve_bound(config, unknown, chosen)
        out.write((result.model_dump_json(indent=2) if json_mode else bound_text(result)) + "\n")
        return ExitCode.OK

    if unknown is Unknown.DELTA_X:
        result = required_delocalization(config)
        if json_mode:
            out.write(result.model_dump_json(indent=2) + "\n")
        else:
            out.write(delocalization_text(result) + "\n")
        return ExitCode.OK if result.feasible else ExitCode.INFEASIBLE

    results: list[BoundResult | BracketError] = []
    for each in selected_channels(config, None):
        try:
            results.append(solve_bound(config, unknown, [each]))
        except BracketError as exc:
            results.append(exc)

    channels = selected_channels(config, None)
    if json_mode:
        payload = [
            result.model_dump(mode="json")
            if isinstance(result, BoundResult)
            else {"channel": each.value, "no_crossing": result.kind}
            for each, result in zip(channels, results)
        ]
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        for each, result in zip(channels, results):
            if isinstance(result, BoundResult):
                out.write(bound_text(result) + "\n")
            else:
                out.write(f"{each.value}: no crossing ({result.kind.replace('_', ' ')})\n")

    if not any(isinstance(result, BoundResult) for result in results):
        raise results[0]
    return ExitCode.OK


def cmd_sweep(
    config: ExperimentConfig,
    spec_path: Path,
    out_dir: Path,
    out: TextIO,
    json_mode: bool = False,
    workers: Optional[int] = None,
) -> ExitCode:
    spec = load_sweep_spec(spec_path, config)
    if workers is not None:
        if workers < 1:
            raise ConfigurationError("workers must be at least 1", path="workers")
        spec = spec.model_copy(update={"workers": workers})

    grid = run_sweep(spec)
    try:
        front = frontier(grid, spec.base, spec.channel_selection)
    except FrontierError as exc:
        log_event("frontier_missing", logging.WARNING, area="sweep", reason=str(exc))
        front = Frontier(unknown1=spec.axis1.unknown, unknown2=spec.axis2.unknown)

    written: list[str] = []
    if "grid_csv" in spec.outputs:
        write_grid_csv(grid, out_dir / "grid.csv")
        written.append(str(out_dir / "grid.csv"))
    if "frontier_csv" in spec.outputs:
        write_frontier_csv(front, out_dir / "frontier.csv")
        written.append(str(out_dir / "frontier.csv"))
    if "svg" in spec.outputs:
        write_svg(grid, front, out_dir / "feasibility.svg")
        written.append(str(out_dir / "feasibility.svg"))

    summary = {
        "cells": grid.cell_count,
        "feasible_cells": int(grid.feasible_mask().sum()),
        "invalid_fraction": grid.invalid_fraction,
        "frontier_points": len(front.points),
        "files": written,
    }
    if json_mode:
        out.write(json.dumps(summary, indent=2) + "\n")
    else:
        out.write(
            f"cells: {summary['cells']}  feasible: {summary['feasible_cells']}  "
            f"invalid: {summary['invalid_fraction']:.1%}\n"
            f"frontier points: {summary['frontier_points']}\n"
        )
        if not front.points:
            out.write("warning: no feasibility frontier in this grid\n")
        for path in written:
            out.write(f"wrote {path}\n")
    return ExitCode.OK


def simulate_trace(
    config: ExperimentConfig,
    protocol: Protocol,
    t_max: Optional[float],
    samples: int,
    coupling: Optional[float] = None,
) -> SimTrace:
    """
    Run one protocol simulator on ``samples`` evenly spaced times.

    CSIGN dephases each particle at the summed CSIGN channel rate. The
    oscillator protocol couples the modes at ``coupling`` (the entanglement
    rate by default).
    """
    if samples < 2:
        raise ConfigurationError("need at least two samples", path="samples")
    if t_max is not None and t_max <= 0:
        raise ConfigurationError("t-max must be positive", path="t_max")

    if protocol is Protocol.CSIGN_PHASE:
        m = mass(config.body, config.mass_mode)
        rates = channel_rates(config)
        gamma_dec = sum(rates[channel] for channel in CSIGN_CHANNELS)
        if t_max is None:
            rate = entanglement_rate(m, config.distance, config.geometry.delta_x, RateMode.EXACT)
            if rate == 0:
                raise ConfigurationError("delta_x is 0; give --t-max", path="t_max")
            t_max = math.pi / (2 * rate)
        times = np.linspace(0.0, t_max, samples)
        return csign_trace(m, config.distance, config.geometry.delta_x, gamma_dec, times)

    if config.oscillator is None:
        raise ConfigurationError("the oscillator protocol needs an oscillator section", path="oscillator")
    osc = config.oscillator
    g = coupling if coupling is not None else config_entanglement_rate(config)
    if t_max is None:
        t_max = OSCILLATOR_DEFAULT_PERIODS * 2 * math.pi / osc.omega0
    times = np.linspace(0.0, t_max, samples)
    return oscillator_trace(
        gaussian_init(osc.nbar, osc.eta),
        osc.omega0,
        g,
        osc.gamma,
        config.environment.temperature,
        times,
    )


def cmd_simulate(
    config: ExperimentConfig,
    protocol: Optional[Protocol],
    t_max: Optional[float],
    samples: int,
    out_path: Path,
    out: TextIO,
    json_mode: bool = False,
    coupling: Optional[float] = None,
) -> ExitCode:
    protocol = protocol or config.protocol
    trace = simulate_trace(config, protocol, t_max, samples, coupling)
    write_trace_csv(trace, out_path)
    onset = trace.onset(ONSET_THRESHOLD)

    if json_mode:
        payload = {
            "protocol": protocol.value,
            "samples": len(trace.times),
            "onset_s": onset,
            "max_measure": float(trace.measure.max()),
            "measure": trace.measure_name,
            "out": str(out_path),
        }
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(f"entanglement onset: {engineering(onset, 's') if onset is not None else 'none'}\n")
        out.write(f"wrote {out_path}\n")
    return ExitCode.OK


def cmd_validate(
    out: TextIO, json_mode: bool = False, csv_path: Optional[Path] = None
) -> ExitCode:
    rows = validate_paper_examples()
    if csv_path is not None:
        write_validation_csv(rows, csv_path)
    out.write((validation_json(rows) if json_mode else validation_table(rows)) + "\n")
    return ExitCode.OK if all(row.passed for row in rows) else ExitCode.INFEASIBLE
