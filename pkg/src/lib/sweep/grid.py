"""
Evaluate the rate budget on a two-axis grid of configurations.
"""

import contextvars
import logging
from concurrent.futures import ThreadPoolExecutor

from src.lib.feasibility.solver import (
    OSCILLATOR_UNKNOWNS,
    binding_margin,
    selected_channels,
    with_unknown,
)
from src.models.budget_model import ChannelId
from src.models.experiment_model import ExperimentConfig
from src.models.feasibility_model import Unknown
from src.models.sweep_model import SweepCell, SweepGrid, SweepSpec
from src.utils.error_utils import ConfigurationError, GraventError
from src.utils.logging_utils import log_event


def config_at(
    base: ExperimentConfig, unknown1: Unknown, value1: float, unknown2: Unknown, value2: float
) -> ExperimentConfig:
    """Base config with both axis values applied; overlapping spheres raise DomainError."""
    return with_unknown(with_unknown(base, unknown1, value1), unknown2, value2)


def cell_margin(
    base: ExperimentConfig,
    unknown1: Unknown,
    value1: float,
    unknown2: Unknown,
    value2: float,
    channels: tuple[ChannelId, ...],
) -> tuple[float, ChannelId]:
    return binding_margin(config_at(base, unknown1, value1, unknown2, value2), channels)


def _evaluate_cell(
    spec: SweepSpec, channels: tuple[ChannelId, ...], i: int, j: int, v1: float, v2: float
) -> SweepCell:
    try:
        margin, channel = cell_margin(
            spec.base, spec.axis1.unknown, v1, spec.axis2.unknown, v2, channels
        )
    except (GraventError, OverflowError, ZeroDivisionError) as exc:
        return SweepCell(i=i, j=j, value1=v1, value2=v2, valid=False, error=str(exc))
    return SweepCell(
        i=i,
        j=j,
        value1=v1,
        value2=v2,
        feasible=margin > 1,
        min_margin=margin,
        binding_channel=channel,
    )


def run_sweep(spec: SweepSpec) -> SweepGrid:
    """
    Evaluate every cell of the grid exactly once.

    Cells run on ``spec.workers`` threads, each in a copy of the caller's
    context so constant overrides carry over. Results land in a preallocated
    grid, so the output does not depend on scheduling. Cells whose inputs fall
    outside a formula's domain are kept as invalid cells.

    Raises:
        ConfigurationError: if an axis or channel does not fit the base config
    """
    channels = selected_channels(spec.base, spec.channel_selection)
    for name, axis in (("axis1", spec.axis1), ("axis2", spec.axis2)):
        if axis.unknown in OSCILLATOR_UNKNOWNS and spec.base.oscillator is None:
            raise ConfigurationError(
                f"unknown {axis.unknown.value} needs an oscillator section", path=name
            )

    values1 = [float(v) for v in spec.axis1.values()]
    values2 = [float(v) for v in spec.axis2.values()]
    cells: list[list[SweepCell | None]] = [[None] * len(values2) for _ in values1]

    log_event(
        "sweep_start",
        logging.INFO,
        area="sweep",
        axis1=spec.axis1.unknown.value,
        axis2=spec.axis2.unknown.value,
        cells=len(values1) * len(values2),
        workers=spec.workers,
    )

    tasks = [(i, j, v1, v2) for i, v1 in enumerate(values1) for j, v2 in enumerate(values2)]
    with ThreadPoolExecutor(max_workers=spec.workers) as pool:
        futures = {
            pool.submit(
                contextvars.copy_context().run, _evaluate_cell, spec, channels, i, j, v1, v2
            ): (i, j)
            for i, j, v1, v2 in tasks
        }
        for future, (i, j) in futures.items():
            cells[i][j] = future.result()

    grid = SweepGrid(
        axis1=spec.axis1,
        axis2=spec.axis2,
        values1=values1,
        values2=values2,
        cells=cells,
    )
    invalid = grid.invalid_fraction
    if invalid:
        log_event(
            "sweep_invalid_cells",
            logging.WARNING,
            area="sweep",
            invalid_fraction=invalid,
            first_error=next(c.error for c in grid.flat_cells() if not c.valid),
        )
    log_event(
        "sweep_finished",
        logging.INFO,
        area="sweep",
        feasible=int(grid.feasible_mask().sum()),
        invalid_fraction=invalid,
    )
    return grid
