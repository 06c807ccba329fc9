import logging
from typing import Iterable, Optional

from src.lib.feasibility.solver import selected_channels, solve_bound
from src.lib.quantities.derived import ground_state_size, mass
from src.models.budget_model import ChannelId
from src.models.experiment_model import ExperimentConfig
from src.models.feasibility_model import (
    ChannelBound,
    DelocalizationResult,
    Direction,
    Unknown,
)
from src.utils.error_utils import BracketError, DomainError
from src.utils.logging_utils import log_event


def required_delocalization(
    config: ExperimentConfig, channels: Optional[Iterable[ChannelId]] = None
) -> DelocalizationResult:
    """
    Smallest superposition size (or wavepacket extension) that beats every
    channel taken on its own.

    Channels with a dx-independent rate give a finite lower bound. Channels
    whose rate scales like the entanglement rate pass or fail at every dx and
    are reported that way.
    """
    table: list[ChannelBound] = []
    for channel in selected_channels(config, channels):
        try:
            bound = solve_bound(config, Unknown.DELTA_X, [channel])
        except BracketError as exc:
            table.append(
                ChannelBound(channel=channel, passes=exc.kind == "feasible_everywhere")
            )
            continue
        if bound.direction is Direction.LOWER_BOUND:
            table.append(
                ChannelBound(channel=channel, delta_x_min=bound.threshold, passes=True)
            )
        else:
            table.append(
                ChannelBound(channel=channel, delta_x_max=bound.threshold, passes=True)
            )

    lower = [row for row in table if row.delta_x_min is not None]
    delta_x_min = max((row.delta_x_min for row in lower), default=None)
    binding = max(lower, key=lambda row: row.delta_x_min).channel if lower else None

    infeasible = [row.channel for row in table if not row.passes]
    for row in table:
        # An upper bound below the lower bound leaves no window
        if row.delta_x_max is not None and delta_x_min is not None and row.delta_x_max <= delta_x_min:
            infeasible.append(row.channel)

    log_event(
        "delocalization_solved",
        logging.INFO,
        area="solver",
        delta_x_min=delta_x_min,
        binding_channel=binding.value if binding else None,
        infeasible=[c.value for c in infeasible],
    )
    return DelocalizationResult(
        delta_x_min=delta_x_min,
        binding_channel=binding,
        table=table,
        infeasible_channels=infeasible,
    )


def ground_state_size_of(config: ExperimentConfig) -> float:
    osc = config.require_oscillator()
    return ground_state_size(mass(config.body, config.mass_mode), osc.omega0)


def eta_required(config: ExperimentConfig, delta_x_min: float) -> float:
    """Wavepacket expansion dx_min / sigma0 needed to reach ``delta_x_min``."""
    if delta_x_min <= 0:
        raise DomainError(f"delta_x_min must be positive, got {delta_x_min!r}")
    return delta_x_min / ground_state_size_of(config)
