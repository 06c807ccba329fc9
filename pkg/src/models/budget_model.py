"""
Rate-budget models: one entanglement rate against the decoherence channels.
"""

import math
from enum import StrEnum
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field


class ChannelId(StrEnum):
    GAS_SCATTERING = "gas"
    BLACKBODY_SCATTER = "bb_scatter"
    BLACKBODY_EMISSION = "bb_emission"
    BLACKBODY_ABSORPTION = "bb_absorption"
    THERMAL_DISSIPATION = "thermal_dissipation"
    POSITION_NOISE = "position_noise"
    FREQUENCY_NOISE = "frequency_noise"
    THERMAL_OCCUPATION = "thermal_occupation"


CSIGN_CHANNELS: tuple[ChannelId, ...] = (
    ChannelId.GAS_SCATTERING,
    ChannelId.BLACKBODY_SCATTER,
    ChannelId.BLACKBODY_EMISSION,
    ChannelId.BLACKBODY_ABSORPTION,
)

OSCILLATOR_ONLY_CHANNELS: tuple[ChannelId, ...] = (
    ChannelId.THERMAL_DISSIPATION,
    ChannelId.POSITION_NOISE,
    ChannelId.FREQUENCY_NOISE,
    ChannelId.THERMAL_OCCUPATION,
)

OSCILLATOR_CHANNELS = CSIGN_CHANNELS + OSCILLATOR_ONLY_CHANNELS


RegimeCode = Literal[
    "delta_x_exceeds_distance",
    "delta_x_below_gas_wavelength",
    "delta_x_exceeds_photon_wavelength",
    "delta_x_differs_from_eta_sigma0",
]


class RegimeWarning(BaseModel):
    """A formula is being applied outside the regime it was derived for.

    Warnings are advisory; they never change a computed rate.
    """

    model_config = ConfigDict(frozen=True)

    code: RegimeCode
    channel: Optional[ChannelId] = None
    message: str


class ChannelRate(BaseModel):
    model_config = ConfigDict(frozen=True, ser_json_inf_nan="null")

    channel: ChannelId
    rate: float = Field(..., ge=0, description="Decoherence rate [s^-1]")
    margin: float = Field(
        ..., ge=0, description="gamma_ent / rate; infinite when the rate is zero"
    )

    @computed_field
    @property
    def margin_infinite(self) -> bool:
        return math.isinf(self.margin)


class RateBudget(BaseModel):
    """Entanglement rate, per-channel decoherence rates and their margins."""

    model_config = ConfigDict(frozen=True, ser_json_inf_nan="null")

    gamma_ent: float = Field(..., ge=0, description="Entanglement rate [s^-1]")
    channels: List[ChannelRate]
    binding_channel: ChannelId = Field(
        ..., description="Channel with the smallest margin"
    )
    feasible: bool
    comparison_mode: Literal["paper", "aggregate"] = "paper"
    total_rate: Optional[float] = Field(
        None, description="Sum of channel rates (aggregate mode only)"
    )
    aggregate_margin: Optional[float] = Field(
        None, description="gamma_ent / total_rate (aggregate mode only)"
    )
    log_negativity: Optional[float] = Field(
        None, description="Closed-form E_N estimate (oscillator protocol only)"
    )
    warnings: List[RegimeWarning] = Field(default_factory=list)

    def channel(self, channel: ChannelId) -> ChannelRate:
        for entry in self.channels:
            if entry.channel is channel:
                return entry
        raise KeyError(channel)

    def min_margin(self, channels: Optional[tuple[ChannelId, ...] | list[ChannelId]] = None) -> float:
        selected = [c for c in self.channels if channels is None or c.channel in channels]
        return min(c.margin for c in selected)
