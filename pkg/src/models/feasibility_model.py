"""
Bound-inversion and validation-suite models.
"""

import math
from enum import StrEnum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from src.models.budget_model import ChannelId

VALIDATION_SCHEMA_VERSION = 1


class Unknown(StrEnum):
    DELTA_X = "delta_x"
    PRESSURE = "pressure"
    TEMP_ENVIRONMENT = "temp_environment"
    TEMP_INTERNAL = "temp_internal"
    RADIUS = "radius"
    GAMMA = "gamma"
    POS_NOISE_AMP = "pos_noise_amp"
    FREQ_NOISE_AMP = "freq_noise_amp"
    NBAR = "nbar"


UNKNOWN_UNITS: dict[Unknown, str] = {
    Unknown.DELTA_X: "m",
    Unknown.PRESSURE: "Pa",
    Unknown.TEMP_ENVIRONMENT: "K",
    Unknown.TEMP_INTERNAL: "K",
    Unknown.RADIUS: "m",
    Unknown.GAMMA: "s^-1",
    Unknown.POS_NOISE_AMP: "m^2/Hz",
    Unknown.FREQ_NOISE_AMP: "1/Hz",
    Unknown.NBAR: "",
}


class Direction(StrEnum):
    """Whether feasibility needs the unknown above or below the threshold."""

    UPPER_BOUND = "upper_bound"
    LOWER_BOUND = "lower_bound"


class BoundResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    unknown: Unknown
    threshold: float = Field(..., gt=0, description="Value where the binding margin is 1")
    direction: Direction
    channel: ChannelId = Field(..., description="Channel binding at the threshold")
    bracket: tuple[float, float]
    iterations: int = Field(..., ge=0)

    @property
    def unit(self) -> str:
        return UNKNOWN_UNITS[self.unknown]


class ChannelBound(BaseModel):
    """One row of the delocalization table.

    ``delta_x_min`` is set when the channel rate does not grow with dx, so
    the entanglement rate crosses it at a finite dx. Channels whose rate also
    scales as dx^2 only pass or fail, unless the exact rate bends the ratio
    into an upper bound ``delta_x_max``.
    """

    model_config = ConfigDict(frozen=True)

    channel: ChannelId
    delta_x_min: Optional[float] = None
    delta_x_max: Optional[float] = None
    passes: bool


class DelocalizationResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    delta_x_min: Optional[float] = Field(
        None, description="Largest per-channel lower bound on dx [m]"
    )
    binding_channel: Optional[ChannelId] = None
    table: List[ChannelBound]
    infeasible_channels: List[ChannelId] = Field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return not self.infeasible_channels


class ValidationRow(BaseModel):
    """A worked number recomputed and compared within a multiplicative factor."""

    model_config = ConfigDict(frozen=True)

    case_id: str
    quantity: str
    unit: str = ""
    paper_value: float = Field(..., gt=0)
    computed_value: float
    tolerance_factor: float = Field(2.0, gt=1)
    assumptions: str = ""

    @computed_field
    @property
    def ratio(self) -> float:
        return self.computed_value / self.paper_value

    @computed_field(alias="pass")
    @property
    def passed(self) -> bool:
        ratio = self.ratio
        if not math.isfinite(ratio) or ratio <= 0:
            return False
        return 1.0 / self.tolerance_factor <= ratio <= self.tolerance_factor

    @model_validator(mode="after")
    def _finite_value(self) -> "ValidationRow":
        if math.isnan(self.computed_value):
            raise ValueError(f"{self.case_id}: computed value is NaN")
        return self


class ValidationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    schema_version: int = VALIDATION_SCHEMA_VERSION
    rows: List[ValidationRow]

    @computed_field
    @property
    def all_passed(self) -> bool:
        return all(row.passed for row in self.rows)
