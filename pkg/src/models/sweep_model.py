"""
Two-axis parameter sweep models.
"""

from enum import StrEnum
from typing import List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.models.budget_model import ChannelId
from src.models.experiment_model import ExperimentConfig
from src.models.feasibility_model import Unknown


class AxisScale(StrEnum):
    LOG = "log"
    LINEAR = "linear"


class Axis(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    unknown: Unknown
    min: float
    max: float
    points: int = Field(..., ge=2)
    scale: AxisScale = AxisScale.LOG

    @model_validator(mode="after")
    def _ordered_range(self) -> "Axis":
        if not self.min < self.max:
            raise ValueError("axis needs min < max")
        if self.scale is AxisScale.LOG and self.min <= 0:
            raise ValueError("log axis needs min > 0")
        return self

    def values(self) -> np.ndarray:
        if self.scale is AxisScale.LOG:
            return np.geomspace(self.min, self.max, self.points)
        return np.linspace(self.min, self.max, self.points)


SweepOutput = Literal["grid_csv", "frontier_csv", "svg"]


class SweepSpec(BaseModel):
    """A base configuration and two axes to vary over it."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    base: ExperimentConfig
    axis1: Axis
    axis2: Axis
    channels: Union[Literal["all"], List[ChannelId]] = "all"
    outputs: List[SweepOutput] = Field(
        default_factory=lambda: ["grid_csv", "frontier_csv", "svg"]
    )
    workers: int = Field(1, ge=1, description="Thread count for cell evaluation")

    @field_validator("channels")
    @classmethod
    def _non_empty(cls, value):
        if isinstance(value, list) and not value:
            raise ValueError("channels must be 'all' or a non-empty list")
        return value

    @model_validator(mode="after")
    def _distinct_axes(self) -> "SweepSpec":
        if self.axis1.unknown is self.axis2.unknown:
            raise ValueError("axis1 and axis2 must vary different unknowns")
        return self

    @property
    def channel_selection(self) -> Optional[List[ChannelId]]:
        return None if self.channels == "all" else list(self.channels)

    def swapped(self) -> "SweepSpec":
        return self.model_copy(update={"axis1": self.axis2, "axis2": self.axis1})


class SweepCell(BaseModel):
    model_config = ConfigDict(frozen=True, ser_json_inf_nan="null")

    i: int
    j: int
    value1: float
    value2: float
    valid: bool = True
    feasible: bool = False
    min_margin: Optional[float] = None
    binding_channel: Optional[ChannelId] = None
    error: Optional[str] = None


class SweepGrid(BaseModel):
    """Cells indexed [i][j] with i along axis1 and j along axis2."""

    model_config = ConfigDict(frozen=True, ser_json_inf_nan="null")

    axis1: Axis
    axis2: Axis
    values1: List[float]
    values2: List[float]
    cells: List[List[SweepCell]]

    @model_validator(mode="after")
    def _dimensions(self) -> "SweepGrid":
        if len(self.values1) != self.axis1.points or len(self.values2) != self.axis2.points:
            raise ValueError("axis values do not match the axis point counts")
        if len(self.cells) != len(self.values1) or any(
            len(column) != len(self.values2) for column in self.cells
        ):
            raise ValueError("cell array does not match the axes")
        return self

    @property
    def cell_count(self) -> int:
        return len(self.values1) * len(self.values2)

    def flat_cells(self) -> list[SweepCell]:
        return [cell for column in self.cells for cell in column]

    @property
    def invalid_fraction(self) -> float:
        return sum(not c.valid for c in self.flat_cells()) / self.cell_count

    def feasible_mask(self) -> np.ndarray:
        return np.array([[c.valid and c.feasible for c in column] for column in self.cells])

    def margin_array(self) -> np.ndarray:
        return np.array(
            [
                [c.min_margin if c.valid and c.min_margin is not None else np.nan for c in column]
                for column in self.cells
            ],
            dtype=float,
        )


class FrontierPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    value1: float
    value2: float


class Frontier(BaseModel):
    model_config = ConfigDict(frozen=True)

    unknown1: Unknown
    unknown2: Unknown
    points: List[FrontierPoint] = Field(default_factory=list)
    skipped_columns: List[int] = Field(default_factory=list)
