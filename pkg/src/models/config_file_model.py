"""
Schema of the JSON experiment configuration read by the command line.

Field names carry their unit. Unknown keys are rejected, and numeric fields
accept JSON numbers only: ``"1e-15"`` and ``"1e-15 Pa"`` are both errors.
"""

import math
import re
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, model_validator

from src.lib.quantities.constants import mbar_to_pa
from src.models.experiment_model import (
    ComparisonMode,
    MassMode,
    Protocol,
    RateMode,
)

_MBAR = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*mbar\s*$")


def _strict_number(value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError(f"expected a JSON number, got {value!r}")
    return value


Number = Annotated[float, BeforeValidator(_strict_number)]


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class BodySection(_Section):
    radius_m: Number = Field(..., gt=0)
    density_kg_m3: Number = Field(..., gt=0)
    chi_re: Number = Field(1.0, ge=0, le=1)
    chi_im: Number = Field(1.0, ge=0, le=1)
    temp_internal_K: Number = Field(0.0, ge=0)


class GeometrySection(_Section):
    alpha: Optional[Number] = Field(None, gt=1)
    distance_m: Optional[Number] = Field(None, gt=0)
    delta_x_m: Optional[Number] = Field(
        None, ge=0, description="Omit for the oscillator protocol to use eta * sigma0"
    )

    @model_validator(mode="after")
    def _one_spacing(self) -> "GeometrySection":
        if (self.alpha is None) == (self.distance_m is None):
            raise ValueError("give exactly one of alpha and distance_m")
        return self


class GasMass(_Section):
    mass_kg: Number = Field(..., gt=0)


class PositionNoiseSection(_Section):
    asd_m_per_sqrthz: Number = Field(..., ge=0)
    ref_freq_hz: Number = Field(..., gt=0)
    scaling: Number = Field(2.0, description="ASD falls off as f^-scaling")


class FrequencyNoiseSection(_Section):
    asd_per_sqrthz: Number = Field(..., ge=0)
    ref_freq_hz: Number = Field(..., gt=0)
    scaling: Number = 0.0


class EnvironmentSection(_Section):
    pressure_Pa: Optional[Number] = Field(None, ge=0)
    pressure_mbar: Optional[str] = Field(None, description='String form "1e-17 mbar"')
    temp_K: Number = Field(0.0, ge=0)
    gas: Union[Literal["H2", "He"], GasMass] = "H2"
    pos_noise: Optional[PositionNoiseSection] = None
    freq_noise: Optional[FrequencyNoiseSection] = None

    @model_validator(mode="after")
    def _one_pressure(self) -> "EnvironmentSection":
        if self.pressure_Pa is not None and self.pressure_mbar is not None:
            raise ValueError("pressure_Pa and pressure_mbar are mutually exclusive")
        if self.pressure_mbar is not None:
            match = _MBAR.match(self.pressure_mbar)
            if match is None or float(match.group(1)) < 0:
                raise ValueError(
                    f"pressure_mbar must look like \"1e-17 mbar\", got {self.pressure_mbar!r}"
                )
        return self

    @property
    def pressure(self) -> float:
        if self.pressure_mbar is not None:
            match = _MBAR.match(self.pressure_mbar)
            assert match is not None
            return mbar_to_pa(float(match.group(1)))
        return self.pressure_Pa or 0.0


class OscillatorSection(_Section):
    freq_hz: Optional[Number] = Field(None, gt=0)
    omega0_rad_s: Optional[Number] = Field(None, gt=0)
    gamma_hz: Number = Field(0.0, ge=0, description="Damping rate, read as s^-1")
    nbar: Number = Field(0.0, ge=0)
    eta: Optional[Number] = Field(None, ge=1)

    @model_validator(mode="after")
    def _one_frequency(self) -> "OscillatorSection":
        if (self.freq_hz is None) == (self.omega0_rad_s is None):
            raise ValueError("give exactly one of freq_hz and omega0_rad_s")
        return self

    @property
    def omega0(self) -> float:
        if self.omega0_rad_s is not None:
            return self.omega0_rad_s
        assert self.freq_hz is not None
        return 2 * math.pi * self.freq_hz


class ModesSection(_Section):
    mass: MassMode = MassMode.PAPER_APPROX
    rate: RateMode = RateMode.PAPER_APPROX
    comparison: ComparisonMode = ComparisonMode.PAPER_COMPARISON


class ConfigFile(_Section):
    body: BodySection
    geometry: GeometrySection
    environment: EnvironmentSection = Field(default_factory=EnvironmentSection)
    oscillator: Optional[OscillatorSection] = None
    protocol: Protocol = Protocol.CSIGN_PHASE
    modes: ModesSection = Field(default_factory=ModesSection)

    @model_validator(mode="after")
    def _protocol_sections(self) -> "ConfigFile":
        if self.protocol is Protocol.COUPLED_OSCILLATORS and self.oscillator is None:
            raise ValueError("protocol \"oscillator\" needs an oscillator section")
        if self.geometry.delta_x_m is None:
            if self.oscillator is None or self.oscillator.eta is None:
                raise ValueError(
                    "geometry.delta_x_m may only be omitted when oscillator.eta is given"
                )
        return self
