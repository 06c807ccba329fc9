"""
Experiment models with validation: the bodies, environment, geometry and
oscillator parameters shared by every rate and protocol module.

All quantities are SI. Serialized field names (aliases) carry their unit.
Noise spectra and the rest gas also accept the config-file forms of the
command line (ASD sections referenced in Hz, "H2" / "He" / {"mass_kg": m})
and store them in SI.
"""

import math
from enum import StrEnum
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.lib.quantities.constants import HE4_MASS_KG, get_constants
from src.utils.error_utils import DomainError


class Protocol(StrEnum):
    CSIGN_PHASE = "csign"
    COUPLED_OSCILLATORS = "oscillator"


class MassMode(StrEnum):
    PAPER_APPROX = "paper"
    EXACT_SPHERE = "exact"


class RateMode(StrEnum):
    PAPER_APPROX = "paper"
    EXACT = "exact"


class ComparisonMode(StrEnum):
    PAPER_COMPARISON = "paper"
    AGGREGATE = "aggregate"


_FROZEN = ConfigDict(frozen=True, populate_by_name=True)


class NoiseModel(BaseModel):
    """Power-law trap-noise spectrum.

    ``amplitude`` is the PSD at ``ref_omega``. ``scaling_exponent`` is the
    exponent of the amplitude spectral density, so the PSD falls off with
    twice that exponent.
    """

    model_config = _FROZEN

    amplitude: float = Field(
        0.0, ge=0, alias="psd", description="PSD value at the reference frequency"
    )
    ref_omega: float = Field(
        1.0, gt=0, alias="ref_omega_rad_s", description="Reference angular frequency"
    )
    scaling_exponent: float = Field(
        0.0, alias="scaling", description="ASD power-law exponent"
    )

    def evaluate(self, omega: float) -> float:
        if omega <= 0:
            raise DomainError(f"noise spectrum needs omega > 0, got {omega!r}")
        if self.amplitude == 0.0:
            return 0.0
        return self.amplitude * (self.ref_omega / omega) ** (2 * self.scaling_exponent)

    @classmethod
    def from_asd(
        cls, asd: float, ref_omega: float, scaling_exponent: float
    ) -> "NoiseModel":
        return cls(
            amplitude=asd * asd, ref_omega=ref_omega, scaling_exponent=scaling_exponent
        )


def position_noise(asd: float = 0.0, ref_omega: float = 1.0) -> NoiseModel:
    """Position noise with the 1/omega^2 amplitude fall-off of a quiet lab."""
    return NoiseModel.from_asd(asd, ref_omega, 2.0)


def frequency_noise(asd: float = 0.0, ref_omega: float = 1.0) -> NoiseModel:
    """Fractional frequency noise, flat in frequency."""
    return NoiseModel.from_asd(asd, ref_omega, 0.0)


_ASD_KEYS = ("asd_m_per_sqrthz", "asd_per_sqrthz")

OVERLAP_MESSAGE = "spheres overlap: centre-of-mass distance must exceed 2R (alpha > 1)"


def noise_from_section(value: Any, default_scaling: float) -> Any:
    """Turn a config-file noise section into a NoiseModel; other input passes through."""
    if not isinstance(value, dict) or "ref_freq_hz" not in value:
        return value
    asd = next((value[key] for key in _ASD_KEYS if key in value), None)
    if asd is None:
        raise ValueError(f"noise section needs one of {', '.join(_ASD_KEYS)}")
    ref_freq = value["ref_freq_hz"]
    scaling = value.get("scaling", default_scaling)
    if not all(isinstance(x, (int, float)) for x in (asd, ref_freq, scaling)):
        raise ValueError("noise section values must be numbers")
    if asd < 0 or ref_freq <= 0:
        raise ValueError("noise section needs asd >= 0 and ref_freq_hz > 0")
    return NoiseModel.from_asd(asd, 2 * math.pi * ref_freq, scaling)


def gas_mass_of(gas: Any) -> Any:
    """Molecule mass of a rest-gas entry: "H2", "He", {"mass_kg": m} or a mass."""
    if isinstance(gas, dict) and set(gas) == {"mass_kg"}:
        return gas["mass_kg"]
    if gas == "H2":
        return get_constants().m_H2
    if gas == "He":
        return HE4_MASS_KG
    return gas


class Body(BaseModel):
    """One source/test mass. Both masses of a pair are identical."""

    model_config = _FROZEN

    radius: float = Field(..., gt=0, alias="radius_m", description="Sphere radius [m]")
    density: float = Field(
        ..., gt=0, alias="density_kg_m3", description="Material density [kg m^-3]"
    )
    chi_re: float = Field(
        1.0,
        ge=0,
        le=1,
        alias="chi_re",
        description="Re{(eps-1)/(eps+2)}; 1 is the large-dispersion worst case",
    )
    chi_im: float = Field(
        1.0,
        ge=0,
        le=1,
        alias="chi_im",
        description="Im{(eps-1)/(eps+2)}; 1 is the strong-absorption worst case",
    )
    temp_internal: float = Field(
        0.0, ge=0, alias="temp_internal_K", description="Internal temperature T_i [K]"
    )


class Environment(BaseModel):
    model_config = _FROZEN

    pressure: float = Field(0.0, ge=0, alias="pressure_Pa", description="Gas pressure [Pa]")
    temperature: float = Field(
        0.0, ge=0, alias="temp_K", description="Environment temperature T_e [K]"
    )
    gas_mass: float = Field(
        default_factory=lambda: get_constants().m_H2,
        gt=0,
        alias="gas",
        description="Rest-gas molecule mass [kg]; hydrogen by default",
    )
    pos_noise: NoiseModel = Field(
        default_factory=position_noise,
        alias="pos_noise",
        description="Trap position noise S_x [m^2 Hz^-1]",
    )
    freq_noise: NoiseModel = Field(
        default_factory=frequency_noise,
        alias="freq_noise",
        description="Fractional trap frequency noise S_omega [Hz^-1]",
    )

    @field_validator("gas_mass", mode="before")
    @classmethod
    def _gas_species(cls, value: Any) -> Any:
        return gas_mass_of(value)

    @field_validator("pos_noise", mode="before")
    @classmethod
    def _pos_noise_section(cls, value: Any) -> Any:
        return noise_from_section(value, 2.0)

    @field_validator("freq_noise", mode="before")
    @classmethod
    def _freq_noise_section(cls, value: Any) -> Any:
        return noise_from_section(value, 0.0)


class PairGeometry(BaseModel):
    """Centre-of-mass spacing (as alpha or d) and the delocalization size.

    Exactly one of ``alpha`` and ``distance`` is stored; the other follows from
    d = 2 R alpha once the radius is known.
    """

    model_config = _FROZEN

    alpha: Optional[float] = Field(
        None, gt=1, alias="alpha", description="Spacing factor, d = 2 R alpha"
    )
    distance: Optional[float] = Field(
        None, gt=0, alias="distance_m", description="Centre-of-mass distance d [m]"
    )
    delta_x: float = Field(
        0.0,
        ge=0,
        alias="delta_x_m",
        description="Superposition separation or wavepacket extension [m]",
    )

    @model_validator(mode="after")
    def _exactly_one_spacing(self) -> "PairGeometry":
        if (self.alpha is None) == (self.distance is None):
            raise ValueError("give exactly one of alpha and distance_m")
        return self

    def distance_for(self, radius: float) -> float:
        if self.distance is not None:
            return self.distance
        assert self.alpha is not None
        return 2.0 * radius * self.alpha

    def overlaps(self, radius: float) -> bool:
        return self.distance_for(radius) <= 2.0 * radius

    def alpha_for(self, radius: float) -> float:
        if self.alpha is not None:
            return self.alpha
        assert self.distance is not None
        return self.distance / (2.0 * radius)


class Oscillator(BaseModel):
    model_config = _FROZEN

    omega0: float = Field(
        ..., gt=0, alias="omega0_rad_s", description="Trap angular frequency [rad s^-1]"
    )
    gamma: float = Field(0.0, ge=0, alias="gamma_hz", description="Dissipation rate [s^-1]")
    nbar: float = Field(0.0, ge=0, alias="nbar", description="Thermal occupation")
    eta: float = Field(1.0, ge=1, alias="eta", description="Wavepacket expansion factor")

    @property
    def quality_factor(self) -> float:
        return math.inf if self.gamma == 0 else self.omega0 / self.gamma

    @property
    def squeezing(self) -> float:
        return math.log(self.eta)

    @classmethod
    def from_frequency(cls, freq_hz: float, **kwargs: float) -> "Oscillator":
        return cls(omega0=2 * math.pi * freq_hz, **kwargs)

    @classmethod
    def from_quality(
        cls, omega0: float, quality: float, nbar: float = 0.0, squeezing: float = 0.0
    ) -> "Oscillator":
        return cls(
            omega0=omega0,
            gamma=omega0 / quality,
            nbar=nbar,
            eta=math.exp(squeezing),
        )


class ExperimentConfig(BaseModel):
    """Two identical bodies, their geometry, environment and protocol."""

    model_config = _FROZEN

    body: Body
    geometry: PairGeometry
    environment: Environment = Field(default_factory=Environment)
    oscillator: Optional[Oscillator] = None
    protocol: Protocol = Protocol.CSIGN_PHASE
    mass_mode: MassMode = MassMode.PAPER_APPROX
    rate_mode: RateMode = RateMode.PAPER_APPROX
    comparison_mode: ComparisonMode = ComparisonMode.PAPER_COMPARISON

    @model_validator(mode="after")
    def _protocol_requirements(self) -> "ExperimentConfig":
        if self.protocol is Protocol.COUPLED_OSCILLATORS and self.oscillator is None:
            raise ValueError("the oscillator protocol needs an oscillator section")
        if self.geometry.overlaps(self.body.radius):
            raise ValueError(OVERLAP_MESSAGE)
        return self

    @property
    def distance(self) -> float:
        return self.geometry.distance_for(self.body.radius)

    @property
    def alpha(self) -> float:
        return self.geometry.alpha_for(self.body.radius)

    def require_oscillator(self) -> Oscillator:
        if self.oscillator is None:
            raise DomainError("this operation needs an oscillator section")
        return self.oscillator
