"""
Read configuration files and turn them into validated experiment models.
"""

import json
from pathlib import Path
from typing import Any

import yaml
from pydantic import ValidationError

from src.lib.quantities.derived import ground_state_size, mass_of
from src.models.config_file_model import ConfigFile
from src.models.experiment_model import (
    OVERLAP_MESSAGE,
    Body,
    Environment,
    ExperimentConfig,
    Oscillator,
    PairGeometry,
)
from src.models.sweep_model import SweepSpec
from src.utils.error_utils import ConfigurationError


# Union branches add their member type to the error location
_UNION_TAGS = ("literal[", "GasMass")


def _dotted(loc: tuple[Any, ...]) -> str:
    keys = [str(part) for part in loc if not str(part).startswith(_UNION_TAGS)]
    return ".".join(keys) or "<root>"


def configuration_error(exc: ValidationError, prefix: str = "") -> ConfigurationError:
    """First pydantic error as a ConfigurationError carrying the JSON path."""
    first = exc.errors()[0]
    path = _dotted(tuple(first["loc"]))
    if prefix:
        path = prefix if path == "<root>" else f"{prefix}.{path}"
    message = first["msg"].removeprefix("Value error, ")
    return ConfigurationError(message, path=path)


def _read_document(path: Path, loader) -> Any:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return loader(text)
    except (json.JSONDecodeError, yaml.YAMLError) as exc:
        raise ConfigurationError(f"{path} is not well-formed: {exc}") from exc


def to_experiment_config(document: ConfigFile) -> ExperimentConfig:
    """Build the SI experiment model; dx defaults to eta * sigma0."""
    body_section = document.body
    body = Body(
        radius=body_section.radius_m,
        density=body_section.density_kg_m3,
        chi_re=body_section.chi_re,
        chi_im=body_section.chi_im,
        temp_internal=body_section.temp_internal_K,
    )

    env_section = document.environment
    environment = Environment.model_validate(
        env_section.model_dump(include={"gas", "pos_noise", "freq_noise"}, exclude_none=True)
        | {"pressure": env_section.pressure, "temperature": env_section.temp_K}
    )

    oscillator = None
    if document.oscillator is not None:
        osc = document.oscillator
        oscillator = Oscillator(
            omega0=osc.omega0,
            gamma=osc.gamma_hz,
            nbar=osc.nbar,
            eta=osc.eta if osc.eta is not None else 1.0,
        )

    delta_x = document.geometry.delta_x_m
    if delta_x is None:
        assert oscillator is not None
        m = mass_of(body.radius, body.density, document.modes.mass)
        delta_x = oscillator.eta * ground_state_size(m, oscillator.omega0)

    geometry = PairGeometry(
        alpha=document.geometry.alpha,
        distance=document.geometry.distance_m,
        delta_x=delta_x,
    )
    if geometry.overlaps(body.radius):
        raise ConfigurationError(OVERLAP_MESSAGE, path="geometry.distance_m")
    return ExperimentConfig(
        body=body,
        geometry=geometry,
        environment=environment,
        oscillator=oscillator,
        protocol=document.protocol,
        mass_mode=document.modes.mass,
        rate_mode=document.modes.rate,
        comparison_mode=document.modes.comparison,
    )


def parse_config(data: Any) -> ExperimentConfig:
    """
    Validate a decoded config document.

    Raises:
        ConfigurationError: with the dotted path of the first offending key
    """
    try:
        document = ConfigFile.model_validate(data)
        return to_experiment_config(document)
    except ValidationError as exc:
        raise configuration_error(exc) from exc


def load_config(path: Path) -> ExperimentConfig:
    return parse_config(_read_document(path, json.loads))


def load_sweep_spec(path: Path, base: ExperimentConfig) -> SweepSpec:
    """Read a YAML or JSON sweep description and attach the base config."""
    data = _read_document(path, yaml.safe_load)
    if not isinstance(data, dict):
        raise ConfigurationError("sweep spec must be a mapping", path="<root>")
    if "base" in data:
        raise ConfigurationError("the base config comes from the config file", path="base")
    try:
        return SweepSpec.model_validate({**data, "base": base})
    except ValidationError as exc:
        raise configuration_error(exc) from exc
