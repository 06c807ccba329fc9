"""
Assemble the per-channel rate budget for an experiment configuration.
"""

import math

from src.lib.quantities.derived import (
    ground_state_size,
    mass,
    thermal_wavelength_gas,
    thermal_wavelength_photon,
)
from src.lib.rates.decoherence import (
    Regime,
    blackbody_emission_param,
    blackbody_scatter_param,
    frequency_noise_heating,
    gas_scattering_rate,
    localization_rate,
    position_noise_heating,
    thermal_decoherence_rate,
)
from src.lib.rates.entanglement import (
    entanglement_rate,
    entanglement_rate_parametrized,
    log_negativity_estimate,
)
from src.models.budget_model import (
    CSIGN_CHANNELS,
    OSCILLATOR_CHANNELS,
    ChannelId,
    ChannelRate,
    RateBudget,
    RegimeWarning,
)
from src.models.experiment_model import (
    ComparisonMode,
    ExperimentConfig,
    Protocol,
)

ETA_MISMATCH_TOLERANCE = 0.01


def protocol_channels(protocol: Protocol) -> tuple[ChannelId, ...]:
    if protocol is Protocol.COUPLED_OSCILLATORS:
        return OSCILLATOR_CHANNELS
    return CSIGN_CHANNELS


def config_entanglement_rate(config: ExperimentConfig) -> float:
    geometry = config.geometry
    if geometry.alpha is not None:
        return entanglement_rate_parametrized(
            config.body,
            geometry.alpha,
            geometry.delta_x,
            config.mass_mode,
            config.rate_mode,
        )
    return entanglement_rate(
        mass(config.body, config.mass_mode),
        config.distance,
        geometry.delta_x,
        config.rate_mode,
    )


def _margin(gamma_ent: float, rate: float) -> float:
    if rate == 0:
        return math.inf
    return gamma_ent / rate


def _blackbody_channel(
    channel: ChannelId,
    localization: float,
    delta_x: float,
    temperature: float,
    warnings: list[RegimeWarning],
) -> float:
    wavelength = thermal_wavelength_photon(temperature) if temperature > 0 else math.inf
    rate, regime = localization_rate(localization, delta_x, wavelength)
    if regime is Regime.INVALID:
        warnings.append(
            RegimeWarning(
                code="delta_x_exceeds_photon_wavelength",
                channel=channel,
                message=(
                    f"delta_x = {delta_x:.3g} m is not below the photon wavelength "
                    f"{wavelength:.3g} m; the long-wavelength rate does not apply"
                ),
            )
        )
    return rate


def channel_rates(
    config: ExperimentConfig, warnings: list[RegimeWarning] | None = None
) -> dict[ChannelId, float]:
    """Decoherence rate of every channel the protocol is exposed to."""
    if warnings is None:
        warnings = []
    body = config.body
    env = config.environment
    dx = config.geometry.delta_x
    rates: dict[ChannelId, float] = {}

    rates[ChannelId.GAS_SCATTERING] = gas_scattering_rate(
        env.pressure, body.radius, env.temperature, env.gas_mass
    )
    if env.pressure > 0 and dx < thermal_wavelength_gas(env.temperature, env.gas_mass):
        warnings.append(
            RegimeWarning(
                code="delta_x_below_gas_wavelength",
                channel=ChannelId.GAS_SCATTERING,
                message=(
                    "delta_x is below the gas de Broglie wavelength; a single "
                    "collision no longer fully localizes the superposition"
                ),
            )
        )

    rates[ChannelId.BLACKBODY_SCATTER] = _blackbody_channel(
        ChannelId.BLACKBODY_SCATTER,
        blackbody_scatter_param(body.radius, env.temperature, body.chi_re),
        dx,
        env.temperature,
        warnings,
    )
    rates[ChannelId.BLACKBODY_EMISSION] = _blackbody_channel(
        ChannelId.BLACKBODY_EMISSION,
        blackbody_emission_param(body.radius, body.temp_internal, body.chi_im),
        dx,
        body.temp_internal,
        warnings,
    )
    rates[ChannelId.BLACKBODY_ABSORPTION] = _blackbody_channel(
        ChannelId.BLACKBODY_ABSORPTION,
        blackbody_emission_param(body.radius, env.temperature, body.chi_im),
        dx,
        env.temperature,
        warnings,
    )

    if config.protocol is Protocol.COUPLED_OSCILLATORS:
        osc = config.require_oscillator()
        sigma0 = ground_state_size(mass(body, config.mass_mode), osc.omega0)
        rates[ChannelId.THERMAL_DISSIPATION] = thermal_decoherence_rate(
            osc.gamma, env.temperature, osc.omega0
        )
        rates[ChannelId.POSITION_NOISE] = position_noise_heating(
            osc.omega0, env.pos_noise.evaluate(osc.omega0), sigma0
        )
        rates[ChannelId.FREQUENCY_NOISE] = frequency_noise_heating(
            osc.omega0, env.freq_noise.evaluate(2 * osc.omega0)
        )
        rates[ChannelId.THERMAL_OCCUPATION] = osc.nbar * osc.omega0

        expanded = osc.eta * sigma0
        if osc.eta > 1 and abs(dx - expanded) > ETA_MISMATCH_TOLERANCE * expanded:
            warnings.append(
                RegimeWarning(
                    code="delta_x_differs_from_eta_sigma0",
                    message=(
                        f"delta_x = {dx:.3g} m but eta * sigma0 = {expanded:.3g} m; "
                        "rates use delta_x"
                    ),
                )
            )

    return rates


def rate_budget(config: ExperimentConfig) -> RateBudget:
    """
    Compare the entanglement rate with every decoherence channel.

    In paper mode each channel is compared on its own, as the bounds are
    derived channel by channel. Aggregate mode also requires the entanglement
    rate to beat the summed rate.

    Raises:
        DomainError: propagated from the rate formulas
    """
    warnings: list[RegimeWarning] = []
    gamma_ent = config_entanglement_rate(config)
    if config.geometry.delta_x >= config.distance:
        warnings.append(
            RegimeWarning(
                code="delta_x_exceeds_distance",
                message=(
                    "delta_x >= d: higher-order terms of the interaction are not "
                    "negligible"
                ),
            )
        )

    rates = channel_rates(config, warnings)
    channels = [
        ChannelRate(channel=channel, rate=rates[channel], margin=_margin(gamma_ent, rates[channel]))
        for channel in protocol_channels(config.protocol)
    ]
    binding = min(channels, key=lambda entry: entry.margin)
    feasible = gamma_ent > 0 and all(entry.margin > 1 for entry in channels)

    total_rate = None
    aggregate_margin = None
    if config.comparison_mode is ComparisonMode.AGGREGATE:
        total_rate = sum(entry.rate for entry in channels)
        aggregate_margin = _margin(gamma_ent, total_rate)
        feasible = feasible and aggregate_margin > 1

    log_negativity = None
    if config.protocol is Protocol.COUPLED_OSCILLATORS:
        osc = config.require_oscillator()
        log_negativity = log_negativity_estimate(gamma_ent, osc.omega0, osc.nbar)

    return RateBudget(
        gamma_ent=gamma_ent,
        channels=channels,
        binding_channel=binding.channel,
        feasible=feasible,
        comparison_mode=config.comparison_mode.value,
        total_rate=total_rate,
        aggregate_margin=aggregate_margin,
        log_negativity=log_negativity,
        warnings=warnings,
    )
