"""
Invert the rate inequalities: find the value of one unknown at which the
smallest margin over the selected channels equals 1.

Every bound spans many decades, so the search runs on log(value) against
log(margin): the initial bracket [v/10, 10 v] grows by a decade on each side
until the sign of log(margin) changes, then bisection closes it.
"""

import logging
import math
from typing import Any, Callable, Iterable, Optional, TypeVar

import numpy as np
from pydantic import BaseModel, ValidationError

from src.lib.rates.budget import (
    channel_rates,
    config_entanglement_rate,
    protocol_channels,
    rate_budget,
)
from src.models.budget_model import ChannelId, RateBudget
from src.models.experiment_model import ExperimentConfig
from src.models.feasibility_model import BoundResult, Direction, Unknown
from src.utils.error_utils import (
    BracketError,
    ConfigurationError,
    DomainError,
    NumericalError,
)
from src.utils.logging_utils import log_event

MAX_DECADES = 60.0
EXPANSION_FACTOR = 10.0
BISECTION_REL_TOL = 1e-9
MONOTONE_GRID_POINTS = 64

# Starting points when the config holds zero for the unknown
_DEFAULT_START: dict[Unknown, float] = {
    Unknown.DELTA_X: 1e-6,
    Unknown.PRESSURE: 1e-10,
    Unknown.TEMP_ENVIRONMENT: 1.0,
    Unknown.TEMP_INTERNAL: 1.0,
    Unknown.RADIUS: 1e-6,
    Unknown.GAMMA: 1e-3,
    Unknown.POS_NOISE_AMP: 1e-30,
    Unknown.FREQ_NOISE_AMP: 1e-6,
    Unknown.NBAR: 1.0,
}

OSCILLATOR_UNKNOWNS = {Unknown.GAMMA, Unknown.NBAR}

ModelT = TypeVar("ModelT", bound=BaseModel)


def evaluate(config: ExperimentConfig) -> RateBudget:
    """Rate budget of ``config``; see ``rate_budget``."""
    return rate_budget(config)


def get_unknown(config: ExperimentConfig, unknown: Unknown) -> float:
    env = config.environment
    match unknown:
        case Unknown.DELTA_X:
            return config.geometry.delta_x
        case Unknown.PRESSURE:
            return env.pressure
        case Unknown.TEMP_ENVIRONMENT:
            return env.temperature
        case Unknown.TEMP_INTERNAL:
            return config.body.temp_internal
        case Unknown.RADIUS:
            return config.body.radius
        case Unknown.GAMMA:
            return config.require_oscillator().gamma
        case Unknown.NBAR:
            return config.require_oscillator().nbar
        case Unknown.POS_NOISE_AMP:
            return env.pos_noise.amplitude
        case Unknown.FREQ_NOISE_AMP:
            return env.freq_noise.amplitude


def _replace(model: ModelT, **changes: Any) -> ModelT:
    return type(model).model_validate({**dict(model), **changes})


def with_unknown(config: ExperimentConfig, unknown: Unknown, value: float) -> ExperimentConfig:
    """
    Copy of ``config`` with the field behind ``unknown`` set to ``value``.

    The copy is validated like a freshly built config.

    Raises:
        DomainError: if the new value breaks a field constraint or makes the
            spheres overlap
    """
    env = config.environment
    try:
        match unknown:
            case Unknown.DELTA_X:
                part = {"geometry": _replace(config.geometry, delta_x=value)}
            case Unknown.PRESSURE:
                part = {"environment": _replace(env, pressure=value)}
            case Unknown.TEMP_ENVIRONMENT:
                part = {"environment": _replace(env, temperature=value)}
            case Unknown.TEMP_INTERNAL:
                part = {"body": _replace(config.body, temp_internal=value)}
            case Unknown.RADIUS:
                part = {"body": _replace(config.body, radius=value)}
            case Unknown.GAMMA:
                part = {"oscillator": _replace(config.require_oscillator(), gamma=value)}
            case Unknown.NBAR:
                part = {"oscillator": _replace(config.require_oscillator(), nbar=value)}
            case Unknown.POS_NOISE_AMP:
                noise = _replace(env.pos_noise, amplitude=value)
                part = {"environment": _replace(env, pos_noise=noise)}
            case Unknown.FREQ_NOISE_AMP:
                noise = _replace(env.freq_noise, amplitude=value)
                part = {"environment": _replace(env, freq_noise=noise)}
        return _replace(config, **part)
    except ValidationError as exc:
        message = exc.errors()[0]["msg"].removeprefix("Value error, ")
        raise DomainError(f"{unknown.value} = {value!r}: {message}") from exc


def selected_channels(
    config: ExperimentConfig, channels: Optional[Iterable[ChannelId]]
) -> tuple[ChannelId, ...]:
    available = protocol_channels(config.protocol)
    if channels is None:
        return available
    chosen = tuple(ChannelId(channel) for channel in channels)
    if not chosen:
        raise ConfigurationError("select at least one channel", path="channels")
    for channel in chosen:
        if channel not in available:
            raise ConfigurationError(
                f"channel {channel.value} does not apply to the {config.protocol.value} protocol",
                path="channels",
            )
    return chosen


def binding_margin(
    config: ExperimentConfig, channels: tuple[ChannelId, ...]
) -> tuple[float, ChannelId]:
    """Smallest margin over ``channels`` and the channel that has it.

    Overflowing rates count as infinite, so the margin is 0 there.
    """
    try:
        gamma_ent = config_entanglement_rate(config)
    except (OverflowError, ZeroDivisionError):
        gamma_ent = math.inf
    try:
        rates = channel_rates(config)
    except (OverflowError, ZeroDivisionError):
        return 0.0, channels[0]

    best, binding = math.inf, channels[0]
    for channel in channels:
        rate = rates[channel]
        if gamma_ent <= 0:
            margin = 0.0
        elif rate == 0:
            margin = math.inf
        else:
            margin = gamma_ent / rate
        if margin < best:
            best, binding = margin, channel
    if math.isnan(best):
        raise NumericalError("margin evaluated to NaN")
    return best, binding


def _log_margin(margin: float) -> float:
    if margin <= 0:
        return -math.inf
    return math.log(margin)


def _count_sign_changes(f: Callable[[float], float], lo: float, hi: float) -> int:
    grid = np.geomspace(lo, hi, MONOTONE_GRID_POINTS)
    signs = [value > 0 for value in (f(float(x)) for x in grid)]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def solve_bound(
    config: ExperimentConfig,
    unknown: Unknown | str,
    channels: Optional[Iterable[ChannelId]] = None,
    bracket: Optional[tuple[float, float]] = None,
) -> BoundResult:
    """
    Find the value of ``unknown`` at which the binding margin equals 1.

    Args:
        config: Fully specified configuration; the unknown's value only seeds
            the initial bracket
        unknown: Quantity to solve for
        channels: Channels to compare against; all protocol channels by default
        bracket: Initial (lo, hi) search interval

    Returns:
        BoundResult with the threshold to relative 1e-9

    Raises:
        BracketError: if no crossing exists within 60 decades
        NumericalError: if the margin is not monotone in the unknown
        ConfigurationError: for an unusable channel selection or bracket
    """
    unknown = Unknown(unknown)
    if unknown in OSCILLATOR_UNKNOWNS and config.oscillator is None:
        raise ConfigurationError(
            f"unknown {unknown.value} needs an oscillator section", path="oscillator"
        )
    chosen = selected_channels(config, channels)

    def f(value: float) -> float:
        margin, _ = binding_margin(with_unknown(config, unknown, value), chosen)
        return _log_margin(margin)

    if bracket is None:
        start = get_unknown(config, unknown) or _DEFAULT_START[unknown]
        lo, hi = start / EXPANSION_FACTOR, start * EXPANSION_FACTOR
    else:
        lo, hi = bracket
        if not 0 < lo < hi:
            raise ConfigurationError("bracket must satisfy 0 < lo < hi", path="bracket")

    log_event(
        "bound_solve_start",
        logging.DEBUG,
        area="solver",
        unknown=unknown.value,
        channels=[c.value for c in chosen],
        lo=lo,
        hi=hi,
    )

    f_lo, f_hi = f(lo), f(hi)
    while (f_lo > 0) == (f_hi > 0):
        if math.log10(hi / lo) >= MAX_DECADES:
            kind = "feasible_everywhere" if f_lo > 0 else "infeasible_everywhere"
            log_event(
                "bound_no_crossing",
                logging.INFO,
                area="solver",
                unknown=unknown.value,
                kind=kind,
            )
            raise BracketError(unknown.value, kind, (lo, hi))
        lo, hi = lo / EXPANSION_FACTOR, hi * EXPANSION_FACTOR
        f_lo, f_hi = f(lo), f(hi)
        log_event(
            "bracket_expanded", logging.DEBUG, area="solver", unknown=unknown.value, lo=lo, hi=hi
        )

    changes = _count_sign_changes(f, lo, hi)
    if changes > 1:
        log_event(
            "margin_not_monotone",
            logging.WARNING,
            area="solver",
            unknown=unknown.value,
            sign_changes=changes,
        )
        raise NumericalError(
            f"margin is not monotone in {unknown.value}: {changes} sign changes "
            f"in [{lo:.3g}, {hi:.3g}]"
        )

    direction = Direction.LOWER_BOUND if f_hi > 0 else Direction.UPPER_BOUND
    used = (lo, hi)
    iterations = 0
    a, b = lo, hi
    while b / a - 1.0 > BISECTION_REL_TOL:
        mid = math.sqrt(a * b)
        # Keep the feasible end on the side given by the direction
        if (f(mid) > 0) == (direction is Direction.LOWER_BOUND):
            b = mid
        else:
            a = mid
        iterations += 1

    threshold = math.sqrt(a * b)
    _, channel = binding_margin(with_unknown(config, unknown, threshold), chosen)
    log_event(
        "bound_solved",
        logging.INFO,
        area="solver",
        unknown=unknown.value,
        threshold=threshold,
        direction=direction.value,
        channel=channel.value,
        iterations=iterations,
    )
    return BoundResult(
        unknown=unknown,
        threshold=threshold,
        direction=direction,
        channel=channel,
        bracket=used,
        iterations=iterations,
    )
