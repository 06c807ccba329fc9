"""
Gravitational entanglement rates and the closed-form threshold relations built
on them.
"""

import logging
import math

from src.lib.quantities.constants import get_constants
from src.lib.quantities.derived import mass
from src.models.experiment_model import Body, MassMode, RateMode
from src.utils.error_utils import DomainError
from src.utils.logging_utils import log_event


def _inverse_distance_gap(d: float, delta_x: float) -> float:
    """1/d - 1/sqrt(d^2 + dx^2) without cancellation at small dx/d."""
    s = math.hypot(d, delta_x)
    return delta_x * delta_x / (d * s * (s + d))


def entanglement_rate(
    m: float,
    d: float,
    delta_x: float,
    mode: RateMode = RateMode.PAPER_APPROX,
) -> float:
    """
    Rate at which the branch phase difference grows.

    ``PAPER_APPROX`` is the leading Taylor term (G/hbar) m^2 dx^2 / d^3.
    ``EXACT`` is the magnitude of the exact phase-difference rate
    (G m^2/hbar)(1/d - 1/sqrt(d^2 + dx^2)), which tends to half the
    approximation as dx/d -> 0.

    Raises:
        DomainError: for nonpositive mass or distance, or negative dx
    """
    if m <= 0 or d <= 0:
        raise DomainError(f"entanglement rate needs m > 0 and d > 0, got {m!r}, {d!r}")
    if delta_x < 0:
        raise DomainError(f"delta_x must be nonnegative, got {delta_x!r}")
    if delta_x >= d:
        log_event(
            "taylor_expansion_invalid",
            logging.DEBUG,
            area="rates",
            delta_x=delta_x,
            distance=d,
        )

    k = get_constants()
    if mode is RateMode.EXACT:
        return (k.G * m * m / k.hbar) * _inverse_distance_gap(d, delta_x)
    return (k.G / k.hbar) * m * m * delta_x * delta_x / d**3


def entanglement_rate_parametrized(
    body: Body,
    alpha: float,
    delta_x: float,
    mass_mode: MassMode = MassMode.PAPER_APPROX,
    rate_mode: RateMode = RateMode.PAPER_APPROX,
) -> float:
    """Entanglement rate for d = 2 R alpha."""
    if alpha <= 1:
        raise DomainError(f"alpha must exceed 1, got {alpha!r}")
    return entanglement_rate(
        mass(body, mass_mode), 2.0 * body.radius * alpha, delta_x, rate_mode
    )


def entanglement_rate_closed_form(
    radius: float, density: float, alpha: float, delta_x: float
) -> float:
    """(G/hbar)(2 rho^2/alpha^3) R^3 dx^2, valid for both approximations."""
    k = get_constants()
    return (k.G / k.hbar) * (2 * density**2 / alpha**3) * radius**3 * delta_x**2


def log_negativity_estimate(gamma_ent: float, omega0: float, nbar: float) -> float:
    """E_N ~ (4 g / omega0 - 4 nbar) / ln 2 with g = gamma_ent.

    Negative values mean no entanglement; callers clamp for display.
    """
    if omega0 <= 0:
        raise DomainError("omega0 must be positive")
    if nbar < 0:
        raise DomainError("nbar must be nonnegative")
    return (4.0 * gamma_ent / omega0 - 4.0 * nbar) / math.log(2.0)


def oscillator_threshold_r3dx2(nbar: float, omega0: float, alpha: float = 2.0) -> float:
    """R^3 dx^2 rho^2 at which gamma_ent = nbar omega0 (paper mass formula)."""
    k = get_constants()
    return nbar * omega0 * k.hbar * alpha**3 / (2.0 * k.G)
