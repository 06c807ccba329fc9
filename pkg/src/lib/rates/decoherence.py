"""
Environmental decoherence and heating rates.

Gas scattering is in the short-wavelength limit (one collision localizes the
superposition). Blackbody channels are in the long-wavelength limit, where the
rate is a localization parameter times dx^2.
"""

import math
from enum import StrEnum
from typing import NamedTuple

from scipy.special import zeta

from src.lib.quantities.constants import get_constants
from src.lib.quantities.derived import thermal_wavelength_gas, thermal_wavelength_photon
from src.utils.error_utils import DomainError

ZETA_9 = float(zeta(9))
FACTORIAL_8 = math.factorial(8)


class Regime(StrEnum):
    VALID = "valid"
    INVALID = "invalid"


class LocalizedRate(NamedTuple):
    rate: float
    regime: Regime


def gas_scattering_rate(
    pressure: float, radius: float, temperature: float, gas_mass: float
) -> float:
    """(lambda_th / hbar)(16 pi / 3) p R^2."""
    if pressure < 0 or radius < 0:
        raise DomainError("pressure and radius must be nonnegative")
    if pressure == 0:
        return 0.0
    if temperature <= 0:
        raise DomainError("gas scattering at p > 0 needs a positive temperature")
    wavelength = thermal_wavelength_gas(temperature, gas_mass)
    return (wavelength / get_constants().hbar) * (16 * math.pi / 3) * pressure * radius**2


def blackbody_scatter_param(radius: float, temperature: float, chi_re: float) -> float:
    """Localization parameter for blackbody scattering [m^-2 s^-1]."""
    if radius < 0 or temperature < 0 or not 0 <= chi_re <= 1:
        raise DomainError("scatter parameter needs R >= 0, T >= 0, 0 <= chi_re <= 1")
    if temperature == 0 or radius == 0 or chi_re == 0:
        return 0.0
    inv_wavelength = 1.0 / thermal_wavelength_photon(temperature)
    prefactor = FACTORIAL_8 * 8 * ZETA_9 * math.pi**5 * get_constants().c * radius**6 / 9
    return inv_wavelength**9 * prefactor * chi_re**2


def blackbody_emission_param(radius: float, temperature: float, chi_im: float) -> float:
    """Localization parameter for blackbody emission (T_i) or absorption (T_e)."""
    if radius < 0 or temperature < 0 or not 0 <= chi_im <= 1:
        raise DomainError("emission parameter needs R >= 0, T >= 0, 0 <= chi_im <= 1")
    if temperature == 0 or radius == 0 or chi_im == 0:
        return 0.0
    inv_wavelength = 1.0 / thermal_wavelength_photon(temperature)
    prefactor = 16 * math.pi**9 * get_constants().c * radius**3 / 189
    return inv_wavelength**6 * prefactor * chi_im


def localization_rate(
    localization: float, delta_x: float, wavelength: float
) -> LocalizedRate:
    """Lambda dx^2, flagged invalid once dx reaches the environment wavelength."""
    if localization < 0 or delta_x < 0 or wavelength < 0:
        raise DomainError("localization inputs must be nonnegative")
    regime = Regime.INVALID if delta_x >= wavelength else Regime.VALID
    return LocalizedRate(localization * delta_x * delta_x, regime)


def thermal_decoherence_rate(gamma: float, temperature: float, omega0: float) -> float:
    """gamma k_B T_e / (hbar omega0)."""
    if omega0 <= 0:
        raise DomainError(f"omega0 must be positive, got {omega0!r}")
    k = get_constants()
    return gamma * k.k_B * temperature / (k.hbar * omega0)


def position_noise_heating(omega0: float, psd_at_omega0: float, sigma0: float) -> float:
    """pi omega0^2 S_x(omega0) / (4 sigma0^2)."""
    if sigma0 <= 0:
        raise DomainError(f"sigma0 must be positive, got {sigma0!r}")
    return math.pi * omega0**2 * psd_at_omega0 / (4 * sigma0**2)


def frequency_noise_heating(omega0: float, psd_at_2omega0: float) -> float:
    """pi omega0^2 S_omega(2 omega0) / 16 for a fractional-frequency PSD."""
    if omega0 < 0 or psd_at_2omega0 < 0:
        raise DomainError("frequency noise inputs must be nonnegative")
    return math.pi * omega0**2 * psd_at_2omega0 / 16


def coefficient_table() -> dict[str, float]:
    """Rate prefactors in SI at R = 1 m, p = 1 Pa, T = 1 K, hydrogen gas."""
    return {
        "gas": gas_scattering_rate(1.0, 1.0, 1.0, get_constants().m_H2),
        "bb_emission": blackbody_emission_param(1.0, 1.0, 1.0),
        "bb_scatter": blackbody_scatter_param(1.0, 1.0, 1.0),
    }


def gas_condition_rhs(
    alpha: float, density: float, pressure: float, temperature: float, gas_mass: float
) -> float:
    """Minimum R dx^2 for the entanglement rate to beat gas scattering."""
    if pressure == 0:
        return 0.0
    k = get_constants()
    coefficient = gas_scattering_rate(1.0, 1.0, temperature, gas_mass)
    return coefficient * (k.hbar / k.G) * alpha**3 * pressure / (2 * density**2)
