"""
Derived quantities: masses, ground-state size and thermal wavelengths.
"""

import math

from src.lib.quantities.constants import get_constants
from src.models.experiment_model import Body, MassMode
from src.utils.error_utils import DomainError


def mass_of(radius: float, density: float, mode: MassMode = MassMode.PAPER_APPROX) -> float:
    """Sphere mass; ``PAPER_APPROX`` uses 4 R^3 rho instead of 4/3 pi R^3 rho."""
    if radius < 0 or density < 0:
        raise DomainError("radius and density must be nonnegative")
    if mode is MassMode.EXACT_SPHERE:
        return (4.0 * math.pi / 3.0) * radius**3 * density
    return 4.0 * radius**3 * density


def mass(body: Body, mode: MassMode = MassMode.PAPER_APPROX) -> float:
    return mass_of(body.radius, body.density, mode)


def ground_state_size(m: float, omega0: float) -> float:
    """sigma_0 = sqrt(hbar / (m omega_0))."""
    if m <= 0 or omega0 <= 0:
        raise DomainError(f"ground state size needs m > 0 and omega0 > 0, got {m!r}, {omega0!r}")
    return math.sqrt(get_constants().hbar / (m * omega0))


def thermal_wavelength_gas(temperature: float, gas_mass: float) -> float:
    """de Broglie wavelength 2 pi hbar / sqrt(2 pi m k_B T) of a gas molecule."""
    if temperature <= 0:
        raise DomainError("gas thermal wavelength diverges at T = 0")
    if gas_mass <= 0:
        raise DomainError("gas molecule mass must be positive")
    k = get_constants()
    return 2 * math.pi * k.hbar / math.sqrt(2 * math.pi * gas_mass * k.k_B * temperature)


def thermal_wavelength_photon(temperature: float) -> float:
    """Blackbody photon wavelength pi^(2/3) hbar c / (k_B T)."""
    if temperature <= 0:
        raise DomainError("photon thermal wavelength diverges at T = 0")
    k = get_constants()
    return math.pi ** (2.0 / 3.0) * k.hbar * k.c / (k.k_B * temperature)


def atom_count(m: float, atomic_mass: float | None = None) -> float:
    """Number of atoms of ``atomic_mass`` (silicon by default) in mass ``m``."""
    if atomic_mass is None:
        atomic_mass = get_constants().m_Si
    if atomic_mass <= 0:
        raise DomainError("atomic mass must be positive")
    return m / atomic_mass


# python -m src.lib.quantities.derived
if __name__ == "__main__":
    silica = Body(radius=75e-9, density=2e3)
    m = mass(silica)
    print(f"silica nanosphere mass: {m:.3e} kg")
    print(f"ground state at 100 kHz: {ground_state_size(m, 2 * math.pi * 1e5):.3e} m")
    print(f"H2 wavelength at 1 K: {thermal_wavelength_gas(1.0, get_constants().m_H2):.3e} m")
    print(f"photon wavelength at 1 K: {thermal_wavelength_photon(1.0):.3e} m")
