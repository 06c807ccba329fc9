"""
Physical constants used by every rate formula.

Values come from scipy's CODATA tables. The active set is context-local so a
sensitivity run can swap one constant without touching module state seen by
other threads.
"""

from contextlib import contextmanager
from contextvars import ContextVar
from typing import Iterator

from pydantic import BaseModel, ConfigDict, Field
from scipy import constants as sc

# Standard atomic weights in unified atomic mass units
H2_MASS_U = 2 * 1.00794
HE4_MASS_U = 4.002602
SI_MASS_U = 28.0855

MBAR_IN_PA = 100.0


class PhysicalConstants(BaseModel):
    """SI constants for the rate formulas."""

    model_config = ConfigDict(frozen=True)

    G: float = Field(..., gt=0, description="Gravitational constant [m^3 kg^-1 s^-2]")
    hbar: float = Field(..., gt=0, description="Reduced Planck constant [J s]")
    k_B: float = Field(..., gt=0, description="Boltzmann constant [J K^-1]")
    c: float = Field(..., gt=0, description="Speed of light [m s^-1]")
    m_H2: float = Field(..., gt=0, description="Hydrogen-molecule mass [kg]")
    m_Si: float = Field(..., gt=0, description="Silicon atomic mass [kg]")


CODATA = PhysicalConstants(
    G=sc.G,
    hbar=sc.hbar,
    k_B=sc.k,
    c=sc.c,
    m_H2=H2_MASS_U * sc.atomic_mass,
    m_Si=SI_MASS_U * sc.atomic_mass,
)

HE4_MASS_KG = HE4_MASS_U * sc.atomic_mass

_active: ContextVar[PhysicalConstants] = ContextVar("gravent_constants", default=CODATA)


def get_constants() -> PhysicalConstants:
    return _active.get()


@contextmanager
def override_constants(**changes: float) -> Iterator[PhysicalConstants]:
    """Temporarily replace constants for the current context.

    >>> with override_constants(G=10 * CODATA.G):
    ...     ...
    """
    doctored = get_constants().model_copy(update=changes)
    token = _active.set(doctored)
    try:
        yield doctored
    finally:
        _active.reset(token)


def mbar_to_pa(pressure_mbar: float) -> float:
    return pressure_mbar * MBAR_IN_PA
