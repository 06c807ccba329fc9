"""
Conditional-phase (CSIGN) protocol: two masses, each in a two-branch spatial
superposition, pick up branch-dependent gravitational phases.

Branches with both particles displaced the same way (LL, RR) sit at distance
d; anti-aligned branches (LR, RL) at sqrt(d^2 + dx^2). Decoherence damps each
particle's L/R coherence independently.
"""

import math

import numpy as np

from src.lib.quantities.constants import get_constants
from src.lib.rates.entanglement import entanglement_rate
from src.models.experiment_model import RateMode
from src.models.protocol_model import BranchState, SimTrace, check_density_matrix
from src.utils.error_utils import DomainError

NEGATIVITY_FLOOR = 1e-14

# Number of particles whose branch differs between basis states
_FLIPS = np.array(
    [
        [0, 1, 1, 2],
        [1, 0, 2, 1],
        [1, 2, 0, 1],
        [2, 1, 1, 0],
    ]
)


def csign_phases(m: float, d: float, delta_x: float, t: float) -> tuple[float, float, float]:
    """Aligned and anti-aligned branch phases and their difference at time t."""
    if d <= 0:
        raise DomainError(f"distance must be positive, got {d!r}")
    if t < 0:
        raise DomainError(f"time must be nonnegative, got {t!r}")
    k = get_constants()
    coupling = k.G * m * m / k.hbar
    phi0 = coupling / d * t
    phi1 = coupling / math.hypot(d, delta_x) * t
    # Same value as |phi1 - phi0|, without the cancellation
    delta_phi = entanglement_rate(m, d, delta_x, RateMode.EXACT) * t if m > 0 else 0.0
    return phi0, phi1, delta_phi


def branch_overlap(delta_phi: float) -> float:
    """|1 + cos 2 dphi|: 2 for separable branches, 0 for orthogonal ones."""
    return abs(1.0 + math.cos(2.0 * delta_phi))


def branch_density_matrix(delta_phi: float, coherence: float) -> np.ndarray:
    """Density matrix of the branch state; ``coherence`` = exp(-Gamma t)."""
    phase = np.exp(-1j * delta_phi)
    amplitudes = 0.5 * np.array([1.0, phase, phase, 1.0])
    damping = coherence**_FLIPS
    return np.outer(amplitudes, amplitudes.conj()) * damping


def csign_evolve(
    m: float,
    d: float,
    delta_x: float,
    gamma_dec_per_particle: float,
    t: float,
) -> BranchState:
    """Closed-form state at time t from the equal product superposition."""
    if gamma_dec_per_particle < 0:
        raise DomainError("decoherence rate must be nonnegative")
    _, _, delta_phi = csign_phases(m, d, delta_x, t)
    coherence = math.exp(-gamma_dec_per_particle * t)
    return BranchState(rho=branch_density_matrix(delta_phi, coherence), t=t)


def partial_transpose(rho: np.ndarray) -> np.ndarray:
    """Transpose on the second particle."""
    return rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def negativity_two_qubit(rho: np.ndarray | BranchState) -> float:
    """Sum of the magnitudes of the negative eigenvalues of rho^T2.

    Raises:
        StateError: if ``rho`` is not a valid density matrix
    """
    matrix = rho.rho if isinstance(rho, BranchState) else np.asarray(rho)
    check_density_matrix(matrix)
    eigenvalues = np.linalg.eigvalsh(partial_transpose(matrix))
    negative = eigenvalues[eigenvalues < -NEGATIVITY_FLOOR]
    return float(-negative.sum())


def two_qubit_log_negativity(negativity: float) -> float:
    return math.log2(2.0 * negativity + 1.0)


def csign_trace(
    m: float,
    d: float,
    delta_x: float,
    gamma_dec_per_particle: float,
    times: np.ndarray,
) -> SimTrace:
    phases = np.empty(len(times))
    negativities = np.empty(len(times))
    for i, t in enumerate(times):
        state = csign_evolve(m, d, delta_x, gamma_dec_per_particle, float(t))
        phases[i] = csign_phases(m, d, delta_x, float(t))[2]
        negativities[i] = negativity_two_qubit(state)
    return SimTrace(
        times=np.asarray(times, dtype=float),
        measure=negativities,
        log_negativity=np.log2(2.0 * negativities + 1.0),
        delta_phi=phases,
        measure_name="negativity",
    )
