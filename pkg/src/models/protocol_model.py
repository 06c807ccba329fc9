"""
Simulator states for the two entanglement protocols.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from src.utils.error_utils import StateError

BRANCH_LABELS = ("LL", "LR", "RL", "RR")

TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-10
HERMITIAN_TOL = 1e-12
BONA_FIDE_TOL = 1e-9

# Symplectic form for the (x1, p1, x2, p2) ordering
OMEGA = np.array(
    [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)


def check_density_matrix(rho: np.ndarray) -> None:
    """Raise StateError unless ``rho`` is a 4x4 density matrix."""
    if rho.shape != (4, 4):
        raise StateError(f"density matrix must be 4x4, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
        raise StateError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > TRACE_TOL:
        raise StateError(f"density matrix trace is {np.trace(rho).real!r}, not 1")
    if np.linalg.eigvalsh(rho).min() < -POSITIVITY_TOL:
        raise StateError("density matrix is not positive semidefinite")


def check_covariance(cov: np.ndarray) -> None:
    """Raise StateError unless ``cov`` is a bona fide two-mode covariance matrix."""
    if cov.shape != (4, 4):
        raise StateError(f"covariance matrix must be 4x4, got {cov.shape}")
    if np.max(np.abs(cov - cov.T)) > BONA_FIDE_TOL * max(1.0, np.max(np.abs(cov))):
        raise StateError("covariance matrix is not symmetric")
    uncertainty = cov + 0.5j * OMEGA
    scale = max(1.0, float(np.max(np.abs(cov))))
    if np.linalg.eigvalsh(uncertainty).min() < -BONA_FIDE_TOL * scale:
        raise StateError("covariance matrix violates the uncertainty principle")


@dataclass(frozen=True)
class BranchState:
    """Two-particle state over the branches |LL>, |LR>, |RL>, |RR>."""

    rho: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        check_density_matrix(self.rho)


@dataclass(frozen=True)
class GaussianTwoMode:
    """Covariance matrix in (x1, p1, x2, p2); the vacuum is diag(1/2, ...)."""

    cov: np.ndarray
    mean: np.ndarray = field(default_factory=lambda: np.zeros(4))
    t: float = 0.0

    def __post_init__(self):
        check_covariance(self.cov)


@dataclass(frozen=True)
class SimTrace:
    times: np.ndarray
    measure: np.ndarray
    log_negativity: np.ndarray
    delta_phi: Optional[np.ndarray] = None
    measure_name: str = "negativity"

    def __post_init__(self):
        if self.times.ndim != 1 or len(self.times) < 1:
            raise StateError("trace needs at least one sample time")
        if np.any(np.diff(self.times) <= 0):
            raise StateError("trace times must be strictly increasing")
        if self.measure.shape != self.times.shape:
            raise StateError("one measure value per sample time")

    def onset(self, threshold: float = 1e-6) -> Optional[float]:
        """First sample time whose measure exceeds ``threshold``."""
        above = np.nonzero(self.measure > threshold)[0]
        return float(self.times[above[0]]) if len(above) else None
