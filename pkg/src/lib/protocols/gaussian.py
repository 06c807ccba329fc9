"""
Coupled-oscillator protocol as a two-mode Gaussian simulation.

The Hamiltonian is sum_i (hbar omega0/2)(x_i^2 + p_i^2) + hbar g x1 x2 in
dimensionless quadratures with vacuum variance 1/2. Weak damping at rate gamma
pulls each mode toward occupation k_B T_e / (hbar omega0). Each step applies
the exact propagator of the constant drift and the matching diffusion
(Van Loan), so with gamma = 0 the evolution is symplectic up to rounding.
"""

import logging
import math

import numpy as np
from scipy.linalg import expm

from src.lib.quantities.constants import get_constants
from src.models.protocol_model import OMEGA, GaussianTwoMode, SimTrace, check_covariance
from src.utils.error_utils import ConfigurationError, DomainError, NumericalError
from src.utils.logging_utils import log_event

MAX_STEP_PHASE = 0.1
DETECTION_THRESHOLD = 1e-6
SCAN_PERIODS = 10
SCAN_STEPS_PER_PERIOD = 200

# Partial transpose of mode 2 flips the sign of p2
_PT = np.diag([1.0, 1.0, 1.0, -1.0])


def gaussian_init(nbar: float, eta: float) -> GaussianTwoMode:
    """Product of two thermal states stretched by eta in x (squeezed in p)."""
    if nbar < 0:
        raise DomainError(f"nbar must be nonnegative, got {nbar!r}")
    if eta < 1:
        raise DomainError(f"eta must be at least 1, got {eta!r}")
    purity = 2 * nbar + 1
    var_x = purity * eta**2 / 2
    var_p = purity / (2 * eta**2)
    return GaussianTwoMode(cov=np.diag([var_x, var_p, var_x, var_p]))


def two_mode_squeezed_vacuum(r: float) -> GaussianTwoMode:
    c = math.cosh(2 * r) / 2
    s = math.sinh(2 * r) / 2
    cov = np.array(
        [
            [c, 0.0, s, 0.0],
            [0.0, c, 0.0, -s],
            [s, 0.0, c, 0.0],
            [0.0, -s, 0.0, c],
        ]
    )
    return GaussianTwoMode(cov=cov)


def drift_matrix(omega0: float, g: float, gamma: float) -> np.ndarray:
    return np.array(
        [
            [-gamma / 2, omega0, 0.0, 0.0],
            [-omega0, -gamma / 2, -g, 0.0],
            [0.0, 0.0, -gamma / 2, omega0],
            [-g, 0.0, -omega0, -gamma / 2],
        ]
    )


def thermal_occupation(temperature: float, omega0: float) -> float:
    k = get_constants()
    return k.k_B * temperature / (k.hbar * omega0)


def step_propagator(
    omega0: float, g: float, gamma: float, temperature: float, dt: float
) -> tuple[np.ndarray, np.ndarray]:
    """Transfer matrix and added noise of one step: V -> F V F^T + Q."""
    drift = drift_matrix(omega0, g, gamma)
    diffusion = gamma * (thermal_occupation(temperature, omega0) + 0.5) * np.eye(4)
    block = np.zeros((8, 8))
    block[:4, :4] = -drift
    block[:4, 4:] = diffusion
    block[4:, 4:] = drift.T
    van_loan = expm(block * dt)
    transfer = van_loan[4:, 4:].T
    noise = transfer @ van_loan[:4, 4:]
    return transfer, (noise + noise.T) / 2


def _check_step(omega0: float, dt: float, steps: int) -> None:
    if omega0 <= 0:
        raise DomainError("omega0 must be positive")
    if dt <= 0 or steps < 0:
        raise ConfigurationError("need dt > 0 and steps >= 0")
    if dt * omega0 > MAX_STEP_PHASE * (1 + 1e-12):
        raise ConfigurationError(
            f"step too long: dt * omega0 = {dt * omega0:.3g} exceeds {MAX_STEP_PHASE}"
        )


def gaussian_trajectory(
    state: GaussianTwoMode,
    omega0: float,
    g: float,
    gamma: float,
    temperature: float,
    dt: float,
    steps: int,
) -> np.ndarray:
    """Covariance matrices at t0, t0 + dt, ..., t0 + steps * dt."""
    _check_step(omega0, dt, steps)
    transfer, noise = step_propagator(omega0, g, gamma, temperature, dt)
    covs = np.empty((steps + 1, 4, 4))
    covs[0] = state.cov
    for i in range(steps):
        cov = transfer @ covs[i] @ transfer.T + noise
        covs[i + 1] = (cov + cov.T) / 2
    return covs


def gaussian_evolve(
    state: GaussianTwoMode,
    omega0: float,
    g: float,
    gamma: float,
    temperature: float,
    dt: float,
    steps: int,
) -> GaussianTwoMode:
    """
    Evolve the covariance matrix by ``steps`` steps of length ``dt``.

    Raises:
        ConfigurationError: if dt * omega0 exceeds 0.1
    """
    covs = gaussian_trajectory(state, omega0, g, gamma, temperature, dt, steps)
    transfer, _ = step_propagator(omega0, g, gamma, temperature, dt)
    mean = np.linalg.matrix_power(transfer, steps) @ state.mean
    return GaussianTwoMode(cov=covs[-1], mean=mean, t=state.t + dt * steps)


def symplectic_eigenvalues(cov: np.ndarray) -> np.ndarray:
    """The two symplectic eigenvalues, ascending."""
    values = np.sort(np.abs(np.linalg.eigvals(1j * OMEGA @ cov)))
    return values[::2]


def _min_pt_symplectic(covs: np.ndarray) -> np.ndarray:
    transposed = _PT @ covs @ _PT
    values = np.abs(np.linalg.eigvals(1j * OMEGA @ transposed))
    return values.min(axis=-1)


def log_negativity_gaussian(state: GaussianTwoMode | np.ndarray) -> float:
    """E_N = max(0, -log2(2 nu_min)) of the partially transposed state.

    Raises:
        StateError: if the covariance matrix is not bona fide
    """
    cov = state.cov if isinstance(state, GaussianTwoMode) else np.asarray(state)
    check_covariance(cov)
    nu = float(_min_pt_symplectic(cov[np.newaxis])[0])
    return max(0.0, -math.log2(2.0 * nu))


def log_negativity_series(covs: np.ndarray) -> np.ndarray:
    nu = _min_pt_symplectic(covs)
    return np.maximum(0.0, -np.log2(2.0 * nu))


def max_log_negativity(
    omega0: float,
    nbar: float,
    eta: float,
    g: float,
    periods: int = SCAN_PERIODS,
    gamma: float = 0.0,
    temperature: float = 0.0,
) -> float:
    """Largest E_N reached within ``periods`` trap periods."""
    period = 2 * math.pi / omega0
    dt = period / SCAN_STEPS_PER_PERIOD
    covs = gaussian_trajectory(
        gaussian_init(nbar, eta),
        omega0,
        g,
        gamma,
        temperature,
        dt,
        periods * SCAN_STEPS_PER_PERIOD,
    )
    return float(log_negativity_series(covs).max())


def oscillator_threshold_scan(
    omega0: float,
    nbar: float,
    eta: float,
    g_range: tuple[float, float],
    rel_tol: float = 1e-3,
    threshold: float = DETECTION_THRESHOLD,
) -> float:
    """
    Smallest coupling g whose E_N within ten periods exceeds ``threshold``.

    Bisects in log space inside ``g_range``.

    Raises:
        NumericalError: if ``g_range`` does not bracket the threshold
    """
    lo, hi = g_range
    if not 0 < lo < hi:
        raise ConfigurationError("g_range must satisfy 0 < lo < hi")
    e_lo = max_log_negativity(omega0, nbar, eta, lo)
    e_hi = max_log_negativity(omega0, nbar, eta, hi)
    if e_lo > threshold or e_hi <= threshold:
        raise NumericalError(
            f"g_range [{lo:.3g}, {hi:.3g}] does not bracket the entanglement "
            f"threshold: max E_N = {e_lo:.3g} at lo, {e_hi:.3g} at hi"
        )

    iterations = 0
    while hi / lo > 1 + rel_tol:
        mid = math.sqrt(lo * hi)
        if max_log_negativity(omega0, nbar, eta, mid) > threshold:
            hi = mid
        else:
            lo = mid
        iterations += 1

    log_event(
        "threshold_scan_done",
        logging.DEBUG,
        area="protocols",
        omega0=omega0,
        nbar=nbar,
        eta=eta,
        g_star=hi,
        iterations=iterations,
    )
    return hi


def oscillator_trace(
    state: GaussianTwoMode,
    omega0: float,
    g: float,
    gamma: float,
    temperature: float,
    times: np.ndarray,
) -> SimTrace:
    """Sample E_N at ``times`` (starting at the state's own time)."""
    covs = [state.cov]
    current = state
    for t_prev, t_next in zip(times[:-1], times[1:]):
        interval = float(t_next - t_prev)
        substeps = max(1, math.ceil(interval * omega0 / MAX_STEP_PHASE))
        current = gaussian_evolve(
            current, omega0, g, gamma, temperature, interval / substeps, substeps
        )
        covs.append(current.cov)
    values = log_negativity_series(np.array(covs))
    return SimTrace(
        times=np.asarray(times, dtype=float),
        measure=values,
        log_negativity=values,
        delta_phi=None,
        measure_name="E_N",
    )
