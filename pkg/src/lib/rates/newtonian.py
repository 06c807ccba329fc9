from src.lib.quantities.constants import get_constants
from src.utils.error_utils import DomainError


def newtonian_potential(m: float, r: float) -> float:
    """G m / r; the attractive sign is left to the caller."""
    if r <= 0:
        raise DomainError(f"potential needs r > 0, got {r!r}")
    return get_constants().G * m / r


def feynman_accelerations(
    m_s: float, x_L: float, x_R: float, x0: float
) -> tuple[float, float]:
    """Acceleration magnitudes of a test mass at x0 for a source at x_L or x_R."""
    if x_L == x0 or x_R == x0:
        raise DomainError("source and test mass positions coincide")
    G = get_constants().G
    return G * m_s / (x_L - x0) ** 2, G * m_s / (x_R - x0) ** 2
