import logging
import math

from src.lib.feasibility.solver import selected_channels
from src.lib.sweep.grid import cell_margin
from src.models.experiment_model import ExperimentConfig
from src.models.sweep_model import AxisScale, Frontier, FrontierPoint, SweepGrid
from src.utils.error_utils import FrontierError
from src.utils.logging_utils import log_event

FRONTIER_REL_TOL = 1e-6
MAX_BISECTIONS = 200


def _midpoint(a: float, b: float, scale: AxisScale) -> float:
    if scale is AxisScale.LOG:
        return math.sqrt(a * b)
    return 0.5 * (a + b)


def frontier(
    grid: SweepGrid, base: ExperimentConfig, channels=None
) -> Frontier:
    """
    Trace the margin = 1 boundary, one point per axis1 column.

    In each column the first pair of neighbouring valid cells that disagree on
    feasibility is narrowed by bisection along axis2, re-evaluating the
    budget. Columns without such a pair are skipped.

    Raises:
        FrontierError: if no column crosses the boundary
    """
    chosen = selected_channels(base, channels)
    u1, u2 = grid.axis1.unknown, grid.axis2.unknown
    points: list[FrontierPoint] = []
    skipped: list[int] = []

    for i, column in enumerate(grid.cells):
        pair = next(
            (
                (lower, upper)
                for lower, upper in zip(column, column[1:])
                if lower.valid and upper.valid and lower.feasible != upper.feasible
            ),
            None,
        )
        if pair is None:
            skipped.append(i)
            log_event("frontier_column_skipped", logging.DEBUG, area="sweep", column=i)
            continue

        lower, upper = pair
        v1 = grid.values1[i]
        a, b = lower.value2, upper.value2
        a_feasible = lower.feasible
        for _ in range(MAX_BISECTIONS):
            if abs(b - a) <= FRONTIER_REL_TOL * max(abs(a), abs(b)):
                break
            mid = _midpoint(a, b, grid.axis2.scale)
            margin, _ = cell_margin(base, u1, v1, u2, mid, chosen)
            if (margin > 1) == a_feasible:
                a = mid
            else:
                b = mid
        points.append(FrontierPoint(value1=v1, value2=_midpoint(a, b, grid.axis2.scale)))

    if not points:
        mask = grid.feasible_mask()
        if mask.all():
            state = "every cell is feasible"
        elif not mask.any():
            state = "no cell is feasible"
        else:
            state = "feasibility never changes along axis2"
        raise FrontierError(f"no feasibility boundary in the grid: {state}")

    points.sort(key=lambda point: point.value1)
    return Frontier(unknown1=u1, unknown2=u2, points=points, skipped_columns=skipped)
