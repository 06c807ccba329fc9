"""
Grid and frontier export: CSV tables and one SVG feasibility figure.

All outputs are byte-identical for identical inputs: floats are written with
``repr`` and the SVG carries neither a date nor random element ids.
"""

from io import StringIO
from pathlib import Path

import matplotlib
import numpy as np
from matplotlib.figure import Figure

from src.models.budget_model import ChannelId
from src.models.sweep_model import Axis, AxisScale, Frontier, SweepCell, SweepGrid
from src.utils.error_utils import ConfigurationError
from src.utils.io_utils import csv_text, format_float, read_csv_rows, write_text

# Margins beyond 1e6 either way are clipped in the heat map
HEAT_DECADES = 6.0

GRID_TAIL_COLUMNS = ("valid", "feasible", "min_margin", "binding_channel", "error")


def grid_header(grid: SweepGrid) -> list[str]:
    return ["i", "j", grid.axis1.unknown.value, grid.axis2.unknown.value, *GRID_TAIL_COLUMNS]


def grid_csv(grid: SweepGrid) -> str:
    rows = (
        [
            str(cell.i),
            str(cell.j),
            format_float(cell.value1),
            format_float(cell.value2),
            "true" if cell.valid else "false",
            "true" if cell.feasible else "false",
            format_float(cell.min_margin),
            cell.binding_channel.value if cell.binding_channel else "",
            cell.error or "",
        ]
        for cell in grid.flat_cells()
    )
    return csv_text(grid_header(grid), rows)


def frontier_csv(front: Frontier) -> str:
    rows = (
        [format_float(point.value1), format_float(point.value2)] for point in front.points
    )
    return csv_text([front.unknown1.value, front.unknown2.value], rows)


def write_grid_csv(grid: SweepGrid, path: Path) -> None:
    write_text(path, grid_csv(grid))


def write_frontier_csv(front: Frontier, path: Path) -> None:
    write_text(path, frontier_csv(front))


def load_grid_csv(path: Path, axis1: Axis, axis2: Axis) -> SweepGrid:
    """Rebuild a grid written by ``write_grid_csv``.

    Raises:
        ConfigurationError: if the header does not match the axes
    """
    header, rows = read_csv_rows(path)
    expected = ["i", "j", axis1.unknown.value, axis2.unknown.value, *GRID_TAIL_COLUMNS]
    if header != expected:
        raise ConfigurationError(f"unexpected grid header {header}", path=str(path))

    cells: list[list[SweepCell | None]] = [[None] * axis2.points for _ in range(axis1.points)]
    for i, j, v1, v2, valid, feasible, margin, channel, error in rows:
        cell = SweepCell(
            i=int(i),
            j=int(j),
            value1=float(v1),
            value2=float(v2),
            valid=valid == "true",
            feasible=feasible == "true",
            min_margin=float(margin) if margin else None,
            binding_channel=ChannelId(channel) if channel else None,
            error=error or None,
        )
        cells[cell.i][cell.j] = cell
    return SweepGrid(
        axis1=axis1,
        axis2=axis2,
        values1=[column[0].value1 for column in cells],
        values2=[cell.value2 for cell in cells[0]],
        cells=cells,
    )


def _axis_label(axis: Axis) -> str:
    return axis.unknown.value.replace("_", " ")


def render_svg(grid: SweepGrid, front: Frontier | None) -> str:
    """Heat map of log10(min margin) with the frontier polyline on top."""
    with np.errstate(divide="ignore"):
        heat = np.log10(grid.margin_array())
    heat = np.clip(heat, -HEAT_DECADES, HEAT_DECADES)

    with matplotlib.rc_context({"svg.hashsalt": "gravent", "svg.fonttype": "none"}):
        fig = Figure(figsize=(6.4, 4.8))
        ax = fig.subplots()
        mesh = ax.pcolormesh(
            np.asarray(grid.values1),
            np.asarray(grid.values2),
            heat.T,
            shading="nearest",
            cmap="RdYlGn",
            vmin=-HEAT_DECADES,
            vmax=HEAT_DECADES,
        )
        fig.colorbar(mesh, ax=ax, label="log10 min margin")
        if front is not None and front.points:
            ax.plot(
                [p.value1 for p in front.points],
                [p.value2 for p in front.points],
                color="black",
                linewidth=1.5,
                label="margin = 1",
            )
            ax.legend(loc="best")
        if grid.axis1.scale is AxisScale.LOG:
            ax.set_xscale("log")
        if grid.axis2.scale is AxisScale.LOG:
            ax.set_yscale("log")
        ax.set_xlabel(_axis_label(grid.axis1))
        ax.set_ylabel(_axis_label(grid.axis2))
        ax.set_title("feasibility")

        buffer = StringIO()
        fig.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()


def write_svg(grid: SweepGrid, front: Frontier | None, path: Path) -> None:
    write_text(path, render_svg(grid, front))
