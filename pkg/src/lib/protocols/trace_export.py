from pathlib import Path

from src.models.protocol_model import SimTrace
from src.utils.io_utils import csv_text, format_float, write_text

TRACE_COLUMNS = ("t_s", "delta_phi_rad", "negativity", "E_N")


def trace_csv(trace: SimTrace) -> str:
    """One row per sample; columns that do not apply to the protocol stay empty."""
    is_negativity = trace.measure_name == "negativity"
    rows = []
    for k, t in enumerate(trace.times):
        rows.append(
            [
                format_float(float(t)),
                format_float(float(trace.delta_phi[k])) if trace.delta_phi is not None else "",
                format_float(float(trace.measure[k])) if is_negativity else "",
                format_float(float(trace.log_negativity[k])),
            ]
        )
    return csv_text(TRACE_COLUMNS, rows)


def write_trace_csv(trace: SimTrace, path: Path) -> None:
    write_text(path, trace_csv(trace))
