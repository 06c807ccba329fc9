"""
Human-readable renderings of budgets, bounds and simulation summaries.
"""

from src.models.budget_model import RateBudget
from src.models.feasibility_model import BoundResult, DelocalizationResult
from src.utils.format_utils import engineering, render_table


def budget_text(budget: RateBudget, protocol: str) -> str:
    rows = [
        [
            entry.channel.value,
            engineering(entry.rate),
            "inf" if entry.margin_infinite else engineering(entry.margin),
            "ok" if entry.margin > 1 else "fails",
        ]
        for entry in budget.channels
    ]
    lines = [
        f"protocol:        {protocol}",
        f"gamma_ent [1/s]: {engineering(budget.gamma_ent)}",
        "",
        render_table(["channel", "rate [1/s]", "margin", ""], rows),
        "",
        f"binding channel: {budget.binding_channel.value}",
    ]
    if budget.total_rate is not None:
        lines.append(f"total rate [1/s]: {engineering(budget.total_rate)}")
        lines.append(f"aggregate margin: {engineering(budget.aggregate_margin)}")
    if budget.log_negativity is not None:
        lines.append(f"E_N estimate:    {budget.log_negativity:.3g}")
    lines.append(f"feasible:        {'yes' if budget.feasible else 'no'}")
    for warning in budget.warnings:
        where = f" [{warning.channel.value}]" if warning.channel else ""
        lines.append(f"warning{where}: {warning.message}")
    return "\n".join(lines)


def bound_text(result: BoundResult) -> str:
    relation = ">" if result.direction.value == "lower_bound" else "<"
    return (
        f"{result.unknown.value} {relation} {engineering(result.threshold, result.unit)}"
        f"  (binding: {result.channel.value}, {result.iterations} bisections)"
    )


def delocalization_text(result: DelocalizationResult) -> str:
    rows = []
    for row in result.table:
        if row.delta_x_min is not None:
            bound = f"> {engineering(row.delta_x_min, 'm')}"
        elif row.delta_x_max is not None:
            bound = f"< {engineering(row.delta_x_max, 'm')}"
        else:
            bound = "any dx" if row.passes else "no dx"
        rows.append([row.channel.value, bound])
    lines = [render_table(["channel", "delta_x"], rows), ""]
    if result.delta_x_min is not None and result.binding_channel is not None:
        lines.append(
            f"delta_x_min: {engineering(result.delta_x_min, 'm')}"
            f" (binding: {result.binding_channel.value})"
        )
    if result.infeasible_channels:
        names = ", ".join(c.value for c in result.infeasible_channels)
        lines.append(f"infeasible at every delta_x: {names}")
    return "\n".join(lines)
