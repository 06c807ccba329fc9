"""
Error types for the gravent toolkit.
Provides the exception hierarchy and a structured JSON rendering of errors for
machine-readable output.
"""

import json
from typing import Any, Literal


class GraventError(Exception):
    """Base class for every error raised on purpose by the toolkit."""


class DomainError(GraventError, ValueError):
    """A physical input lies outside the domain of a formula.

    Raised for nonpositive masses or distances, a zero temperature where a
    thermal wavelength is needed, coincident positions and the like.
    """


class ConfigurationError(GraventError, ValueError):
    """A configuration document or call contract is invalid.

    ``path`` is the dotted JSON path of the offending key when one is known.
    """

    def __init__(self, message: str, path: str | None = None):
        super().__init__(message if path is None else f"{path}: {message}")
        self.path = path


class StateError(GraventError, ValueError):
    """A density or covariance matrix violates its physical invariants."""


class NumericalError(GraventError):
    """A numerical procedure could not produce a trustworthy answer."""


BracketKind = Literal["feasible_everywhere", "infeasible_everywhere"]


class BracketError(NumericalError):
    """No crossing of margin = 1 was found inside the widest allowed bracket.

    ``kind`` tells whether the selected channels were feasible or infeasible
    at every sampled value of the unknown.
    """

    def __init__(
        self,
        unknown: str,
        kind: BracketKind,
        bracket: tuple[float, float],
    ):
        lo, hi = bracket
        super().__init__(
            f"no crossing for {unknown} in [{lo:.3g}, {hi:.3g}]: "
            f"{kind.replace('_', ' ')}"
        )
        self.unknown = unknown
        self.kind = kind
        self.bracket = bracket


class FrontierError(NumericalError):
    """A sweep grid holds no feasible/infeasible boundary to trace."""


def error_type_name(exc: BaseException) -> str:
    """Snake-case name used in structured error payloads."""
    name = type(exc).__name__
    out = []
    for i, ch in enumerate(name):
        if ch.isupper() and i:
            out.append("_")
        out.append(ch.lower())
    return "".join(out)


def structured_error_message(exc: BaseException) -> str:
    """
    Construct a structured error message for ``--json`` output.

    Args:
        exc: The exception to render

    Returns:
        Stringified JSON with structured error information
    """
    payload: dict[str, Any] = {"type": error_type_name(exc), "error": str(exc)}
    path = getattr(exc, "path", None)
    if path:
        payload["path"] = path
    kind = getattr(exc, "kind", None)
    if kind:
        payload["kind"] = kind

    return json.dumps({"type": "gravent.error", "payload": payload})
