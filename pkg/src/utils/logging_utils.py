import json
import logging
import sys
from typing import Any

logger = logging.getLogger("gravent")
_configured = False


class _StderrHandler(logging.StreamHandler):
    """Writes to whatever ``sys.stderr`` is when a record is emitted."""

    @property
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, _value):
        pass


def ensure_logging_configured(level: int = logging.WARNING) -> None:
    """Attach one stderr handler to the ``gravent`` logger tree.

    Calling again only adjusts the level, so the CLI can re-apply
    ``--verbose``/``--quiet`` on every invocation.
    """
    global _configured

    logger.setLevel(level)
    if not _configured and not logger.handlers:
        handler = _StderrHandler()
        handler.setFormatter(
            logging.Formatter(
                "%(asctime)s %(levelname)s [gravent] %(message)s",
                datefmt="%Y-%m-%dT%H:%M:%S",
            )
        )
        logger.addHandler(handler)
    for handler in logger.handlers:
        handler.setLevel(level)

    logger.propagate = False
    _configured = True


def get_logger(area: str) -> logging.Logger:
    return logging.getLogger(f"gravent.{area}")


def log_event(
    event: str,
    level: int = logging.INFO,
    *,
    area: str | None = None,
    **fields: Any,
) -> None:
    """Emit a single JSON line ``{"event": ..., **fields}``."""
    target = get_logger(area) if area else logger
    if not target.isEnabledFor(level):
        return
    payload = {"event": event, **fields}
    target.log(level, json.dumps(payload, default=str))
