"""
Logging setup.

Library modules only call ``structlog.get_logger(__name__)``; the command line
configures rendering once. Log lines go to stderr so that stdout carries
nothing but reports.
"""

import logging
import sys
from typing import Any

import structlog

LOG_FORMATS = ("console", "json")


def _stderr_logger(*args: Any) -> structlog.PrintLogger:
    # resolved per call so a replaced sys.stderr is honoured
    return structlog.PrintLogger(file=sys.stderr)


def configure_logging(level: str = "WARNING", fmt: str = "console") -> None:
    """
    Configure structlog for the process.

    Args:
        level: Standard level name (DEBUG, INFO, WARNING, ERROR)
        fmt: "console" for human readable lines, "json" for one JSON object per line
    """
    if fmt not in LOG_FORMATS:
        raise ValueError(f"unknown log format {fmt!r}, expected one of {LOG_FORMATS}")
    numeric = logging.getLevelName(level.upper())
    if not isinstance(numeric, int):
        raise ValueError(f"unknown log level {level!r}")

    renderer = (
        structlog.processors.JSONRenderer(sort_keys=True)
        if fmt == "json"
        else structlog.dev.ConsoleRenderer(colors=False)
    )
    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(numeric),
        logger_factory=_stderr_logger,
        cache_logger_on_first_use=False,
    )
