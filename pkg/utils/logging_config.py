"""
Centralized logging configuration.

All log output goes to stderr: stdout carries JSON results for the CLI and the
JSON-RPC stream when the MCP server runs over stdio.
"""

import logging
import sys
from typing import Optional, Union

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# Loggers of the computational modules; they propagate to the root stderr handler.
LIBRARY_LOGGERS = [
    "utils.fields",
    "utils.oracle",
    "utils.reductions",
    "utils.counter",
    "utils.cache",
    "utils.perms",
    "utils.series",
    "utils.verify",
]


def configure_logging(level: Union[int, str] = logging.INFO, stream: Optional[object] = None) -> None:
    """
    Route every logger to a single stderr handler.

    Args:
        level: Root log level (name or number).
        stream: Alternate stream, for tests. Defaults to sys.stderr.
    """
    root_logger = logging.getLogger()
    root_logger.handlers = []

    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root_logger.addHandler(handler)
    root_logger.setLevel(level)

    for name in LIBRARY_LOGGERS:
        logging.getLogger(name).propagate = True

    # fastmcp chatter at INFO drowns the tool logs
    logging.getLogger("fastmcp").setLevel(logging.WARNING)


def verbosity_to_level(verbosity: int) -> int:
    """Map a repeat count of ``-v`` to a log level."""
    if verbosity >= 2:
        return logging.DEBUG
    if verbosity == 1:
        return logging.INFO
    return logging.WARNING


def get_configured_logger(name: str) -> logging.Logger:
    """
    Get a logger that relies on the root stderr handler.

    Args:
        name: Logger name (usually __name__)
    """
    logger = logging.getLogger(name)
    logger.propagate = True
    logger.handlers = []
    return logger
