"""
Central logging configuration used across the package.

Features:
- INFO level by default, DEBUG if settings.debug is True
- Structured format with timestamps
- Writes to stderr; stdout is reserved for JSON/CSV results
"""

import logging
import sys
from typing import Any, Dict, Optional

import numpy as np

from src.config.settings import settings

_level = logging.DEBUG if settings.debug else logging.INFO

logging.basicConfig(
    level=_level,
    format="%(asctime)s │ %(levelname)-8s │ %(name)s │ %(message)s",
    stream=sys.stderr,
)

logger = logging.getLogger("xkm")


def set_verbosity(verbose: bool) -> None:
    """Switch the package logger between INFO and DEBUG at runtime."""
    logger.setLevel(logging.DEBUG if verbose else _level)


def summarize_log_data(data: Any) -> Any:
    """
    Make data safe and compact for a log line.

    Arrays collapse to their shape, long sequences and strings are truncated.
    """
    if isinstance(data, np.ndarray):
        return f"<array shape={data.shape} dtype={data.dtype}>"

    if isinstance(data, dict):
        return {key: summarize_log_data(value) for key, value in data.items()}

    if isinstance(data, (list, tuple)):
        if len(data) > 20:
            return [summarize_log_data(item) for item in data[:20]] + [f"... +{len(data) - 20}"]
        return [summarize_log_data(item) for item in data]

    if isinstance(data, str) and len(data) > 500:
        return data[:497] + "..."

    if isinstance(data, float):
        return round(data, 12)

    return data


def log_system_event(event: str, metadata: Optional[Dict[str, Any]] = None) -> None:
    """
    Log a system event with metadata.

    Args:
        event: Event description
        metadata: Event metadata (will be summarized)
    """
    logger.info("System event: %s | Metadata: %s", event, summarize_log_data(metadata or {}))


def log_algorithm_run(algorithm: str, duration: Optional[float] = None, **metadata: Any) -> None:
    """
    Log one completed algorithm run.

    Args:
        algorithm: Algorithm name (imm, twocut, lloyd, ...)
        duration: Wall time in seconds (optional)
        **metadata: Key numbers of the run (n, d, k, cost, depth, ...)
    """
    log_data: Dict[str, Any] = {"algorithm": algorithm, **summarize_log_data(metadata)}

    if duration is not None:
        log_data["duration_ms"] = round(duration * 1000, 2)

    logger.info("Algorithm run: %s", log_data)
