"""
Logging Configuration
Centralized logging setup. Logs go to stderr so stdout carries only reports.
"""

import logging
import sys
from typing import Optional


def setup_logging(level: int = logging.WARNING, log_format: Optional[str] = None) -> logging.Logger:
    """
    Setup logging configuration.

    Args:
        level: Logging level (default: WARNING)
        log_format: Optional custom log format

    Returns:
        Configured logger
    """
    if log_format is None:
        log_format = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    logging.basicConfig(
        level=level,
        format=log_format,
        datefmt='%Y-%m-%d %H:%M:%S',
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )

    return logging.getLogger(__name__)


def parse_level(name: Optional[str], default: int = logging.WARNING) -> int:
    """
    Translate a level name such as "debug" into a logging level.

    Args:
        name: Level name, case-insensitive; None keeps the default
        default: Level used when the name is unknown

    Returns:
        Numeric logging level
    """
    if not name:
        return default
    level = logging.getLevelName(name.upper())
    return level if isinstance(level, int) else default
