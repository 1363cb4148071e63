"""
Runtime Settings
Environment-driven settings, optionally loaded from backend/.env.
"""

import logging
import os
from dataclasses import dataclass
from pathlib import Path

from dotenv import load_dotenv

from .logging_config import parse_level

env_path = Path(__file__).resolve().parent.parent / '.env'
load_dotenv(dotenv_path=env_path)

DEFAULT_SEED = 20240611


@dataclass(frozen=True)
class Settings:
    """Process-wide settings; CLI flags override these."""
    log_level: int = logging.WARNING
    color: bool = False
    seed: int = DEFAULT_SEED
    grading_period: int = 0


def _env_flag(name: str) -> bool:
    return os.getenv(name, 'false').strip().lower() in ('1', 'true', 'yes', 'on')


def get_settings() -> Settings:
    """
    Read settings from the environment.

    Returns:
        Settings built from FLOERCALC_* variables
    """
    return Settings(
        log_level=parse_level(os.getenv('FLOERCALC_LOG_LEVEL')),
        color=_env_flag('FLOERCALC_COLOR'),
        seed=int(os.getenv('FLOERCALC_SEED', str(DEFAULT_SEED))),
        grading_period=int(os.getenv('FLOERCALC_GRADING_PERIOD', '0')),
    )
