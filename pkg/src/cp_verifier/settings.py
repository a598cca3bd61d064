"""Environment-driven defaults.

Values come from the process environment, with a ``.env`` file in the
working directory loaded first. Command-line flags override them.
"""

import os
from typing import Optional

from dotenv import load_dotenv

load_dotenv()

DEFAULT_SOLVER = "z3"
DEFAULT_SOLVER_ARGS = "-in"
DEFAULT_TIMEOUT = 30.0
DEFAULT_LOG_LEVEL = "WARNING"


def env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if not raw:
        return default
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"{name} must be a number, got {raw!r}") from None


def env_int(name: str, default: Optional[int] = None) -> Optional[int]:
    raw = os.getenv(name)
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


def default_jobs() -> int:
    return env_int("CPV_JOBS") or os.cpu_count() or 1


def default_max_steps() -> Optional[int]:
    return env_int("CPV_MAX_STEPS")


def log_level() -> str:
    return os.getenv("CPV_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()
