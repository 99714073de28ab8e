"""
utils/settings.py — Runtime configuration loaded from the environment.

Values come from process environment variables, optionally seeded from a
``.env`` file in the working directory. See ``.env.example``.
"""

import os
from dataclasses import dataclass

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

DEFAULT_ENUMERATION_BUDGET = 10**8
DEFAULT_HYPERSURFACE_CAP = 5 * 10**5
DEFAULT_KMAX = 64


@dataclass(frozen=True)
class Settings:
    enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET
    hypersurface_cap: int = DEFAULT_HYPERSURFACE_CAP
    k_max: int = DEFAULT_KMAX
    workers: int = 1
    log_level: str = "WARNING"


def _positive_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw.strip().replace("_", ""))
    except ValueError:
        raise ValueError(f"{name} must be a positive integer, got {raw!r}.")
    if value < 1:
        raise ValueError(f"{name} must be a positive integer, got {raw!r}.")
    return value


def load_settings() -> Settings:
    """Read FROBENIUSKIT_* variables into a Settings instance."""
    return Settings(
        enumeration_budget=_positive_int("FROBENIUSKIT_BUDGET", DEFAULT_ENUMERATION_BUDGET),
        hypersurface_cap=_positive_int("FROBENIUSKIT_HYPERSURFACE_CAP", DEFAULT_HYPERSURFACE_CAP),
        k_max=_positive_int("FROBENIUSKIT_KMAX", DEFAULT_KMAX),
        workers=_positive_int("FROBENIUSKIT_WORKERS", 1),
        log_level=os.getenv("FROBENIUSKIT_LOG_LEVEL", "WARNING").upper(),
    )


settings = load_settings()
