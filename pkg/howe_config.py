import logging
import os
from typing import Optional

from app.errors import ConfigurationError
from app.howe.pairs import DEFAULT_PAIR_BOUND

# Environment variables, read at call time so tests can monkeypatch them
THREADS_VAR = "HOWE_THREADS"
OUT_DIR_VAR = "HOWE_OUT_DIR"
SEED_VAR = "HOWE_SEED"
LOG_LEVEL_VAR = "HOWE_LOG_LEVEL"
PAIR_BOUND_VARS = {5: "HOWE_PAIR_BOUND_G5", 6: "HOWE_PAIR_BOUND_G6"}

DEFAULT_OUT_DIR = "certificates"


def env_int(name: str, default: int, minimum: Optional[int] = None) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}") from None
    if minimum is not None and value < minimum:
        raise ConfigurationError(f"{name} must be at least {minimum}, got {value}")
    return value


def get_threads() -> int:
    return env_int(THREADS_VAR, 1, minimum=1)


def get_out_dir() -> str:
    return os.getenv(OUT_DIR_VAR) or DEFAULT_OUT_DIR


def get_seed() -> int:
    return env_int(SEED_VAR, 0)


def get_pair_bound(genus: int) -> int:
    return env_int(PAIR_BOUND_VARS[genus], DEFAULT_PAIR_BOUND[genus], minimum=7)


def init_logging(level: Optional[str] = None) -> None:
    """
    Install one stream handler printing bare messages, so the per-prime lines
    can be parsed. The level comes from HOWE_LOG_LEVEL when not given.
    """
    level = (level or os.getenv(LOG_LEVEL_VAR) or "INFO").upper()
    if not isinstance(logging.getLevelName(level), int):
        raise ConfigurationError(f"{LOG_LEVEL_VAR} must be a logging level name, got {level!r}")
    logging.basicConfig(level=level, format="%(message)s", force=True)
