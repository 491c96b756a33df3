"""
Runtime configuration.

Values come from the process environment, optionally seeded from a ``.env``
file in the working directory.
"""

import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

from .errors import ConfigError

ENV_PREFIX = "IJ_TAMARI_"

DEFAULT_MAX_REDUCTIONS = 1_000_000
DEFAULT_MAX_FLOW_COUNT = 10**15
DEFAULT_MAX_PAIR_SIZE = 16
DEFAULT_WORKERS = 1
DEFAULT_LOG_LEVEL = "WARNING"

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class Settings:
    """
    Limits and defaults shared by the library and the CLI.

    Attributes:
        max_reductions: cap on leaf reductions performed while building one reduction tree
        max_flow_count: overflow bound for the integer-flow counter
        max_pair_size: largest |I|+|Jbar| for which sweeps run triangulation-level checks
        workers: process pool size for sweeps
        output_dir: default directory for emitted artifacts, None means stdout
        log_level: console log level used by the CLI
    """

    max_reductions: int = DEFAULT_MAX_REDUCTIONS
    max_flow_count: int = DEFAULT_MAX_FLOW_COUNT
    max_pair_size: int = DEFAULT_MAX_PAIR_SIZE
    workers: int = DEFAULT_WORKERS
    output_dir: Optional[Path] = None
    log_level: str = DEFAULT_LOG_LEVEL

    def with_overrides(self, **overrides) -> "Settings":
        """Return a copy with every non-None override applied and validated."""
        changes = {key: value for key, value in overrides.items() if value is not None}
        updated = replace(self, **changes)
        updated.validate()
        return updated

    def validate(self) -> None:
        for name in ("max_reductions", "max_flow_count", "max_pair_size", "workers"):
            value = getattr(self, name)
            if not isinstance(value, int) or value <= 0:
                raise ConfigError(f"{name} must be a positive integer", {name: value})
        if self.log_level not in _LOG_LEVELS:
            raise ConfigError("unknown log level", {"log_level": self.log_level})


def _positive_int(name: str, default: int) -> int:
    raw = os.getenv(ENV_PREFIX + name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw.replace("_", ""))
    except ValueError as exc:
        raise ConfigError(f"{ENV_PREFIX + name} is not an integer", {"value": raw}) from exc
    if value <= 0:
        raise ConfigError(f"{ENV_PREFIX + name} must be positive", {"value": value})
    return value


def load_settings() -> Settings:
    """
    Load settings from the environment.

    Returns:
        Settings: validated settings with defaults for unset variables

    Raises:
        ConfigError: if a variable is set to an unusable value
    """
    load_dotenv()

    output_dir = os.getenv(ENV_PREFIX + "OUTPUT_DIR")
    settings = Settings(
        max_reductions=_positive_int("MAX_REDUCTIONS", DEFAULT_MAX_REDUCTIONS),
        max_flow_count=_positive_int("MAX_FLOW_COUNT", DEFAULT_MAX_FLOW_COUNT),
        max_pair_size=_positive_int("MAX_PAIR_SIZE", DEFAULT_MAX_PAIR_SIZE),
        workers=_positive_int("WORKERS", DEFAULT_WORKERS),
        output_dir=Path(output_dir) if output_dir else None,
        log_level=os.getenv(ENV_PREFIX + "LOG_LEVEL", DEFAULT_LOG_LEVEL).upper(),
    )
    settings.validate()
    return settings
