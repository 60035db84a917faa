"""
Runtime configuration for extrank.

Values come from the process environment (optionally seeded from a .env file)
and are validated into a Settings model. Library code reads get_settings();
the CLI layers flag overrides on top with Settings.with_overrides().
"""

import logging
import os
from functools import lru_cache
from typing import Any, Dict, Optional, Tuple

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

from .errors import ConfigError

load_dotenv()

ENV_PREFIX = "EXTRANK_"

# env var suffix -> Settings field
ENV_FIELDS = {
    "ENUM_CAP": "enumeration_cap",
    "COPE_CAP": "cope_cap",
    "EXHAUSTIVE_CAP": "exhaustive_cap",
    "SAMPLE_PAIRS": "sample_pairs",
    "FUZZ_TRIALS": "fuzz_trials",
    "SEED": "seed",
    "CAT_TOLERANCE": "cat_tolerance",
    "CAT_MAX_ITER": "cat_max_iter",
    "TIE_TOLERANCE": "tie_tolerance",
    "BURDEN_TOLERANCE": "burden_tolerance",
    "LOG_LEVEL": "log_level",
}


class Settings(BaseModel):
    """Validated knobs shared by every module"""

    model_config = {"frozen": True}

    enumeration_cap: int = Field(20, ge=0)
    cope_cap: int = Field(12, ge=0)
    exhaustive_cap: int = Field(7, ge=0)
    sample_pairs: int = Field(2000, ge=1)
    fuzz_trials: int = Field(500, ge=1)
    seed: int = 0
    cat_tolerance: float = Field(1e-9, gt=0)
    cat_max_iter: int = Field(10_000, ge=1)
    tie_tolerance: float = Field(1e-7, ge=0)
    burden_tolerance: float = Field(1e-9, ge=0)
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls) -> "Settings":
        """Build settings from EXTRANK_* environment variables"""
        values: Dict[str, Any] = {}
        for suffix, field in ENV_FIELDS.items():
            raw = os.getenv(ENV_PREFIX + suffix)
            if raw is not None and raw.strip():
                values[field] = raw.strip()
        try:
            return cls(**values)
        except ValidationError as e:
            raise ConfigError(f"invalid {ENV_PREFIX}* setting: {e.errors()[0]['msg']}") from e

    @property
    def numerics(self) -> Tuple[float, int, float, float]:
        """Knobs that change computed scores; part of every score-derived cache key"""
        return (self.cat_tolerance, self.cat_max_iter, self.tie_tolerance, self.burden_tolerance)

    def with_overrides(self, **overrides: Any) -> "Settings":
        """Copy with the given non-None fields replaced"""
        changes = {k: v for k, v in overrides.items() if v is not None}
        if not changes:
            return self
        try:
            return Settings(**{**self.model_dump(), **changes})
        except ValidationError as e:
            raise ConfigError(str(e.errors()[0]["msg"])) from e


_active: Optional[Settings] = None


@lru_cache(maxsize=1)
def _environment_settings() -> Settings:
    return Settings.from_env()


def get_settings() -> Settings:
    return _active if _active is not None else _environment_settings()


def use_settings(settings: Optional[Settings]) -> None:
    """Install settings for the whole process; None returns to the environment"""
    global _active
    _active = settings


def configure_logging(level: str = "") -> None:
    """Install a stderr handler for the extrank logger hierarchy"""
    name = (level or get_settings().log_level).upper()
    numeric = logging.getLevelName(name)
    if not isinstance(numeric, int):
        raise ConfigError(f"unknown log level '{level}'")
    logging.basicConfig(
        level=numeric,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    logging.getLogger("extrank").setLevel(numeric)
