# radialopt/core/config.py
from functools import lru_cache
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # Line search on the perspective function
    GAMMA_TOL: float = 1e-10
    GAMMA_MIN: float = 1e-12
    MAX_EXPANSIONS: int = 200
    INITIAL_GUESS: float = 1.0

    # Oracles
    BOUNDARY_TOL: float = 1e-8
    DENOMINATOR_FLOOR: float = 1e-12
    DEFAULT_SHIFT_H: float = 1.0
    METADATA_TOL: float = 1e-9

    # Runtime invariant checks
    INVARIANT_TOL: float = 1e-9
    RESIDUAL_FACTOR: float = 10.0
    DESCENT_SLACK_TOL: float = 1e-7

    # Runs and output
    DEFAULT_MAX_ITERS: int = 10000
    TRACE_DIGITS: int = 17
    LOG_LEVEL: str = "INFO"

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="RADIALOPT_",
        case_sensitive=True,
        extra="ignore",
    )


@lru_cache()
def get_settings() -> Settings:
    return Settings()
