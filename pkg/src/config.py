"""Runtime configuration.

This module exposes a single `Config` instance which loads settings from
environment variables (prefix `CRITDISC_`) and an optional `.env` file.
`CRITDISC_M_MAX` overrides the default depth of multi-level descent
jumps used when computing minimal critical discriminants.
"""

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):

    M_MAX: int = 2
    JUMP_CANDIDATE_CAP: int = 10_000_000
    RATIO_DIGITS: int = 6
    LOG_PRECISION: int = 50
    CONSISTENCY_CHECKS: bool = True
    CONSISTENCY_DIGIT_THRESHOLD: int = 10_000
    LOG_LEVEL: str = "WARNING"
    model_config = SettingsConfigDict(
        env_prefix="CRITDISC_",
        env_file=".env",
        extra="ignore",
    )


Config = Settings()
