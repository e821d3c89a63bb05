"""
Runtime Settings
Environment-driven configuration (GAUSSMP_* variables and .env file)
"""
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Settings read from the environment; CLI flags take precedence over these"""

    model_config = SettingsConfigDict(
        env_prefix="GAUSSMP_",
        env_file=".env",
        extra="ignore",
    )

    default_tol: Optional[float] = Field(
        None, ge=0, description="Absolute tolerance overriding the scale-aware default"
    )
    log_level: str = Field("INFO", description="Logging level name")
    run_log_path: str = Field(
        "gaussmp_runs.db", description="Sidecar sqlite run log; empty disables it"
    )
    max_workers: int = Field(1, ge=1, description="Threads used for ensemble work")


def get_settings() -> Settings:
    """Read settings fresh from the current environment"""
    return Settings()
