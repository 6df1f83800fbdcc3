"""
Engine settings loaded from environment variables.
Uses pydantic-settings for type-safe configuration management.
"""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Engine settings with automatic .env file loading (prefix ``BK_``)."""

    model_config = SettingsConfigDict(
        env_prefix="BK_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Enumeration / group limits
    max_degree: int = Field(default=5000, ge=1)
    canonical_cap: int = Field(default=8, ge=1)
    census_cap: int = Field(default=7, ge=1)
    width_cap: int = Field(default=20, ge=1)

    # Symmetric/alternating recognition
    giant_min_degree: int = Field(default=8, ge=8)
    giant_tries: int = Field(default=300, ge=0)
    giant_seed: int = 20240601

    # Worker pool
    threads: int = Field(default=1, ge=1)

    # Verify suite
    verify_max_size: int = Field(default=6, ge=3)

    # Logging Settings
    log_level: str = "WARNING"
    log_dir: str = "logs/"


@lru_cache
def get_settings() -> Settings:
    """
    Get cached settings instance.
    Uses lru_cache for singleton-like behavior.
    """
    return Settings()


# Convenience export
settings = get_settings()
