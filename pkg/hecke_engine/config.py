"""
Configuration management using Pydantic Settings
"""
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Engine settings, read from HECKE_* environment variables or .env"""
    default_rank: int = Field(3, ge=3, description="Rank d used when --d is omitted")
    cache_path: Optional[str] = Field(None, description="Default KL cache file (JSON lines)")
    log_level: str = "WARNING"

    # Memo caches. Entries are pure functions of their keys.
    length_cache_size: int = Field(65536, ge=1)
    mult_cache_size: int = Field(65536, ge=1)
    bruhat_cache_size: int = Field(262144, ge=1)

    # Verification
    check_max_length: int = Field(3, ge=0, description="Length bound for `check --verify`")
    oracle_max_interval: int = Field(4096, ge=1, description="Largest Bruhat interval the canonical oracle will solve")
    report_max_failures: int = Field(20, ge=1, description="Failures kept per suite report")

    model_config = SettingsConfigDict(
        env_prefix="HECKE_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


# Global settings instance
settings = Settings()
