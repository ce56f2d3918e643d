import os
from functools import lru_cache
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict

CONFIG_ENV_VAR = "EDFKIT_CONFIG"


class Settings(BaseSettings):
    """Settings loaded from EDFKIT_* environment variables and an optional dotenv file."""

    model_config = SettingsConfigDict(env_prefix="EDFKIT_", env_file_encoding="utf-8", extra="ignore")

    # Search
    search_budget: int = 100_000_000  # nodes
    progress: bool = False  # tqdm bars on stderr

    # Bounds
    partition_cap: int = 64  # largest a enumerated without an explicit override

    # Catalog
    catalog_dir: str = "catalog"

    # Monte Carlo
    mc_trials: int = 1_000_000
    mc_seed: int = 0
    mc_streams: int = 8

    # Output
    flatten: bool = False
    log_level: str = "WARNING"


def config_file() -> Optional[str]:
    """Dotenv file named by EDFKIT_CONFIG, if any."""
    return os.environ.get(CONFIG_ENV_VAR) or None


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings(_env_file=config_file())
