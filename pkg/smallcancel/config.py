from __future__ import annotations

from typing import Optional

import dotenv
from pydantic_settings import BaseSettings

# Load environment variables from .env file
dotenv.load_dotenv()


class Settings(BaseSettings):
    # Word syntax
    generator_cap: int = 2**32 - 1

    # Construction defaults
    n_rep: int = 80
    k_min: int = 2
    k_max: int = 6
    lambda_target: str = "1/10"

    # Run configuration
    threads: int = 1
    seed: int = 0
    log_level: str = "WARNING"

    class Config:
        env_prefix = "SMALLCANCEL_"
        env_file = ".env"
        extra = "ignore"  # Ignore extra fields


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings
