from functools import lru_cache
from typing import Literal, Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Engine settings, read from MUSTAFIN_* environment variables or .env."""

    model_config = SettingsConfigDict(env_prefix="MUSTAFIN_", env_file=".env", extra="ignore")

    app_name: str = "Mustafin Degenerations"
    debug: bool = False

    # Logging level name; MUSTAFIN_LOG
    log: str = "WARNING"

    # Randomized oracles
    seed: int = 0
    primary_test_seeds: int = 3
    random_entry_bound: int = 100

    # Secondary-component scan
    candidate_radius: int = 1
    max_candidates: int = 32

    # Groebner kernel
    groebner_method: Literal["buchberger", "f5b"] = "buchberger"
    timeout_secs: Optional[float] = None


@lru_cache
def get_settings() -> Settings:
    return Settings()


settings = get_settings()
