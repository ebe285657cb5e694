"""
Configuration settings for pinfloer

Fixed limits live here as constants; command line flags override them per run.
PINFLOER_THREADS is the only value read from the environment.
"""
from functools import lru_cache

from pydantic import ValidationError, validator
from pydantic_settings import BaseSettings

# Project Info
PROJECT_NAME = "pinfloer"
VERSION = "1.0.0"
FORMAT_VERSION = 1

# Logging
DEFAULT_LOG_LEVEL = "WARNING"

# Grid limits
GRID_SIZE_DEFAULT_CAP = 8
GRID_SIZE_HARD_CAP = 10
SIGN_ASSIGNMENT_MAX_SIZE = 6

# Smith normal form: U and V are only tracked when asked for
SNF_TRACK_TRANSFORMS = False


class Settings(BaseSettings):
    """Environment configuration"""
    PINFLOER_THREADS: int = 1

    @validator("PINFLOER_THREADS")
    def validate_threads(cls, v):
        if v < 1:
            raise ValueError("PINFLOER_THREADS must be at least 1")
        return v

    class Config:
        case_sensitive = True


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    Validated environment settings, read once per process

    Raises:
        ConfigException: If PINFLOER_THREADS is not a positive integer
    """
    # exceptions -> schemas.base -> config
    from pinfloer.core.exceptions import ConfigException

    try:
        return Settings()
    except ValidationError as e:
        errors = e.errors()
        raise ConfigException("PINFLOER_THREADS", errors[0]["msg"] if errors else str(e)) from e

