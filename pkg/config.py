# config.py
"""Configuration settings for the adjoint tensor power toolkit."""
import os
from functools import lru_cache
from pathlib import Path
from typing import Literal, Optional

import yaml
from pydantic import BaseModel, Field

# Data directory holding settings and diagram fixtures
DATA_DIR = Path(__file__).resolve().parent / "data_files"

# Default settings file; SLN_SETTINGS may point elsewhere
SETTINGS_FILE = DATA_DIR / "settings.yaml"

# Diagram JSON fixtures
FIGURE_FIXTURE_DIR = DATA_DIR

SETTINGS_ENV_VAR = "SLN_SETTINGS"


class Settings(BaseModel):
    """Validated runtime settings."""

    tensor_dimension_limit: int = Field(1_000_000, gt=0)
    oracle_weight_limit: int = Field(10_000_000, gt=0)
    random_seed: int = 42
    spot_checks: int = Field(25, ge=1)
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "INFO"
    default_format: Literal["json", "csv"] = "json"


def load_settings(path: Optional[Path] = None) -> Settings:
    """
    Read settings from a YAML file.

    Args:
        path: YAML file; defaults to $SLN_SETTINGS or data_files/settings.yaml

    Returns:
        Settings with defaults for every missing key

    Raises:
        pydantic.ValidationError: If a value is invalid
    """
    if path is None:
        path = Path(os.environ.get(SETTINGS_ENV_VAR, SETTINGS_FILE))
    if not path.exists():
        return Settings()
    with open(path, "r") as f:
        data = yaml.safe_load(f) or {}
    return Settings(**data)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return load_settings()
