import json
from functools import lru_cache
from pathlib import Path
from typing import Literal

from pydantic import Field, ValidationError
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

from ..exceptions import ConfigurationError
from ..scattering.constants import FIGURE_STEPS
from ..scattering.model import JumpVariant
from .logger import get_logger

_logger = get_logger(__name__)


class Settings(BaseSettings):
    """Defaults for every CLI option.

    Values come from init arguments only, i.e. an optional JSON config file
    passed through :func:`load_settings`. Environment variables and dotenv
    files are not read.
    """

    # Problem
    energy: float = 2.0
    m: float = 1.0
    va: float = 1.0
    vb: float = 1.0
    a0: float = 1.0
    variant: JumpVariant = JumpVariant.DERIVED

    # Sweep
    axis: Literal["E", "Va", "Vb", "a0"] = "E"
    lo: float = 1.001
    hi: float = 4.0
    steps: int = Field(default=FIGURE_STEPS, ge=1)
    workers: int = Field(default=1, ge=1)

    # Oracle
    epsilon: float = Field(default=1e-3, gt=0)

    # Output
    output_format: Literal["csv", "json"] = "csv"
    output_directory: Path = Path("./output")
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "INFO"

    model_config = SettingsConfigDict(extra="forbid", validate_assignment=True)

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings,)


def load_settings(config_path: Path | None = None) -> Settings:
    """Build settings from an optional JSON config file.

    :raises ConfigurationError: if the file is unreadable, not a JSON object,
        or holds unknown or invalid keys
    """
    if config_path is None:
        return Settings()
    try:
        data = json.loads(Path(config_path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"Cannot read config file {config_path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigurationError(f"Config file {config_path} must hold a JSON object")
    try:
        settings = Settings(**data)
    except ValidationError as exc:
        raise ConfigurationError(f"Invalid config file {config_path}: {exc}") from exc
    _logger.debug("Loaded settings from %s", config_path)
    return settings


@lru_cache(maxsize=1)
def get_settings(config_path: Path | None = None) -> Settings:
    """Return cached settings for ``config_path``."""
    return load_settings(config_path)


def reset_settings_cache() -> None:
    """Clear the cached settings instance."""
    get_settings.cache_clear()
