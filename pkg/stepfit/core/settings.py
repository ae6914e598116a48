"""Environment-specific settings management."""

from pathlib import Path
from typing import Optional

from pydantic import Field, field_validator
from pydantic_settings import SettingsConfigDict

from .config import Algorithm, BaseAppSettings, Environment, LogLevel, get_env_file


class ApplicationSettings(BaseAppSettings):
    """Base application settings."""

    ENVIRONMENT: Environment = Field(
        default=Environment.DEVELOPMENT,
        description="Environment the application is running in",
    )
    DEBUG: bool = Field(default=False, description="Debug mode flag")
    PROJECT_NAME: str = Field(default="stepfit", description="Project name")
    VERSION: str = Field(
        default="0.1.0",
        description="Project version",
        pattern="^[0-9]+\\.[0-9]+\\.[0-9]+$",
    )


class LoggingSettings(BaseAppSettings):
    """Logging configuration settings."""

    LEVEL: LogLevel = Field(default=LogLevel.WARNING, description="Logging level")
    FORMAT: str = Field(
        default="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        description="Log message format",
    )
    FILE_PATH: Optional[Path] = Field(
        default=Path("./logs/stepfit.log"), description="Log file path"
    )
    LOG_TO_FILE: bool = Field(default=False, description="Enable logging to file")
    LOG_JSON: bool = Field(
        default=False, description="Emit JSON log records outside production too"
    )


class SolverSettings(BaseAppSettings):
    """Solver and command-line output settings (``STEPFIT_`` prefix)."""

    model_config = SettingsConfigDict(
        env_prefix="STEPFIT_",
        env_file=get_env_file(),
        env_file_encoding="utf-8",
        case_sensitive=False,
        validate_default=True,
        extra="ignore",
    )

    TRACE: bool = Field(
        default=False, description="Emit one trace record per parametric round"
    )
    AUDIT: bool = Field(
        default=False,
        description="Re-check every resolved comparison once the optimum is known",
    )
    PRECISION: int = Field(
        default=12, ge=1, le=100, description="Significant digits of decimal output"
    )
    DEFAULT_ALGORITHM: Algorithm = Field(
        default=Algorithm.PARAMETRIC, description="Backend used when none is given"
    )
    PARTITION_ORACLE_LIMIT: int = Field(
        default=12, ge=1, description="Largest n accepted by the partition oracle"
    )
    KCENTER_ORACLE_LIMIT: int = Field(
        default=64, ge=1, description="Largest n accepted by the k-center DP oracle"
    )


class Settings(BaseAppSettings):
    """Main settings class that combines all settings."""

    app: ApplicationSettings = Field(default_factory=ApplicationSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)
    solver: SolverSettings = Field(default_factory=SolverSettings)

    @field_validator("app")
    def validate_app_settings(cls, v: ApplicationSettings) -> ApplicationSettings:
        """Validate application settings based on environment."""
        if v.ENVIRONMENT == Environment.PRODUCTION:
            assert v.DEBUG is False, "Debug mode must be disabled in production"
        return v


# Singleton instance
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get singleton instance of settings."""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reset_settings() -> None:
    """Drop the cached settings so the next call re-reads the environment."""
    global _settings
    _settings = None
