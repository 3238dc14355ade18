"""
Configuration settings.

This module loads the engine settings from environment variables (prefix
``FRACOPS_``) or a ``.env`` file and exposes the global ``settings`` instance.
"""

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Engine settings loaded from environment variables."""

    # Application Configuration
    PROJECT_NAME: str = Field(default="fracops", description="Project name")
    VERSION: str = Field(default="1.0.0", description="Application version")
    LOG_LEVEL: str = Field(default="WARNING", description="Root logging level")

    # Comparison Configuration
    TOL: float = Field(
        default=1e-11,
        gt=0.0,
        description="Relative tolerance for coefficient comparison",
    )
    ABS_FLOOR: float = Field(
        default=1e-14,
        gt=0.0,
        description="Absolute floor of coefficient comparison",
    )
    EXPONENT_TOL: float = Field(
        default=1e-12,
        gt=0.0,
        description="Exponents closer than this are merged and compare equal",
    )

    # Output Configuration
    GRID_POINTS: int = Field(
        default=1024,
        ge=2,
        description="Default number of grid intervals for sampled functions",
    )
    OUTPUT_DIGITS: int = Field(
        default=14,
        ge=1,
        le=17,
        description="Significant digits of plain output",
    )

    # Verification Configuration
    RANDOM_SEED: int = Field(default=20240611, description="Seed of randomized suites")
    SUITE_CASES: int = Field(
        default=500,
        ge=1,
        description="Case count of the large randomized suites",
    )
    QUADRATURE_MAX_LEVEL: int = Field(
        default=60,
        ge=4,
        description="Refinement cap of the graded-mesh quadrature oracles",
    )

    model_config = SettingsConfigDict(
        env_prefix="FRACOPS_", env_file=".env", case_sensitive=False
    )

    @field_validator("LOG_LEVEL")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Accept the standard level names in any case."""
        level = v.upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown log level: {v}")
        return level


# Global settings instance
settings = Settings()
