"""Application configuration using pydantic-settings pattern."""

from functools import lru_cache
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings loaded from environment variables.

    Every field can be overridden with a ``CGSP_`` prefixed variable,
    e.g. ``CGSP_OUTPUT_DIR=/scratch/runs``.
    """

    # Application
    app_name: str = "Coupled Gaussian Synth"
    app_version: str = "0.1.0"
    log_level: str = Field(default="INFO")

    # Output
    output_dir: Path = Field(
        default=Path("runs"),
        description="Default directory for generated data and reports",
    )

    # Ensemble generation
    workers: int = Field(
        default=1,
        ge=1,
        le=256,
        description="Worker threads used to synthesize realizations",
    )

    # Oracle
    oracle_max_length: int = Field(
        default=64,
        ge=2,
        description="Largest sequence length accepted by the dense oracle",
    )

    model_config = {
        "env_prefix": "CGSP_",
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "extra": "ignore",
    }


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


settings = get_settings()
