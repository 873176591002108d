"""
Configuration management for qlbench.

Handles loading configuration from files, environment variables, and defaults.
Uses Pydantic for validation and type safety.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Literal, Optional

import yaml
from pydantic import Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from qlbench.core.errors import ConfigError
from qlbench.core.models import MAX_NODES, NoiseProfile


class SamplingConfig(BaseSettings):
    """Configuration for landscape sampling."""

    shots: int = Field(
        default=1000,
        ge=1,
        le=10_000_000,
        description="Shots per grid point",
    )
    grid_steps: int = Field(
        default=20,
        ge=1,
        le=200,
        description="Grid spacing is pi / grid_steps",
    )
    workers: int = Field(
        default=1,
        ge=1,
        le=64,
        description="Grid rows evaluated in parallel",
    )


class ExecutionConfig(BaseSettings):
    """Configuration for simulated backend execution."""

    max_qubits: int = Field(
        default=MAX_NODES,
        ge=1,
        le=MAX_NODES,
        description="Simulator capacity in qubits",
    )
    job_store: Optional[Path] = Field(
        default=None,
        description="Append-only JSON-lines job store (in-memory when unset)",
    )
    poll_interval: float = Field(
        default=0.01,
        gt=0.0,
        le=10.0,
        description="Seconds between polls while a job waits in the queue",
    )


class LoggingConfig(BaseSettings):
    """Configuration for application logging."""

    level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = Field(
        default="WARNING",
        description="Logging level",
    )
    file: Optional[Path] = Field(
        default=None,
        description="Log file path (JSON lines)",
    )


class Settings(BaseSettings):
    """
    Main settings for qlbench.

    Loads configuration from:
    1. Environment variables (prefixed with QLB_, e.g. QLB_SEED)
    2. qlbench.yaml / qlbench.json (if exists)
    3. Default values
    """

    model_config = SettingsConfigDict(
        env_prefix="QLB_",
        env_nested_delimiter="__",
        case_sensitive=False,
        extra="ignore",
    )

    # Nested configurations
    sampling: SamplingConfig = Field(default_factory=SamplingConfig)
    execution: ExecutionConfig = Field(default_factory=ExecutionConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)

    # Custom backends, validated by the backend registry
    backends: list[dict[str, Any]] = Field(
        default_factory=list,
        description="Custom backend descriptors",
    )
    noise_profiles: dict[str, NoiseProfile] = Field(
        default_factory=dict,
        description="Named noise profiles custom backends may reference",
    )

    # General settings
    seed: int = Field(
        default=0,
        ge=0,
        lt=2**64,
        description="Default master seed",
    )
    output_dir: Path = Field(
        default=Path("./qlbench_out"),
        description="Default directory for landscapes and reports",
    )

    @classmethod
    def from_file(cls, path: Path) -> Settings:
        """
        Load settings from a YAML or JSON file.

        Raises:
            ConfigError: If the file is not valid YAML or holds invalid values
        """
        if not path.exists():
            return cls()

        try:
            with open(path) as f:
                config_data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"{path}: not valid YAML or JSON ({e})") from e
        if not isinstance(config_data, dict):
            raise ConfigError(f"{path}: expected a mapping at the top level")

        try:
            return cls(**config_data)
        except ValidationError as e:
            problems = "; ".join(
                f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()
            )
            raise ConfigError(f"{path}: {problems}") from e


# Global settings instance
_settings: Optional[Settings] = None


def get_settings(config_file: Optional[Path] = None) -> Settings:
    """
    Get the global settings instance.

    Args:
        config_file: Optional path to configuration file

    Returns:
        Settings instance
    """
    global _settings

    if config_file is not None:
        _settings = Settings.from_file(config_file)
    elif _settings is None:
        default_paths = [
            Path("qlbench.yaml"),
            Path("qlbench.yml"),
            Path("qlbench.json"),
            Path.home() / ".qlbench" / "config.yaml",
        ]
        for path in default_paths:
            if path.exists():
                _settings = Settings.from_file(path)
                break
        else:
            _settings = Settings()

    return _settings


def reset_settings() -> None:
    """Reset the global settings instance. Useful for testing."""
    global _settings
    _settings = None
