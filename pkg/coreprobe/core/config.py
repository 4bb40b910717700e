"""
Configuration management for CoreProbe.

Loads and validates configuration from YAML files with environment variable support.
"""

import os
import re
from pathlib import Path
from typing import Any

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from coreprobe.core.exceptions import ConfigurationError

# Load .env file from project root (looks in current dir and parents)
load_dotenv()


def _resolve_env_vars(value: Any) -> Any:
    """Resolve environment variable references in configuration values.

    Supports format: ${VAR_NAME:default_value} or ${VAR_NAME}
    """
    if isinstance(value, str):
        pattern = r'\$\{([^}:]+)(?::([^}]*))?\}'

        def replacer(match):
            var_name = match.group(1)
            default = match.group(2) if match.group(2) is not None else ""
            return os.environ.get(var_name, default)

        return re.sub(pattern, replacer, value)
    elif isinstance(value, dict):
        return {k: _resolve_env_vars(v) for k, v in value.items()}
    elif isinstance(value, list):
        return [_resolve_env_vars(v) for v in value]
    return value


def load_yaml_config(path: Path) -> dict:
    """Load a YAML configuration file with environment variable resolution."""
    if not path.exists():
        raise ConfigurationError(f"Configuration file not found: {path}", {"path": str(path)})

    with open(path, 'r', encoding='utf-8') as f:
        try:
            config = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Invalid YAML in {path}: {e}", {"path": str(path)}) from e

    return _resolve_env_vars(config or {})


# --- Settings Models ---

class GraphSettings(BaseModel):
    """Edge-list ingestion defaults."""
    # Largest accepted node id in edge-list input
    max_node_id: int = 2**40
    symmetrize: bool = True
    drop_self_loops: bool = True
    dedup: bool = True

    @field_validator("max_node_id")
    @classmethod
    def _positive_capacity(cls, v: int) -> int:
        if v <= 0:
            raise ValueError("max_node_id must be positive")
        return v


class SamplingSettings(BaseModel):
    """Default parameters for the approximate algorithms."""
    epsilon: float = 0.5
    # Failure probability exponent: success with probability >= 1 - 2/n^c
    c: float = 1.0
    seed: int = 0
    use_lower_start: bool = False
    use_leaps: bool = False
    rng: str = "philox"

    @field_validator("epsilon")
    @classmethod
    def _epsilon_range(cls, v: float) -> float:
        if not 0.0 < v <= 1.0:
            raise ValueError("epsilon must lie in (0, 1]")
        return v

    @field_validator("c")
    @classmethod
    def _c_positive(cls, v: float) -> float:
        if v <= 0.0:
            raise ValueError("c must be positive")
        return v

    @field_validator("rng")
    @classmethod
    def _known_rng(cls, v: str) -> str:
        if v not in ("philox", "pcg64"):
            raise ValueError("rng must be 'philox' or 'pcg64'")
        return v


class BenchSettings(BaseModel):
    """Sample-count scaling benchmark configuration."""
    seeds_per_size: int = 5
    workers: int = 1
    er_avg_degree: float = 20.0
    # Large clique size = round(n ** clique_exponent) for the clique-union family
    clique_exponent: float = 0.5

    @field_validator("seeds_per_size", "workers")
    @classmethod
    def _at_least_one(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be at least 1")
        return v


class OutputSettings(BaseModel):
    """Report and label file output."""
    json_indent: int = 2
    round_labels: bool = False


class LoggingSettings(BaseModel):
    """Logging configuration applied by the CLI."""
    level: str = "INFO"
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class Settings(BaseModel):
    """Main application settings."""
    graph: GraphSettings = Field(default_factory=GraphSettings)
    sampling: SamplingSettings = Field(default_factory=SamplingSettings)
    bench: BenchSettings = Field(default_factory=BenchSettings)
    output: OutputSettings = Field(default_factory=OutputSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)

    @classmethod
    def load(cls, config_dir: Path | None = None) -> "Settings":
        """Load settings from configuration file."""
        if config_dir is None:
            config_dir = Path(os.environ.get("COREPROBE_CONFIG_DIR", "config"))

        settings_path = config_dir / "settings.yaml"

        if settings_path.exists():
            config = load_yaml_config(settings_path)
            try:
                return cls(**config)
            except ValidationError as e:
                raise ConfigurationError(f"Invalid settings in {settings_path}: {e}", {"path": str(settings_path)}) from e

        return cls()


# --- Global Config Instance ---

_settings: Settings | None = None


def get_settings() -> Settings:
    """Get the global settings instance."""
    global _settings
    if _settings is None:
        _settings = Settings.load()
    return _settings


def reload_config(config_dir: Path | None = None) -> None:
    """Reload configuration from files."""
    global _settings
    _settings = Settings.load(config_dir)
