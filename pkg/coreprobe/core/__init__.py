"""Core module for CoreProbe configuration and utilities."""

from coreprobe.core.config import (
    Settings,
    GraphSettings,
    SamplingSettings,
    BenchSettings,
    get_settings,
    reload_config,
)

__all__ = [
    "Settings",
    "GraphSettings",
    "SamplingSettings",
    "BenchSettings",
    "get_settings",
    "reload_config",
]
