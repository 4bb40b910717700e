"""Pytest configuration and fixtures."""

import os
from pathlib import Path

import pytest

# Set test environment
os.environ["COREPROBE_CONFIG_DIR"] = ""


@pytest.fixture
def test_settings():
    """Create test settings."""
    from coreprobe.core.config import (
        BenchSettings,
        GraphSettings,
        LoggingSettings,
        OutputSettings,
        SamplingSettings,
        Settings,
    )

    return Settings(
        graph=GraphSettings(max_node_id=2**40),
        sampling=SamplingSettings(epsilon=0.5, c=1.0, seed=0),
        bench=BenchSettings(seeds_per_size=2, workers=1),
        output=OutputSettings(json_indent=2),
        logging=LoggingSettings(level="WARNING"),
    )


@pytest.fixture
def mock_settings(test_settings, monkeypatch):
    """Mock the global settings."""
    from coreprobe.core import config

    monkeypatch.setattr(config, "_settings", test_settings)
    return test_settings


@pytest.fixture
def triangle():
    """K3 plus a pendant node 3 attached to node 0."""
    from coreprobe.graph import Graph

    return Graph.from_edges([0, 1, 2, 0], [1, 2, 0, 3])


@pytest.fixture
def k5():
    from coreprobe.graph import gen_complete

    return gen_complete(5)


@pytest.fixture
def dense_clique_union():
    """K600 plus four K100: dense enough that sampling succeeds before p reaches 1."""
    from coreprobe.graph import gen_clique_union

    return gen_clique_union(600, 100, 4)


@pytest.fixture
def write_edges(tmp_path):
    """Write edge-list text to a file and return its path."""
    def _write(text: str, name: str = "graph.txt") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return _write

