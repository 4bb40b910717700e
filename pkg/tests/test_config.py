"""Tests for configuration loading."""

from pathlib import Path

import pytest

from coreprobe.core import config
from coreprobe.core.config import Settings, _resolve_env_vars, load_yaml_config
from coreprobe.core.exceptions import ConfigurationError


class TestEnvResolution:
    """Tests for ${VAR:default} substitution."""

    def test_default_used(self, monkeypatch):
        monkeypatch.delenv("COREPROBE_TEST_VAR", raising=False)

        assert _resolve_env_vars("${COREPROBE_TEST_VAR:0.25}") == "0.25"

    def test_environment_wins(self, monkeypatch):
        """Test that a set variable replaces the default in nested values."""
        monkeypatch.setenv("COREPROBE_TEST_VAR", "7")

        resolved = _resolve_env_vars({"sampling": {"seed": "${COREPROBE_TEST_VAR:0}"}, "list": ["${COREPROBE_TEST_VAR}"]})

        assert resolved == {"sampling": {"seed": "7"}, "list": ["7"]}


class TestSettingsLoad:
    """Tests for Settings.load and reload_config."""

    def test_defaults_without_file(self, tmp_path):
        """Test built-in defaults when no settings.yaml exists."""
        settings = Settings.load(tmp_path)

        assert settings.sampling.epsilon == 0.5
        assert settings.graph.max_node_id == 2**40

    def test_yaml_values_coerced(self, tmp_path, monkeypatch):
        """Test that substituted strings are validated into typed fields."""
        monkeypatch.setenv("COREPROBE_EPSILON", "0.25")
        (tmp_path / "settings.yaml").write_text(
            "sampling:\n  epsilon: ${COREPROBE_EPSILON:0.5}\n  seed: 3\n  use_leaps: true\n", encoding="utf-8"
        )

        settings = Settings.load(tmp_path)

        assert settings.sampling.epsilon == 0.25
        assert settings.sampling.seed == 3
        assert settings.sampling.use_leaps

    @pytest.mark.parametrize(
        "text",
        [
            "sampling:\n  epsilon: 1.5\n",
            "sampling:\n  c: 0\n",
            "sampling:\n  rng: mt19937\n",
            "bench:\n  workers: 0\n",
            "graph:\n  max_node_id: -1\n",
        ],
    )
    def test_invalid_values(self, tmp_path, text):
        """Test ConfigurationError for values outside their ranges."""
        (tmp_path / "settings.yaml").write_text(text, encoding="utf-8")

        with pytest.raises(ConfigurationError):
            Settings.load(tmp_path)

    def test_invalid_yaml(self, tmp_path):
        path = tmp_path / "settings.yaml"
        path.write_text("sampling: [unclosed\n", encoding="utf-8")

        with pytest.raises(ConfigurationError):
            load_yaml_config(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            load_yaml_config(tmp_path / "absent.yaml")

    def test_shipped_settings_file(self, monkeypatch):
        """Test that config/settings.yaml loads with its defaults."""
        for name in ("COREPROBE_EPSILON", "COREPROBE_C", "COREPROBE_SEED", "COREPROBE_LOG_LEVEL"):
            monkeypatch.delenv(name, raising=False)

        settings = Settings.load(Path(__file__).parent.parent / "config")

        assert settings.sampling.c == 1.0
        assert settings.logging.level == "INFO"
        assert settings.bench.clique_exponent == 0.5

    def test_reload_config(self, tmp_path, monkeypatch):
        """Test that reload_config replaces the global settings."""
        monkeypatch.setattr(config, "_settings", None)
        (tmp_path / "settings.yaml").write_text("bench:\n  seeds_per_size: 9\n", encoding="utf-8")

        config.reload_config(tmp_path)

        assert config.get_settings().bench.seeds_per_size == 9
