"""
Test suite for qlbench configuration.

Tests defaults, environment overrides and config file loading.
"""

from pathlib import Path

import pytest

from qlbench.core.config import (
    ExecutionConfig,
    LoggingConfig,
    SamplingConfig,
    Settings,
    get_settings,
    reset_settings,
)
from qlbench.core.errors import ConfigError


class TestSamplingConfig:
    """Test SamplingConfig validation and defaults."""

    def test_defaults(self):
        """Test default shots, grid and workers."""
        config = SamplingConfig()
        assert config.shots == 1000
        assert config.grid_steps == 20
        assert config.workers == 1

    def test_zero_shots_rejected(self):
        """Test shots must be positive."""
        with pytest.raises(Exception):
            SamplingConfig(shots=0)

    def test_workers_upper_bound(self):
        """Test workers is capped."""
        with pytest.raises(Exception):
            SamplingConfig(workers=65)


class TestExecutionConfig:
    """Test ExecutionConfig validation and defaults."""

    def test_defaults(self):
        """Test the simulator holds 20 qubits and the store is in memory."""
        config = ExecutionConfig()
        assert config.max_qubits == 20
        assert config.job_store is None

    def test_capacity_above_limit_rejected(self):
        """Test max_qubits cannot exceed the simulator limit."""
        with pytest.raises(Exception):
            ExecutionConfig(max_qubits=21)


class TestLoggingConfig:
    """Test LoggingConfig."""

    def test_default_level(self):
        """Test default level keeps the console quiet."""
        assert LoggingConfig().level == "WARNING"

    def test_invalid_level(self):
        """Test unknown levels are rejected."""
        with pytest.raises(Exception):
            LoggingConfig(level="LOUD")


class TestSettings:
    """Test main Settings."""

    def setup_method(self):
        """Reset settings before each test."""
        reset_settings()

    def teardown_method(self):
        """Reset settings after each test."""
        reset_settings()

    def test_defaults(self):
        """Test default settings."""
        settings = Settings()
        assert settings.seed == 0
        assert settings.output_dir == Path("./qlbench_out")
        assert settings.backends == []
        assert settings.noise_profiles == {}

    def test_env_override(self, monkeypatch):
        """Test QLB_ environment variables override defaults."""
        monkeypatch.setenv("QLB_SEED", "42")
        monkeypatch.setenv("QLB_SAMPLING__SHOTS", "250")
        settings = Settings()
        assert settings.seed == 42
        assert settings.sampling.shots == 250

    def test_from_yaml_file(self, tmp_path):
        """Test loading settings from YAML."""
        path = tmp_path / "qlbench.yaml"
        path.write_text(
            "seed: 7\n"
            "sampling:\n"
            "  shots: 500\n"
            "  workers: 4\n"
            "noise_profiles:\n"
            "  noisy:\n"
            "    p1: 0.01\n"
            "    p2: 0.1\n"
        )
        settings = Settings.from_file(path)
        assert settings.seed == 7
        assert settings.sampling.shots == 500
        assert settings.sampling.workers == 4
        assert settings.noise_profiles["noisy"].p2 == 0.1

    def test_from_missing_file(self, tmp_path):
        """Test a missing file yields defaults."""
        settings = Settings.from_file(tmp_path / "absent.yaml")
        assert settings.seed == 0

    def test_from_empty_file(self, tmp_path):
        """Test an empty file yields defaults."""
        path = tmp_path / "empty.yaml"
        path.write_text("")
        assert Settings.from_file(path).sampling.shots == 1000

    def test_invalid_file_value(self, tmp_path):
        """Test invalid values in a file raise ConfigError naming the file and field."""
        path = tmp_path / "bad.yaml"
        path.write_text("sampling:\n  shots: -5\n")
        with pytest.raises(ConfigError, match="sampling.shots") as exc_info:
            Settings.from_file(path)
        assert str(path) in str(exc_info.value)
        assert exc_info.value.exit_code == 4

    def test_malformed_file(self, tmp_path):
        """Test unparsable YAML raises ConfigError."""
        path = tmp_path / "broken.yaml"
        path.write_text("sampling: [1, 2\n")
        with pytest.raises(ConfigError):
            Settings.from_file(path)

    def test_non_mapping_file(self, tmp_path):
        """Test a top-level list is rejected."""
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigError):
            Settings.from_file(path)

    def test_get_settings_singleton(self):
        """Test get_settings returns the same instance."""
        assert get_settings() is get_settings()

    def test_get_settings_discovers_local_file(self, tmp_path):
        """Test qlbench.yaml in the working directory is picked up."""
        (tmp_path / "qlbench.yaml").write_text("seed: 11\n")
        assert get_settings().seed == 11

    def test_get_settings_explicit_file(self, tmp_path):
        """Test an explicit config file replaces the global settings."""
        path = tmp_path / "custom.yaml"
        path.write_text("seed: 3\n")
        first = get_settings()
        second = get_settings(path)
        assert second is not first
        assert get_settings().seed == 3

    def test_reset_settings(self):
        """Test reset_settings forces a reload."""
        first = get_settings()
        reset_settings()
        assert get_settings() is not first
