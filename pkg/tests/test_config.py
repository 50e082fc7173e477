"""Tests for config module."""

import os
from dataclasses import FrozenInstanceError

import pytest

from akverify.core.config import Config, RunConfig
from akverify.core.scalar import EXACT


@pytest.fixture
def clear_env():
    """Clear environment variables before each test."""
    original = os.environ.copy()
    os.environ.clear()
    yield
    os.environ.clear()
    os.environ.update(original)


class TestConfig:
    """Test Config dataclass."""

    def test_from_env_defaults(self, clear_env):
        """Test default values when env vars are missing."""
        config = Config.from_env()

        assert config.mode == "exact"
        assert config.tol == 1e-9
        assert config.seed == 0
        assert config.log_dir == "logs"
        assert config.random_metrics == 1000
        assert config.scalar_mode() == EXACT

    def test_from_env_float(self, clear_env):
        """Test float mode with a tolerance."""
        os.environ["AKVERIFY_MODE"] = "float"
        os.environ["AKVERIFY_TOL"] = "1e-6"
        os.environ["AKVERIFY_SEED"] = "42"

        config = Config.from_env()

        assert config.mode == "float"
        assert config.seed == 42
        assert config.scalar_mode().tol == 1e-6
        assert not config.scalar_mode().exact

    def test_invalid_mode(self, clear_env):
        """Test error on an unknown mode."""
        os.environ["AKVERIFY_MODE"] = "symbolic"
        with pytest.raises(ValueError, match="AKVERIFY_MODE"):
            Config.from_env()

    def test_negative_seed(self, clear_env):
        """Test error on a negative seed."""
        os.environ["AKVERIFY_SEED"] = "-1"
        with pytest.raises(ValueError, match="AKVERIFY_SEED"):
            Config.from_env()

    def test_bad_tolerance(self, clear_env):
        """Test error on a non-numeric tolerance."""
        os.environ["AKVERIFY_TOL"] = "tiny"
        with pytest.raises(ValueError, match="AKVERIFY_TOL"):
            Config.from_env()

    def test_bad_random_metrics(self, clear_env):
        """Test error on a nonpositive suite size."""
        os.environ["AKVERIFY_RANDOM_METRICS"] = "0"
        with pytest.raises(ValueError, match="AKVERIFY_RANDOM_METRICS"):
            Config.from_env()

    def test_config_is_frozen(self):
        """Test that Config is frozen (immutable)."""
        config = Config()

        with pytest.raises(FrozenInstanceError):
            config.seed = 3


class TestRunConfig:
    """Test RunConfig construction and its report record."""

    def test_overrides(self, clear_env):
        """CLI values replace environment values; None keeps them."""
        run = RunConfig.from_config(Config(seed=5), "verify", seed=None, mode="float", tol=1e-6, target="dS-kahler")

        assert run.seed == 5
        assert run.mode == "float"
        assert run.target == "dS-kahler"
        assert run.scalar_mode().tol == 1e-6

    def test_parameters_sorted(self):
        """Parameter overrides are stored sorted and read back by name."""
        run = RunConfig.from_config(Config(), "verify", parameters={"t": "1/2", "a1": "1"})

        assert run.parameters == (("a1", "1"), ("t", "1/2"))
        assert run.parameter("t") == "1/2"
        assert run.parameter("lambda") is None

    def test_invalid_values(self):
        """Bad modes, seeds and sample counts are rejected."""
        with pytest.raises(ValueError, match="Invalid mode"):
            RunConfig.from_config(Config(), "verify", mode="fast")
        with pytest.raises(ValueError, match="Seed"):
            RunConfig.from_config(Config(), "verify", seed=-3)
        with pytest.raises(ValueError, match="Sample count"):
            RunConfig.from_config(Config(), "scan", samples=-1)

    def test_to_dict_is_reproducible(self):
        """The record leaves out output path, timing, log dir and exact-mode tolerance."""
        run = RunConfig.from_config(
            Config(),
            "curvature",
            output_path="out.json",
            timing=True,
            input_paths=["a.json"],
            parameters={"k": "2"},
        )
        data = run.to_dict()

        assert data == {
            "command": "curvature",
            "mode": "exact",
            "seed": 0,
            "input_paths": ["a.json"],
            "samples": None,
            "parameters": {"k": "2"},
            "target": None,
        }

    def test_to_dict_float_keeps_tolerance(self):
        """Float runs record their tolerance."""
        run = RunConfig.from_config(Config(), "verify", mode="float", tol=1e-8)
        assert run.to_dict()["tol"] == 1e-8
