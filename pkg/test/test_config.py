"""
Tests for runtime configuration.
"""
import os
from pathlib import Path
from unittest.mock import patch

import pytest

from ij_tamari.config import (DEFAULT_MAX_FLOW_COUNT, DEFAULT_MAX_PAIR_SIZE, DEFAULT_MAX_REDUCTIONS, Settings,
                              load_settings)
from ij_tamari.errors import ConfigError


class TestSettings:
    """Loading and overriding settings."""

    @patch.dict(os.environ, {}, clear=True)
    def test_defaults(self):
        """Unset variables fall back to the defaults."""
        settings = load_settings()
        assert settings.max_reductions == DEFAULT_MAX_REDUCTIONS
        assert settings.max_flow_count == DEFAULT_MAX_FLOW_COUNT
        assert settings.max_pair_size == DEFAULT_MAX_PAIR_SIZE
        assert settings.workers == 1
        assert settings.output_dir is None
        assert settings.log_level == "WARNING"

    @patch.dict(os.environ, {
        'IJ_TAMARI_MAX_REDUCTIONS': '5_000',
        'IJ_TAMARI_MAX_PAIR_SIZE': '8',
        'IJ_TAMARI_WORKERS': '4',
        'IJ_TAMARI_OUTPUT_DIR': '/tmp/ij-out',
        'IJ_TAMARI_LOG_LEVEL': 'debug',
    }, clear=True)
    def test_environment_overrides(self):
        """Every variable is read from the environment."""
        settings = load_settings()
        assert settings.max_reductions == 5000
        assert settings.max_pair_size == 8
        assert settings.workers == 4
        assert settings.output_dir == Path('/tmp/ij-out')
        assert settings.log_level == "DEBUG"

    @patch.dict(os.environ, {'IJ_TAMARI_MAX_REDUCTIONS': 'many'}, clear=True)
    def test_non_integer_rejected(self):
        """Limits must parse as integers."""
        with pytest.raises(ConfigError):
            load_settings()

    @patch.dict(os.environ, {'IJ_TAMARI_WORKERS': '0'}, clear=True)
    def test_non_positive_rejected(self):
        """Limits must be positive."""
        with pytest.raises(ConfigError):
            load_settings()

    @patch.dict(os.environ, {'IJ_TAMARI_LOG_LEVEL': 'LOUD'}, clear=True)
    def test_unknown_log_level_rejected(self):
        """Log levels are the standard logging names."""
        with pytest.raises(ConfigError):
            load_settings()

    def test_overrides_skip_none(self):
        """None leaves a field unchanged."""
        settings = Settings().with_overrides(max_reductions=None, workers=3)
        assert settings.max_reductions == DEFAULT_MAX_REDUCTIONS
        assert settings.workers == 3

    def test_overrides_are_validated(self):
        """Overrides go through the same checks."""
        with pytest.raises(ConfigError):
            Settings().with_overrides(max_flow_count=-1)


if __name__ == "__main__":
    pytest.main([__file__])
