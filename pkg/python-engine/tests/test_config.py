"""
Tests for environment-driven settings.
"""

import pytest

from cpdetect.config import Config
from cpdetect.errors import InputError


class TestWorkers:
    """Tests for Config.workers."""

    def test_default(self, monkeypatch):
        monkeypatch.delenv("CPDETECT_WORKERS", raising=False)
        assert Config.workers() == Config.DEFAULT_WORKERS == 1

    def test_blank_env_uses_default(self, monkeypatch):
        monkeypatch.setenv("CPDETECT_WORKERS", "  ")
        assert Config.workers() == 1

    def test_env_value(self, monkeypatch):
        monkeypatch.setenv("CPDETECT_WORKERS", " 4 ")
        assert Config.workers() == 4

    def test_override_wins(self, monkeypatch):
        monkeypatch.setenv("CPDETECT_WORKERS", "many")
        assert Config.workers(3) == 3
        assert Config.workers(0) == 1

    @pytest.mark.parametrize("value", ["many", "2.5", "0", "-3"])
    def test_invalid_env(self, monkeypatch, value):
        monkeypatch.setenv("CPDETECT_WORKERS", value)
        with pytest.raises(InputError, match="CPDETECT_WORKERS must be a positive integer"):
            Config.workers()
