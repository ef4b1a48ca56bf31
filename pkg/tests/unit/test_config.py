"""Unit tests for settings and logging configuration."""

import json

import pytest
import structlog
from pydantic import ValidationError

from jsentropy.core.config import Settings
from jsentropy.core.logging import setup_logging


@pytest.mark.unit
class TestSettings:
    """Test the pydantic-settings layer."""

    def test_defaults(self):
        """Defaults match the documented tolerances."""
        settings = Settings()

        assert settings.STRICT_TOLERANCE == 1e-9
        assert settings.LENIENT_TOLERANCE == 1e-3
        assert settings.SIGNIFICANT_DIGITS == 6
        assert settings.STATE_INDEX_ZERO == 0
        assert settings.STATE_INDEX_MINUS_ONE == 2

    def test_environment_override(self, monkeypatch):
        """Prefixed environment variables override defaults."""
        monkeypatch.setenv("JSENTROPY_LENIENT_TOLERANCE", "0.01")
        monkeypatch.setenv("JSENTROPY_LOG_FORMAT", "JSON")

        settings = Settings()

        assert settings.LENIENT_TOLERANCE == 0.01
        assert settings.LOG_FORMAT == "json"

    def test_rejects_nonpositive_tolerance(self):
        """Test that zero tolerance is rejected."""
        with pytest.raises(ValidationError):
            Settings(STRICT_TOLERANCE=0.0)

    def test_rejects_unknown_log_format(self):
        """Test that unknown log formats are rejected."""
        with pytest.raises(ValidationError):
            Settings(LOG_FORMAT="xml")


@pytest.mark.unit
class TestLogging:
    """Test structured logging setup."""

    def test_json_logs_carry_app_context(self, capsys):
        """JSON renderer writes one object per event to stderr."""
        setup_logging("INFO", "json")
        structlog.stdlib.get_logger("jsentropy.test").info("renormalised", record_index=3)

        captured = capsys.readouterr()
        line = captured.err.strip().splitlines()[-1]
        event = json.loads(line)

        assert captured.out == ""
        assert event["event"] == "renormalised"
        assert event["record_index"] == 3
        assert event["service"] == "jsentropy"
        assert event["level"] == "info"

    def test_level_filters_events(self, capsys):
        """Test that events below the level are dropped."""
        setup_logging("ERROR", "text")
        structlog.stdlib.get_logger("jsentropy.test").warning("hidden")

        assert "hidden" not in capsys.readouterr().err
