"""
Tests for structured logging.
"""
import logging

import pytest

from ij_tamari import telemetry
from ij_tamari.telemetry import (StructuredLogger, configure_console, get_logger, log_custom_event, log_stage,
                                 trace_context)


class TestStructuredLogger:
    """Trace IDs and custom dimensions on every record."""

    def test_get_logger(self):
        """Loggers are named after their module."""
        logger = get_logger("ij_tamari.test")
        assert isinstance(logger, StructuredLogger)
        assert logger.logger.name == "ij_tamari.test"

    def test_trace_context(self):
        """The trace ID is bound inside the context and cleared after it."""
        logger = get_logger()
        with trace_context("pair:I=1;J=1") as trace_id:
            assert trace_id == "pair:I=1;J=1"
            assert logger.get_trace_id() == "pair:I=1;J=1"
        assert logger.get_trace_id() != "pair:I=1;J=1"

    def test_nested_trace_context(self):
        """Leaving an inner context restores the outer trace ID."""
        logger = get_logger()
        with trace_context("run"):
            with trace_context("pair"):
                assert logger.get_trace_id() == "pair"
            assert logger.get_trace_id() == "run"

    def test_generated_trace_id(self):
        """Without an argument a fresh ID is generated."""
        with trace_context() as trace_id:
            assert trace_id

    def test_records_carry_dimensions(self, caplog):
        """Extra data lands in custom_dimensions next to the trace ID."""
        caplog.set_level(logging.DEBUG, logger="ij_tamari")
        with trace_context("abc"):
            get_logger("ij_tamari.test").info("built G(I,Jbar)", {"edges": 5})
        record = caplog.records[-1]
        assert record.custom_dimensions == {"edges": 5}
        assert record.trace_id == "abc"

    def test_stage_and_event(self, caplog):
        """Stage timings and events are logged at INFO."""
        caplog.set_level(logging.INFO, logger="ij_tamari")
        log_stage("reduction_tree", "reduce", 0.25, True)
        log_custom_event("command_completed", {"command": "reduce"}, {"duration_seconds": 0.25})
        stage, event = caplog.records[-2:]
        assert stage.custom_dimensions["duration_ms"] == 250.0
        assert event.custom_dimensions["event_name"] == "command_completed"

    def test_configure_console(self):
        """The console handler follows the configured level."""
        configure_console("DEBUG")
        assert telemetry._console_handler.level == logging.DEBUG
        configure_console("WARNING")
        assert telemetry._console_handler.level == logging.WARNING


if __name__ == "__main__":
    pytest.main([__file__])
