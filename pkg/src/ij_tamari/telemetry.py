"""
Structured logging with trace IDs.

Every record carries a ``trace_id`` and a ``custom_dimensions`` mapping. Records
go to a console handler on the package logger and, when the optional
``opencensus-ext-azure`` package is installed and a connection string is
configured, to Application Insights as well.
"""

import logging
import os
import uuid
from contextlib import contextmanager
from threading import local
from typing import Any, Dict, Iterator, Optional

from dotenv import load_dotenv

try:
    from opencensus.ext.azure.log_exporter import AzureLogHandler
except ImportError:  # optional "insights" extra
    AzureLogHandler = None

PACKAGE_LOGGER = "ij_tamari"
CONSOLE_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# Thread-local storage for trace context
_local = local()
_console_handler: Optional[logging.Handler] = None


def _package_root() -> logging.Logger:
    """Package logger with the console handler (and Azure handler if configured) attached once."""
    global _console_handler
    root = logging.getLogger(PACKAGE_LOGGER)
    if _console_handler is None:
        _console_handler = logging.StreamHandler()
        _console_handler.setLevel(logging.WARNING)
        _console_handler.setFormatter(logging.Formatter(CONSOLE_FORMAT))
        root.addHandler(_console_handler)
        root.setLevel(logging.DEBUG)
        _setup_azure_logging(root)
    return root


def _setup_azure_logging(root: logging.Logger) -> None:
    """Attach an Application Insights handler when a connection string is available."""
    connection_string = os.getenv('APPLICATIONINSIGHTS_CONNECTION_STRING')
    if not connection_string:
        load_dotenv()
        connection_string = os.getenv('APPLICATIONINSIGHTS_CONNECTION_STRING')
    if not connection_string:
        return
    if AzureLogHandler is None:
        root.warning("Application Insights connection string set but opencensus-ext-azure is not installed")
        return
    azure_handler = AzureLogHandler(connection_string=connection_string)
    azure_handler.setLevel(logging.INFO)
    azure_handler.setFormatter(logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - TraceId:%(trace_id)s - %(message)s'
    ))
    root.addHandler(azure_handler)


def configure_console(level: str) -> None:
    """Set the console handler level, e.g. from ``Settings.log_level``."""
    _package_root()
    _console_handler.setLevel(getattr(logging, level.upper(), logging.WARNING))


class StructuredLogger:
    """
    Structured logger with trace ID support.
    """

    def __init__(self, name: str = PACKAGE_LOGGER):
        _package_root()
        self.logger = logging.getLogger(name)

    def get_trace_id(self) -> str:
        """Get current trace ID or generate new one."""
        trace_id = getattr(_local, 'trace_id', None)
        if not trace_id:
            trace_id = str(uuid.uuid4())
            _local.trace_id = trace_id
        return trace_id

    def set_trace_id(self, trace_id: str) -> None:
        _local.trace_id = trace_id

    def clear_trace_id(self) -> None:
        if hasattr(_local, 'trace_id'):
            delattr(_local, 'trace_id')

    def isEnabledFor(self, level: int) -> bool:
        return self.logger.isEnabledFor(level)

    def _log_with_trace(self, level: int, message: str, extra_data: Optional[Dict[str, Any]] = None,
                        exc_info: bool = False) -> None:
        extra = {
            'trace_id': self.get_trace_id(),
            'custom_dimensions': extra_data or {}
        }
        self.logger.log(level, message, extra=extra, exc_info=exc_info)

    def info(self, message: str, extra_data: Optional[Dict[str, Any]] = None) -> None:
        self._log_with_trace(logging.INFO, message, extra_data)

    def debug(self, message: str, extra_data: Optional[Dict[str, Any]] = None) -> None:
        self._log_with_trace(logging.DEBUG, message, extra_data)

    def warning(self, message: str, extra_data: Optional[Dict[str, Any]] = None) -> None:
        self._log_with_trace(logging.WARNING, message, extra_data)

    def error(self, message: str, extra_data: Optional[Dict[str, Any]] = None, exc_info: bool = False) -> None:
        self._log_with_trace(logging.ERROR, message, extra_data, exc_info=exc_info)

    def exception(self, message: str, extra_data: Optional[Dict[str, Any]] = None) -> None:
        """Log an error with the active exception's stack trace."""
        self.error(message, extra_data, exc_info=True)


logger = StructuredLogger(PACKAGE_LOGGER)


def get_logger(name: str = PACKAGE_LOGGER) -> StructuredLogger:
    """Get a structured logger instance."""
    return StructuredLogger(name)


def generate_trace_id() -> str:
    return str(uuid.uuid4())


@contextmanager
def trace_context(trace_id: Optional[str] = None) -> Iterator[str]:
    """Context manager binding a trace ID to the current thread."""
    if trace_id is None:
        trace_id = generate_trace_id()

    outer = getattr(_local, "trace_id", None)
    logger.set_trace_id(trace_id)
    try:
        yield trace_id
    finally:
        if outer is None:
            logger.clear_trace_id()
        else:
            logger.set_trace_id(outer)


def log_custom_event(event_name: str, properties: Optional[Dict[str, Any]] = None,
                     measurements: Optional[Dict[str, float]] = None) -> None:
    """Log a named event, e.g. the summary of a CLI run."""
    logger.info(f"Custom Event: {event_name}", {
        'event_name': event_name,
        'properties': properties or {},
        'measurements': measurements or {}
    })


def log_stage(stage_name: str, command: str, duration: float, success: bool = True) -> None:
    """Log the timing of one pipeline stage. Timings stay in the logs, never in artifacts."""
    logger.info(f"Stage: {stage_name}", {
        'stage_name': stage_name,
        'command': command,
        'duration_ms': duration * 1000,
        'success': success
    })
