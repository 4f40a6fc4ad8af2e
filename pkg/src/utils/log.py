"""
Logging Setup
Tagged loggers rendering every line as "[TAG] message"
"""
import logging
import sys
from typing import Optional

_ROOT_NAME = 'mcbsim'
_configured = False


class _TagFormatter(logging.Formatter):
    """Formats records as [TAG] message, the tag being the last logger name segment"""

    def format(self, record: logging.LogRecord) -> str:
        tag = record.name.rsplit('.', 1)[-1].upper()
        message = record.getMessage()
        if record.exc_info:
            message = f"{message}\n{self.formatException(record.exc_info)}"
        return f"[{tag}] {message}"


def setup_logging(level: Optional[str] = None):
    """Configure the mcbsim logger tree once; later calls only adjust the level"""
    global _configured
    root = logging.getLogger(_ROOT_NAME)

    if level is None:
        from ..services.config_service import config_service
        level = config_service.get_str('log_level')

    root.setLevel(getattr(logging, str(level).upper(), logging.INFO))
    if not _configured:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(_TagFormatter())
        root.addHandler(handler)
        root.propagate = False
        _configured = True


def get_logger(tag: str) -> logging.Logger:
    """Get the logger for a subsystem tag such as 'cobra' or 'harness'"""
    return logging.getLogger(f"{_ROOT_NAME}.{tag.lower()}")
