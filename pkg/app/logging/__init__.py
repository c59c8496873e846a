"""Structured logging for advicebench"""

from .logger_factory import LoggerFactory, elapsed_ms

__all__ = [
    "LoggerFactory",
    "elapsed_ms"
]
