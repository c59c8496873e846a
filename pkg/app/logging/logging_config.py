import logging
import os

import structlog


# Configure structlog for JSON structured logging
structlog.configure(
    processors=[
        structlog.stdlib.filter_by_level,
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_log_level,
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.format_exc_info,
        structlog.processors.JSONRenderer()
    ],
    context_class=dict,
    logger_factory=structlog.stdlib.LoggerFactory(),
    wrapper_class=structlog.stdlib.BoundLogger,
    cache_logger_on_first_use=True,
)


class JSONOnlyFormatter(logging.Formatter):
    def format(self, record):
        return record.getMessage()


def _level_from_env() -> int:
    name = os.getenv("ADVICEBENCH_LOG_LEVEL", "INFO").upper()
    return getattr(logging, name, logging.INFO)


console_handler = logging.StreamHandler()
console_handler.setLevel(logging.DEBUG)
console_handler.setFormatter(JSONOnlyFormatter())

root_logger = logging.getLogger()
root_logger.setLevel(_level_from_env())
if not any(getattr(h, "formatter", None).__class__ is JSONOnlyFormatter for h in root_logger.handlers):
    root_logger.addHandler(console_handler)


def set_level(level: int) -> None:
    """Change the root level at runtime (used by the CLI --debug flag)."""
    root_logger.setLevel(level)
