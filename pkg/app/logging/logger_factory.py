import time

import structlog
from app.logging import logging_config


class LoggerFactory:

    @staticmethod
    def get_logger(name: str = None, **kwargs):
        """
        Returns a structlog logger bound with a module name and optional context.

        :param name: Usually __name__ from the caller module.
        :param kwargs: Extra context to bind (e.g., service="covering").
        """
        logger = structlog.get_logger(name)
        if kwargs:
            logger = logger.bind(**kwargs)
        return logger

    @staticmethod
    def for_run(logger, run_id: str, **kwargs):
        """Bind the run id (and any run parameters) onto an existing logger."""
        return logger.bind(run_id=run_id, **kwargs)


def elapsed_ms(started: float) -> float:
    """Milliseconds since `started` (a time.time() reading), rounded for log output."""
    return round((time.time() - started) * 1000, 3)
