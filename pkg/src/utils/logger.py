import logging

from rich.console import Console
from rich.logging import RichHandler

_level = logging.INFO
_loggers: set[str] = set()


def get_logger(name: str | None = None) -> logging.Logger:
    """Return a configured logger.

    The logger writes to stderr through a rich handler with a concise
    format. The level follows :func:`set_log_level` (default: INFO).
    """
    logger = logging.getLogger(name if name else __name__)
    if logger.handlers:
        return logger

    handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        rich_tracebacks=False,
        log_time_format="%Y-%m-%d %H:%M:%S",
    )
    handler.setFormatter(logging.Formatter(fmt="%(name)s | %(message)s"))

    logger.addHandler(handler)
    logger.setLevel(_level)
    logger.propagate = False
    _loggers.add(logger.name)
    return logger


def set_log_level(level_name: str) -> None:
    """Apply ``level_name`` to every logger handed out so far and to new ones."""
    global _level
    _level = getattr(logging, level_name.upper(), logging.INFO)
    for name in _loggers:
        logging.getLogger(name).setLevel(_level)
