"""
Logging setup for the toolkit.

Console output goes to stderr so that reports written to stdout stay
machine readable; an optional file handler keeps a timestamped log.
"""
import functools
import logging
import sys
import time
from datetime import datetime
from pathlib import Path
from typing import Optional

LOG_FORMAT = '%(asctime)s | %(name)s | %(levelname)s | %(message)s'


def setup_logger(
    log_dir: Optional[str] = None,
    name: str = "hochschild_bv",
    level: str = "INFO"
) -> logging.Logger:
    """
    Configure and return the application logger.

    Args:
        log_dir: Directory under which a ``logs/`` folder receives the log
            file. ``None`` disables file logging.
        name: Logger name
        level: Console log level

    Returns:
        Configured logging.Logger
    """
    logger = logging.getLogger(name)
    logger.setLevel(logging.DEBUG)
    logger.handlers.clear()
    logger.propagate = False

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(getattr(logging, level.upper(), logging.INFO))
    console_handler.setFormatter(logging.Formatter('%(levelname)s: %(message)s'))
    logger.addHandler(console_handler)

    if log_dir is not None:
        log_path = Path(log_dir) / "logs"
        log_path.mkdir(parents=True, exist_ok=True)
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        log_file = log_path / f"{name}_{timestamp}.log"

        file_handler = logging.FileHandler(log_file, encoding='utf-8')
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt='%Y-%m-%d %H:%M:%S'))
        logger.addHandler(file_handler)
        logger.debug(f"File logging enabled: {log_file}")

    return logger


class LoggerContext:
    """
    Times an operation (monotonic clock). Start is logged at debug level,
    completion at info, and an escaping exception at warning level with
    its type; the exception is never swallowed.
    """
    def __init__(self, logger: logging.Logger, operation: str):
        self.logger = logger
        self.operation = operation
        self._started: Optional[float] = None
        self.duration: Optional[float] = None

    def __enter__(self) -> "LoggerContext":
        self._started = time.perf_counter()
        self.logger.debug(f"{self.operation} ...")
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> bool:
        self.duration = time.perf_counter() - self._started
        if exc_type is None:
            self.logger.info(f"{self.operation} done in {self.duration:.3f}s")
        else:
            self.logger.warning(f"{self.operation} stopped after {self.duration:.3f}s: {exc_type.__name__}: {exc_val}")
        return False


def log_function(logger: logging.Logger):
    """
    Decorator tracing calls at debug level. Exceptions are traced and
    re-raised; reporting them is left to the caller.
    """
    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            logger.debug(f"-> {func.__name__}")
            try:
                result = func(*args, **kwargs)
            except Exception as exc:
                logger.debug(f"<- {func.__name__} raised {type(exc).__name__}: {exc}")
                raise
            logger.debug(f"<- {func.__name__}")
            return result
        return wrapper
    return decorator
