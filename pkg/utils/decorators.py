"""
Decorators for command handlers
"""

import logging
import time
from functools import wraps

from utils.exceptions import (
    ConfigurationError,
    InstanceParseError,
    InvariantViolation,
    OracleLimitError,
    WtdsError,
)

logger = logging.getLogger(__name__)

EXIT_PARSE_ERROR = 2
EXIT_LIMIT = 3
EXIT_INTERNAL = 4


def log_command(func):
    """Log command usage and duration"""
    @wraps(func)
    def wrapper(self, *args, **kwargs):
        shown = ", ".join([repr(a) for a in args] + [f"{k}={v!r}" for k, v in sorted(kwargs.items())])
        logger.info(f"Command used: {func.__name__}({shown})")
        started = time.perf_counter()
        try:
            return func(self, *args, **kwargs)
        finally:
            logger.info(f"Command {func.__name__} finished in {time.perf_counter() - started:.3f}s")
    return wrapper


def exit_on_error(func):
    """Turn engine exceptions into the command's exit code"""
    @wraps(func)
    def wrapper(self, *args, **kwargs):
        try:
            return func(self, *args, **kwargs)
        except InstanceParseError as e:
            logger.error(f"Parse error in {func.__name__}: {e}")
            return EXIT_PARSE_ERROR
        except OSError as e:
            logger.error(f"I/O error in {func.__name__}: {e}")
            return EXIT_PARSE_ERROR
        except (OracleLimitError, ConfigurationError) as e:
            logger.error(f"Refused in {func.__name__}: {e}")
            return EXIT_LIMIT
        except InvariantViolation as e:
            logger.error(f"Invariant violated in {func.__name__}: {e}")
            return EXIT_INTERNAL
        except WtdsError as e:
            logger.error(f"Error in {func.__name__}: {e}")
            return EXIT_INTERNAL
    return wrapper
