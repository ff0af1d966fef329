"""
Run-log utilities for fracpow.

Messages are filtered by the active verbosity, timestamped, written to
stderr through the "fracpow" logger and kept in a rolling buffer so that
report files can carry the log of the run that produced them.
"""

import logging
import sys
import threading
from collections import deque
from datetime import datetime
from typing import List, Optional

from config import AppConfig
from .logging_config import should_log, normalize_level, LOG_NORMAL, STDLIB_LEVELS

# Maximum number of log messages to retain (rolling buffer)
MAX_LOG_MESSAGES = 250

LOGGER_NAME = "fracpow"

_messages = deque(maxlen=MAX_LOG_MESSAGES)
_lock = threading.Lock()
_active_level: Optional[str] = None


def _get_logger() -> logging.Logger:
    logger = logging.getLogger(LOGGER_NAME)
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(message)s"))
        logger.addHandler(handler)
        logger.setLevel(logging.DEBUG)  # filtering happens in should_log
        logger.propagate = False
    return logger


def set_log_level(level: Optional[str]):
    """
    Override the configured verbosity for this process.

    Library modules log through logging.getLogger(__name__); their threshold
    follows the same setting.

    Args:
        level: MINIMAL, NORMAL, VERBOSE or DEBUG; None restores the config value
    """
    global _active_level
    _active_level = normalize_level(level) if level is not None else None
    logging.basicConfig(format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger().setLevel(STDLIB_LEVELS[current_log_level()])


def current_log_level() -> str:
    """Active verbosity: the CLI override if set, else the saved config level."""
    if _active_level is not None:
        return _active_level
    try:
        return normalize_level(AppConfig.get_log_level())
    except ValueError:
        return LOG_NORMAL


def log_run(message: str, level: str = LOG_NORMAL):
    """
    Log a run message with level filtering and rolling buffer.

    Args:
        message: Message to log
        level: Log level (MINIMAL, NORMAL, VERBOSE, DEBUG)
    """
    if not should_log(level, current_log_level()):
        return

    timestamp = datetime.now().strftime('%H:%M:%S')
    line = f"[{timestamp}] {message}"
    with _lock:
        _messages.append(line)

    _get_logger().log(STDLIB_LEVELS[level], line)


def recent_messages() -> List[str]:
    """Snapshot of the rolling buffer, oldest first."""
    with _lock:
        return list(_messages)


def clear_messages():
    with _lock:
        _messages.clear()
