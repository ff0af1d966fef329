"""
Logging infrastructure for fracpow.
"""

from .logging_config import (
    LOG_MINIMAL, LOG_NORMAL, LOG_VERBOSE, LOG_DEBUG,
    LOG_LEVELS, should_log, normalize_level
)
from .logging_utils import (
    log_run, set_log_level, current_log_level, recent_messages, clear_messages,
    MAX_LOG_MESSAGES
)

__all__ = [
    'LOG_MINIMAL', 'LOG_NORMAL', 'LOG_VERBOSE', 'LOG_DEBUG',
    'LOG_LEVELS', 'should_log', 'normalize_level',
    'log_run', 'set_log_level', 'current_log_level', 'recent_messages', 'clear_messages',
    'MAX_LOG_MESSAGES',
]
