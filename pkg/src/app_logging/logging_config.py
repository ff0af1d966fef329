"""
Log verbosity levels for fracpow runs.

The four run-log levels filter what a command prints while it sweeps; each
maps onto a stdlib logging level for the underlying handler.
"""

import logging

# Log level constants
LOG_MINIMAL = "MINIMAL"
LOG_NORMAL = "NORMAL"
LOG_VERBOSE = "VERBOSE"
LOG_DEBUG = "DEBUG"

# All available log levels (in order of verbosity)
LOG_LEVELS = [LOG_MINIMAL, LOG_NORMAL, LOG_VERBOSE, LOG_DEBUG]

# Higher number = more verbose
LOG_LEVEL_PRIORITY = {
    LOG_MINIMAL: 0,
    LOG_NORMAL: 1,
    LOG_VERBOSE: 2,
    LOG_DEBUG: 3
}

STDLIB_LEVELS = {
    LOG_MINIMAL: logging.WARNING,
    LOG_NORMAL: logging.INFO,
    LOG_VERBOSE: logging.INFO,
    LOG_DEBUG: logging.DEBUG
}


def should_log(message_level: str, current_level: str) -> bool:
    """
    Determine if a message should be logged based on current log level.

    Args:
        message_level: The level of the message being logged
        current_level: The current configured log level

    Returns:
        True if message should be emitted, False otherwise
    """
    message_priority = LOG_LEVEL_PRIORITY.get(message_level, 1)  # Default to NORMAL
    current_priority = LOG_LEVEL_PRIORITY.get(current_level, 1)
    return message_priority <= current_priority


def normalize_level(level: str) -> str:
    """Upper-case a level name; unknown names raise ValueError."""
    name = str(level).upper()
    if name not in LOG_LEVEL_PRIORITY:
        raise ValueError(f"unknown log level {level!r}; expected one of {', '.join(LOG_LEVELS)}")
    return name
