import logging

import pytest

from app_logging import (
    LOG_MINIMAL, LOG_NORMAL, LOG_VERBOSE, LOG_DEBUG, MAX_LOG_MESSAGES,
    should_log, normalize_level, log_run, set_log_level, current_log_level,
    recent_messages, clear_messages
)
from config import AppConfig


def test_should_log_ordering():
    assert should_log(LOG_MINIMAL, LOG_MINIMAL)
    assert should_log(LOG_NORMAL, LOG_VERBOSE)
    assert not should_log(LOG_DEBUG, LOG_VERBOSE)
    assert not should_log(LOG_VERBOSE, LOG_NORMAL)


def test_normalize_level():
    assert normalize_level('debug') == LOG_DEBUG
    with pytest.raises(ValueError):
        normalize_level('chatty')


def test_level_comes_from_config_until_overridden():
    assert current_log_level() == LOG_NORMAL
    AppConfig.save_log_level('VERBOSE')
    assert current_log_level() == LOG_VERBOSE
    set_log_level('minimal')
    assert current_log_level() == LOG_MINIMAL
    set_log_level(None)
    assert current_log_level() == LOG_VERBOSE


def test_unknown_saved_level_falls_back():
    AppConfig.save_log_level('SHOUTY')
    assert current_log_level() == LOG_NORMAL


def test_set_log_level_drives_stdlib_threshold():
    set_log_level(LOG_DEBUG)
    assert logging.getLogger().level == logging.DEBUG
    set_log_level(LOG_MINIMAL)
    assert logging.getLogger().level == logging.WARNING


def test_messages_filtered_and_buffered():
    set_log_level(LOG_NORMAL)
    log_run("building basis")
    log_run("node detail", LOG_DEBUG)
    messages = recent_messages()
    assert len(messages) == 1
    assert messages[0].endswith("building basis")
    assert messages[0].startswith("[")

    clear_messages()
    assert recent_messages() == []


def test_buffer_is_bounded():
    set_log_level(LOG_NORMAL)
    for i in range(MAX_LOG_MESSAGES + 10):
        log_run(f"cell {i}")
    messages = recent_messages()
    assert len(messages) == MAX_LOG_MESSAGES
    assert messages[0].endswith("cell 10")
