"""Tests for core.logger module."""

import logging

import pytest

from core.logger import get_logger, level_from_env, log_exception, log_timing, set_level


@pytest.fixture
def restore_level():
    root = logging.getLogger("BLT")
    level = root.level
    yield
    root.setLevel(level)


def test_get_logger_returns_named_logger():
    lg = get_logger("test_module")
    assert lg.name == "BLT.test_module"


def test_get_logger_child_of_blt():
    lg = get_logger("child")
    assert lg.parent is not None
    assert lg.parent.name == "BLT"


def test_set_level_changes_blt_logger(restore_level):
    set_level(logging.DEBUG)
    assert logging.getLogger("BLT").level == logging.DEBUG
    assert get_logger("order").isEnabledFor(logging.DEBUG)


def test_log_exception_logs_error(caplog):
    exc = ValueError("boom")
    with caplog.at_level(logging.ERROR, logger="BLT"):
        log_exception(exc, "something failed")
    assert any("boom" in r.message for r in caplog.records)


def test_log_exception_includes_message(caplog):
    exc = RuntimeError("detail")
    with caplog.at_level(logging.ERROR, logger="BLT"):
        log_exception(exc, "custom message")
    assert any("custom message" in r.message for r in caplog.records)


def test_log_exception_default_message(caplog):
    exc = TypeError("bad type")
    with caplog.at_level(logging.ERROR, logger="BLT"):
        log_exception(exc)
    assert any("エラーが発生しました" in r.message for r in caplog.records)
    assert any("bad type" in r.message for r in caplog.records)


@pytest.mark.parametrize(
    ("environ", "expected"),
    [
        ({}, logging.WARNING),
        ({"BLT_LOG_LEVEL": "info"}, logging.INFO),
        ({"BLT_LOG_LEVEL": "ERROR"}, logging.ERROR),
        ({"BLT_LOG_LEVEL": "chatty"}, logging.WARNING),
        ({"BLT_DEBUG": "1", "BLT_LOG_LEVEL": "ERROR"}, logging.DEBUG),
    ],
)
def test_level_from_env(environ, expected):
    assert level_from_env(environ) == expected


def test_log_timing_records_elapsed(caplog):
    lg = get_logger("timing")
    with caplog.at_level(logging.DEBUG, logger="BLT"), log_timing(lg, "被覆集合") as timing:
        sum(range(1000))
    assert timing.elapsed >= 0.0
    assert any(r.message.startswith("被覆集合: ") and r.message.endswith("秒") for r in caplog.records)


def test_log_timing_logs_even_on_error(caplog):
    lg = get_logger("timing")
    with caplog.at_level(logging.INFO, logger="BLT"), pytest.raises(ValueError):
        with log_timing(lg, "失敗する処理", level=logging.INFO):
            raise ValueError("boom")
    assert any("失敗する処理" in r.message for r in caplog.records)
