#!/usr/bin/env python3
"""
ロガーモジュール

ライブラリとCLI全体で使用する統一的なロギング機能を提供します。
標準出力はコマンドの出力（JSON/DOT/表）専用のため、ログは標準エラーに出します。
"""

from __future__ import annotations

import logging
import os
import sys
import time
from collections.abc import Iterator, Mapping
from contextlib import contextmanager
from dataclasses import dataclass

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def level_from_env(environ: Mapping[str, str] | None = None) -> int:
    """
    環境変数からログレベルを決める

    BLT_DEBUG があれば DEBUG、なければ BLT_LOG_LEVEL のレベル名、どちらも無ければ WARNING。
    """
    environ = os.environ if environ is None else environ
    if environ.get("BLT_DEBUG"):
        return logging.DEBUG
    name = environ.get("BLT_LOG_LEVEL", "").upper()
    level = logging.getLevelName(name) if name else logging.WARNING
    return level if isinstance(level, int) else logging.WARNING


def _setup_logging() -> None:
    """ロギングシステムの初期化"""
    logging.basicConfig(
        level=level_from_env(),
        format=LOG_FORMAT,
        datefmt=DATE_FORMAT,
        handlers=[
            logging.StreamHandler(sys.stderr),
        ],
    )


_setup_logging()

# グローバルロガーインスタンス
logger: logging.Logger = logging.getLogger("BLT")


def get_logger(module_name: str) -> logging.Logger:
    """
    指定したモジュール名のロガーを取得する

    Args:
        module_name: モジュール名

    Returns:
        "BLT." 名前空間の下にあるモジュール専用のロガー
    """
    return logging.getLogger(f"BLT.{module_name}")


def set_level(level: int) -> None:
    """--debug / --verbose の指定で BLT のロガーのレベルを変更する"""
    logger.setLevel(level)


@dataclass
class Timing:
    elapsed: float = 0.0


@contextmanager
def log_timing(target: logging.Logger, label: str, level: int = logging.DEBUG) -> Iterator[Timing]:
    """
    ブロックの所要時間を計ってログに残す

    Example:
        >>> with log_timing(logger, "半順序集合 n=6") as timing:
        ...     build_poset(6)
        >>> timing.elapsed
    """
    timing = Timing()
    start = time.perf_counter()
    try:
        yield timing
    finally:
        timing.elapsed = time.perf_counter() - start
        target.log(level, "%s: %.3f 秒", label, timing.elapsed)


def log_exception(e: Exception, message: str = "エラーが発生しました") -> None:
    """
    例外情報をログに記録する

    Args:
        e: 発生した例外
        message: 追加のエラーメッセージ。デフォルトは「エラーが発生しました」。
    """
    logger.error(f"{message}: {str(e)}", exc_info=True)
