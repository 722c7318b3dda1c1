#!/usr/bin/env python3
"""
パス管理ユーティリティ

キャッシュや出力ファイルのディレクトリを一元的に扱います。
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Any

from core.config import get_user_config_dir
from core.logger import get_logger

logger = get_logger("paths")

CACHE_DIR_ENV = "BLT_CACHE_DIR"


def resolve_cache_dir(cache_dir: str | Path | None = None, config: dict[str, Any] | None = None) -> Path:
    """
    キャッシュディレクトリを決定する

    優先順位は 引数 > 環境変数BLT_CACHE_DIR > 設定の cache_dir > ユーザー設定ディレクトリ/cache。
    """
    if cache_dir:
        return Path(cache_dir).expanduser()

    env_dir = os.environ.get(CACHE_DIR_ENV)
    if env_dir:
        logger.debug("環境変数%sでキャッシュディレクトリを指定: %s", CACHE_DIR_ENV, env_dir)
        return Path(env_dir).expanduser()

    if config and config.get("cache_dir"):
        return Path(config["cache_dir"]).expanduser()

    return get_user_config_dir() / "cache"


def ensure_cache_dir(cache_dir: str | Path | None = None, config: dict[str, Any] | None = None) -> Path:
    """キャッシュディレクトリを作成して返す"""
    path = resolve_cache_dir(cache_dir, config)
    path.mkdir(parents=True, exist_ok=True)
    return path


def ensure_parent_dir(output_path: str | Path) -> Path:
    """出力ファイルの親ディレクトリを作成し、ファイルのパスを返す"""
    path = Path(output_path).expanduser()
    path.parent.mkdir(parents=True, exist_ok=True)
    return path
