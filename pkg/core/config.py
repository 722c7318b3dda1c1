#!/usr/bin/env python3
"""
設定管理モジュール

config/config.default.json のデフォルト設定に、ユーザー設定ディレクトリの
config.json を重ねて読み込みます。全列挙の上限やキャッシュの場所などを扱います。
"""

from __future__ import annotations

import json
import os
import shutil
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any

from core.exceptions import ConfigurationError
from core.logger import get_logger, log_exception
from core.version import APP_VERSION

# ロガーの初期化
logger = get_logger("config")

OUTPUT_FORMATS = ("json", "dot", "table", "png", "xlsx")

_POSITIVE_INT_KEYS = ("enumeration_cap", "parallel_workers", "verify_max_n", "rank2_exhaustive_max_n", "export_dpi")

# config.default.json が見つからない場合のフォールバック
_FALLBACK_DEFAULTS: dict[str, Any] = {
    "enumeration_cap": 12,
    "use_cache": True,
    "cache_dir": None,
    "default_format": "table",
    "parallel_workers": 1,
    "verify_max_n": 7,
    "rank2_exhaustive_max_n": 5,
    "export_dpi": 150,
    "app_version": APP_VERSION,
}


def _get_app_root() -> Path:
    return Path(__file__).resolve().parent.parent


def _default_user_config_dir() -> Path:
    if sys.platform == "darwin":
        return Path.home() / "Library" / "Application Support" / "BLT"
    if sys.platform == "win32":
        return Path(os.environ.get("APPDATA") or (Path.home() / "AppData" / "Roaming")) / "BLT"
    return Path(os.environ.get("XDG_CONFIG_HOME") or (Path.home() / ".config")) / "BLT"


def get_user_config_dir() -> Path:
    """ユーザー設定ディレクトリ（環境変数BLT_CONFIG_DIRで上書き可）を作成して返す"""
    override_dir = os.environ.get("BLT_CONFIG_DIR")
    base_dir = Path(override_dir).expanduser() if override_dir else _default_user_config_dir()
    if override_dir:
        logger.debug("環境変数BLT_CONFIG_DIRでユーザー設定ディレクトリを指定: %s", base_dir)

    try:
        base_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:  # pragma: no cover - 権限などによるフォールバック
        logger.warning("ユーザー設定ディレクトリの作成に失敗しました (%s)。ホーム直下に退避します。", exc)
        fallback_dir = Path.home() / ".BLT"
        fallback_dir.mkdir(parents=True, exist_ok=True)
        return fallback_dir

    return base_dir


def _overlay(base: dict[str, Any], user: dict[str, Any]) -> None:
    # 既知のキーのみ上書きする
    for key in base:
        if key in user:
            base[key] = user[key]


def load_config(on_warning: Callable[[str], None] | None = None) -> dict[str, Any]:
    """
    設定ファイルを読み込む

    1. config/config.default.json からデフォルト設定を読み込み
    2. ユーザー設定ディレクトリの config.json で上書き
    3. ユーザー設定が存在しない場合はデフォルト設定をコピーして作成
    4. ユーザー設定が壊れている場合は config.json.bak、次にデフォルトを使用

    Args:
        on_warning: 警告メッセージの通知先。省略時はロガーに出力する。

    Returns:
        dict: 設定情報を含む辞書
    """
    warn = on_warning or (lambda msg: logger.warning("%s", msg))

    default_config_path = _get_app_root() / "config" / "config.default.json"
    user_config_dir = get_user_config_dir()
    user_config_path = user_config_dir / "config.json"
    backup_path = user_config_dir / "config.json.bak"

    logger.debug(f"デフォルト設定ファイルのパス: {default_config_path}")
    logger.debug(f"ユーザー設定ファイルのパス: {user_config_path}")

    try:
        with default_config_path.open("r", encoding="utf-8") as f:
            config = json.load(f)
    except FileNotFoundError:
        logger.error(f"デフォルト設定ファイルが見つかりません: {default_config_path}")
        config = dict(_FALLBACK_DEFAULTS)
    except json.JSONDecodeError as e:
        logger.error(f"デフォルト設定ファイルの解析に失敗しました: {e}")
        raise

    if not user_config_path.exists() and default_config_path.exists():
        logger.info("ユーザー設定ファイルが存在しません。デフォルト設定をコピーします")
        try:
            shutil.copy2(default_config_path, user_config_path)
        except OSError as e:
            logger.warning(f"ユーザー設定ファイルの作成に失敗しました: {e}")

    try:
        with user_config_path.open("r", encoding="utf-8") as f:
            _overlay(config, json.load(f))
        logger.info("設定ファイルの読み込みに成功しました")
    except FileNotFoundError:
        logger.info("ユーザー設定ファイルが無いためデフォルト設定を使用します")
    except json.JSONDecodeError as e:
        logger.error(f"ユーザー設定ファイルの解析に失敗しました: {e}")
        try:
            with backup_path.open("r", encoding="utf-8") as bf:
                _overlay(config, json.load(bf))
            shutil.copy2(backup_path, user_config_path)
            logger.info("バックアップから設定を復元しました: %s", backup_path)
        except (OSError, json.JSONDecodeError):
            warn(f"ユーザー設定ファイルの解析に失敗しました: {user_config_path}\nデフォルト設定を使用します。")

    # バージョン情報は常に実行中のものを使用
    config["app_version"] = APP_VERSION
    logger.debug(f"最終的な設定: {config}")
    return config


def save_config(config: dict[str, Any]) -> bool:
    """
    設定ファイルを保存する

    既存のファイルは config.json.bak に退避してから書き込みます。

    Args:
        config: 保存する設定情報

    Returns:
        bool: 保存に成功した場合はTrue、失敗した場合はFalse
    """
    user_config_dir = get_user_config_dir()
    config_path = user_config_dir / "config.json"
    backup_path = user_config_dir / "config.json.bak"

    try:
        if config_path.exists():
            shutil.copy2(config_path, backup_path)
            logger.debug(f"設定ファイルをバックアップしました: {backup_path}")
        config_path.write_text(json.dumps(config, indent=4, ensure_ascii=False), encoding="utf-8")
        logger.info(f"設定ファイルを保存しました: {config_path}")
        return True
    except (OSError, TypeError) as e:
        log_exception(e, "設定の保存中にエラーが発生しました")
        return False


def validate_config(config: dict[str, Any]) -> dict[str, Any]:
    """
    設定値の妥当性を確認する

    Raises:
        ConfigurationError: 値が不正な場合
    """
    for key in _POSITIVE_INT_KEYS:
        value = config.get(key)
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise ConfigurationError(f"正の整数が必要です: {value!r}", key)

    fmt = config.get("default_format")
    if fmt not in OUTPUT_FORMATS:
        raise ConfigurationError(f"未知の出力形式です: {fmt!r}", "default_format")

    if config["verify_max_n"] > config["enumeration_cap"]:
        raise ConfigurationError(
            f"verify_max_n ({config['verify_max_n']}) が enumeration_cap ({config['enumeration_cap']}) を超えています",
            "verify_max_n",
        )

    return config
