#!/usr/bin/env python3
"""
バージョン情報

BLT 自身のバージョンは pyproject.toml を正とし、インストール済みのメタデータ、
既定値の順に探します。この値はキャッシュの識別子にも入るため、
バージョンが上がると以前の半順序集合のキャッシュは使われなくなります。
"""

from __future__ import annotations

import re
from importlib import metadata
from pathlib import Path

try:
    import tomllib  # type: ignore[attr-defined]
except ModuleNotFoundError:  # pragma: no cover - Python <3.11環境
    tomllib = None  # type: ignore

_PACKAGE_NAME = "BLT"
_FALLBACK_VERSION = "0.0.0"

PYPROJECT_PATH = Path(__file__).resolve().parent.parent / "pyproject.toml"

# 計算結果や出力ファイルに影響するライブラリ
RUNTIME_PACKAGES = ("numpy", "networkx", "pandas", "matplotlib", "openpyxl")

_PROJECT_TABLE = re.compile(r"^\[project\]\s*$(.*?)(?=^\[[^\]\n]+\]\s*$|\Z)", re.MULTILINE | re.DOTALL)
_VERSION_LINE = re.compile(r"^version\s*=\s*[\"']([^\"']+)[\"']", re.MULTILINE)


def _read_from_distribution(name: str = _PACKAGE_NAME) -> str | None:
    try:
        return metadata.version(name)
    except metadata.PackageNotFoundError:
        return None


def _read_from_pyproject(path: Path | None = None) -> str | None:
    pyproject_path = path or PYPROJECT_PATH
    try:
        content = pyproject_path.read_text(encoding="utf-8")
    except OSError:
        return None

    if tomllib:
        try:
            return tomllib.loads(content).get("project", {}).get("version")
        except tomllib.TOMLDecodeError:
            return None

    # tomllib が無い環境では [project] テーブルの version 行だけを読む
    table = _PROJECT_TABLE.search(content)
    match = _VERSION_LINE.search(table.group(1)) if table else None
    return match.group(1) if match else None


def _resolve_version() -> str:
    """チェックアウトされた pyproject の値をインストール済みメタデータより優先する"""
    return _read_from_pyproject() or _read_from_distribution() or _FALLBACK_VERSION


APP_VERSION: str = _resolve_version()


def dependency_versions() -> dict[str, str | None]:
    """RUNTIME_PACKAGES のインストール済みバージョン（見つからなければ None）"""
    return {name: _read_from_distribution(name) for name in RUNTIME_PACKAGES}


def version_banner() -> str:
    """`blt --version` の表示。例: "1.0.0 (numpy 1.26.4, networkx 3.2.1, ...)" """
    parts = [f"{name} {ver}" for name, ver in dependency_versions().items() if ver]
    return f"{APP_VERSION} ({', '.join(parts)})" if parts else APP_VERSION
