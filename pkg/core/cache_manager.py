#!/usr/bin/env python3
"""
キャッシュ管理モジュール

構築済みの軌道の半順序集合を (n, k) ごとに JSON ファイルとして保存し、
同じバージョンのアプリケーションで再利用できるようにします。
壊れたキャッシュは信用せず、削除して作り直します。
"""

from __future__ import annotations

import hashlib
import json
from datetime import datetime
from pathlib import Path
from typing import Any

import numpy as np

from core.codec import dumps, poset_from_dict, poset_to_dict
from core.exceptions import BLTException, CacheCorruptError
from core.logger import get_logger, log_exception
from core.order import OrbitPoset, build_poset
from core.paths import ensure_cache_dir
from core.patterns import DEFAULT_ENUMERATION_CAP, canonical_key, dimension, enumerate_involutions
from core.version import APP_VERSION, dependency_versions

# ロガーの初期化
logger = get_logger("cache_manager")


def _cache_prefix(n: int, k: int | None) -> str:
    return f"poset_n{n}_k{'all' if k is None else k}_"


def generate_cache_id(n: int, k: int | None) -> str:
    """
    (n, k) とアプリケーションのバージョンからキャッシュIDを生成する

    Returns:
        str: SHA-256 の16進文字列
    """
    cache_data = json.dumps({"n": n, "k": k, "app_version": APP_VERSION}, sort_keys=True)
    cache_id = hashlib.sha256(cache_data.encode()).hexdigest()
    logger.debug(f"n={n}, k={k} のキャッシュID: {cache_id}")
    return cache_id


def get_cache_path(
    n: int,
    k: int | None,
    cache_dir: str | Path | None = None,
    config: dict[str, Any] | None = None,
) -> Path:
    """キャッシュファイルのパス poset_n{n}_k{k|all}_{id}.json"""
    directory = ensure_cache_dir(cache_dir, config)
    return directory / f"{_cache_prefix(n, k)}{generate_cache_id(n, k)}.json"


def delete_cache(
    n: int,
    k: int | None,
    cache_dir: str | Path | None = None,
    config: dict[str, Any] | None = None,
) -> bool:
    """
    (n, k) のキャッシュを、バージョンに関係なくすべて削除する

    Returns:
        bool: 削除に成功した場合はTrue、失敗した場合はFalse
    """
    try:
        directory = ensure_cache_dir(cache_dir, config)
        for target_path in directory.glob(f"{_cache_prefix(n, k)}*.json"):
            target_path.unlink()
            logger.info(f"キャッシュを削除しました: {target_path}")
        return True
    except OSError as e:
        log_exception(e, "キャッシュの削除中にエラーが発生しました")
        return False


def save_to_cache(
    poset: OrbitPoset,
    cache_dir: str | Path | None = None,
    config: dict[str, Any] | None = None,
) -> bool:
    """
    半順序集合をキャッシュとして保存する

    Returns:
        bool: 保存に成功した場合はTrue、失敗した場合はFalse
    """
    try:
        # 新しいキャッシュを保存する前に、同じ (n, k) の古いキャッシュを削除
        delete_cache(poset.n, poset.k, cache_dir, config)
        cache_path = get_cache_path(poset.n, poset.k, cache_dir, config)

        data = poset_to_dict(poset)
        data["_metadata"] = {
            "created_at": datetime.now().isoformat(),
            "app_version": APP_VERSION,
            "dependencies": dependency_versions(),
            "n": poset.n,
            "k": poset.k,
        }
        cache_path.write_text(dumps(data), encoding="utf-8")
        logger.info(f"半順序集合をキャッシュに保存しました: {cache_path}")
        return True
    except (OSError, TypeError) as e:
        log_exception(e, "キャッシュへの保存中にエラーが発生しました")
        return False


def _cover_edges(poset: OrbitPoset) -> list[tuple[int, int]]:
    """
    節点のランク行列から被覆関係を作り直す

    τ が σ の真下にある ⟺ R_τ ≤ R_σ かつ dim τ = dim σ - 1
    """
    stack = np.stack([node.rank.entries for node in poset.nodes])
    dims = np.array([node.dim for node in poset.nodes])
    edges: list[tuple[int, int]] = []
    for parent, node in enumerate(poset.nodes):
        lower = np.flatnonzero(dims == node.dim - 1)
        if lower.size == 0:
            continue
        below = np.all(stack[lower] <= stack[parent], axis=(1, 2))
        edges.extend((parent, int(child)) for child in lower[below])
    return sorted(edges)


def _validate(data: Any, n: int, k: int | None, cache_path: Path) -> OrbitPoset:
    if not isinstance(data, dict):
        raise CacheCorruptError("キャッシュの内容がオブジェクトではありません", str(cache_path))
    try:
        poset = poset_from_dict(data)
    except (BLTException, KeyError, TypeError, ValueError) as e:
        raise CacheCorruptError(f"半順序集合として読み込めません: {e}", str(cache_path)) from e
    if poset.n != n or poset.k != k:
        raise CacheCorruptError(f"(n, k) が一致しません: ({poset.n}, {poset.k})", str(cache_path))
    expected = set(enumerate_involutions(n, k, cap=max(n, DEFAULT_ENUMERATION_CAP)))
    if {node.involution for node in poset.nodes} != expected or len(poset.nodes) != len(expected):
        raise CacheCorruptError("節点の集合が対合の列挙と一致しません", str(cache_path))
    if any(node.dim != dimension(node.involution) for node in poset.nodes):
        raise CacheCorruptError("記録された次元が計算値と一致しません", str(cache_path))
    order = sorted(poset.nodes, key=lambda node: (-node.dim, canonical_key(node.involution)))
    if list(poset.nodes) != order:
        raise CacheCorruptError("節点の並びが構築時の順序と一致しません", str(cache_path))
    if list(poset.edges) != _cover_edges(poset):
        raise CacheCorruptError("辺が被覆関係と一致しません", str(cache_path))
    return poset


def load_from_cache(
    n: int,
    k: int | None,
    cache_dir: str | Path | None = None,
    config: dict[str, Any] | None = None,
) -> OrbitPoset | None:
    """
    キャッシュから半順序集合を読み込む

    Returns:
        OrbitPoset or None: キャッシュが無い、バージョンが異なる、または壊れている場合はNone
    """
    try:
        cache_path = get_cache_path(n, k, cache_dir, config)
    except OSError as e:
        log_exception(e, "キャッシュディレクトリの準備中にエラーが発生しました")
        return None

    if not cache_path.exists():
        logger.debug(f"キャッシュファイルが見つかりません: {cache_path}")
        return None

    try:
        try:
            data = json.loads(cache_path.read_text(encoding="utf-8"))
        except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
            raise CacheCorruptError(f"読み込みに失敗しました: {e}", str(cache_path)) from e

        # メタデータを確認
        metadata = data.get("_metadata", {}) if isinstance(data, dict) else {}
        if metadata.get("app_version") != APP_VERSION:
            logger.warning(
                f"キャッシュのバージョン({metadata.get('app_version')})が現在のバージョン({APP_VERSION})と一致しません"
            )
            return None

        poset = _validate(data, n, k, cache_path)
    except CacheCorruptError as e:
        log_exception(e, "壊れたキャッシュを削除して作り直します")
        cache_path.unlink(missing_ok=True)
        return None

    logger.info(f"キャッシュから半順序集合を読み込みました: {cache_path}")
    return poset


def has_valid_cache(
    n: int,
    k: int | None,
    cache_dir: str | Path | None = None,
    config: dict[str, Any] | None = None,
) -> bool:
    """有効なキャッシュが存在するか確認する"""
    if config is not None and not config.get("use_cache", True):
        return False
    return load_from_cache(n, k, cache_dir, config) is not None


def get_or_build_poset(
    n: int,
    k: int | None = None,
    *,
    cache_dir: str | Path | None = None,
    config: dict[str, Any] | None = None,
    use_cache: bool = True,
    cap: int = DEFAULT_ENUMERATION_CAP,
    workers: int = 1,
) -> OrbitPoset:
    """
    キャッシュがあれば読み込み、無ければ構築して保存する

    キャッシュの有無で結果は変わりません。
    """
    use_cache = use_cache and (config or {}).get("use_cache", True)
    if use_cache:
        cached = load_from_cache(n, k, cache_dir, config)
        if cached is not None:
            return cached

    poset = build_poset(n, k, cap=cap, workers=workers)
    if use_cache:
        save_to_cache(poset, cache_dir, config)
    return poset
