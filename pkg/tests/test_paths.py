"""Tests for core.paths module."""

from core.paths import ensure_cache_dir, ensure_parent_dir, resolve_cache_dir


def test_explicit_cache_dir_wins(tmp_path, monkeypatch):
    monkeypatch.setenv("BLT_CACHE_DIR", str(tmp_path / "env"))
    assert resolve_cache_dir(tmp_path / "explicit", {"cache_dir": str(tmp_path / "config")}) == tmp_path / "explicit"


def test_env_var_over_config(tmp_path, monkeypatch):
    monkeypatch.setenv("BLT_CACHE_DIR", str(tmp_path / "env"))
    assert resolve_cache_dir(None, {"cache_dir": str(tmp_path / "config")}) == tmp_path / "env"


def test_config_cache_dir(tmp_path, monkeypatch):
    monkeypatch.delenv("BLT_CACHE_DIR", raising=False)
    assert resolve_cache_dir(None, {"cache_dir": str(tmp_path / "config")}) == tmp_path / "config"


def test_default_under_user_config_dir(tmp_path, monkeypatch):
    monkeypatch.delenv("BLT_CACHE_DIR", raising=False)
    monkeypatch.setenv("BLT_CONFIG_DIR", str(tmp_path / "user"))
    assert resolve_cache_dir(None, {"cache_dir": None}) == tmp_path / "user" / "cache"


def test_ensure_cache_dir_creates_directory(tmp_path):
    cache = ensure_cache_dir(tmp_path / "a" / "b")
    assert cache.is_dir()


def test_ensure_dirs_are_idempotent(tmp_path):
    for _ in range(2):
        cache = ensure_cache_dir(tmp_path / "cache")
        target = ensure_parent_dir(tmp_path / "out" / "poset.dot")

    assert cache.is_dir()
    assert target.parent.is_dir()
    assert not target.exists()
