import atexit
import json
import os
import shutil
import tempfile
from pathlib import Path

import pytest


def _ensure_temp_env_dir(env_var: str, prefix: str) -> Path:
    """
    Ensure the given env var points to a writable temp directory.

    Returns the resolved path so tests can rely on a predictable, isolated location.
    """
    existing = os.environ.get(env_var)
    if existing:
        path = Path(existing)
        path.mkdir(parents=True, exist_ok=True)
        return path

    temp_dir = Path(tempfile.mkdtemp(prefix=f"blt-{prefix}-"))
    atexit.register(shutil.rmtree, temp_dir, ignore_errors=True)
    os.environ[env_var] = str(temp_dir)
    return temp_dir


# Keep config/cache writes inside temp directories to avoid polluting the host.
_ensure_temp_env_dir("BLT_CONFIG_DIR", "config")
_ensure_temp_env_dir("BLT_CACHE_DIR", "cache")
_ensure_temp_env_dir("MPLCONFIGDIR", "mpl")
os.environ.setdefault("MPLBACKEND", "Agg")

from core.patterns import Involution, involution_from_arcs  # noqa: E402
from core.tableaux import TwoColumnTableau, tableau_from_second_column  # noqa: E402


@pytest.fixture
def worked_sigma() -> Involution:
    """(1,3)(2,6)(4,7) in n=7: ℓ=3, c=2, f=2, dim 8."""
    return involution_from_arcs(7, [(1, 3), (2, 6), (4, 7)])


@pytest.fixture
def reducible_pair() -> tuple[Involution, Involution]:
    """A pair whose closures meet in two components of dims 6 and 4."""
    return involution_from_arcs(6, [(2, 3), (5, 6)]), involution_from_arcs(6, [(1, 2), (4, 5)])


@pytest.fixture
def tableau_pair() -> tuple[TwoColumnTableau, TwoColumnTableau]:
    """T with col2=(3,6) and S with col2=(2,5): σ_T=(2,3)(5,6), σ_S=(1,2)(4,5)."""
    return tableau_from_second_column(6, (3, 6)), tableau_from_second_column(6, (2, 5))


@pytest.fixture
def isolated_dirs(tmp_path, monkeypatch) -> dict[str, Path]:
    config_dir = tmp_path / "user_config"
    cache_dir = tmp_path / "cache"
    monkeypatch.setenv("BLT_CONFIG_DIR", str(config_dir))
    monkeypatch.setenv("BLT_CACHE_DIR", str(cache_dir))
    return {"config": config_dir, "cache": cache_dir}


@pytest.fixture
def app_root_with_default(tmp_path, monkeypatch):
    app_root = tmp_path / "app_root"
    config_dir = app_root / "config"
    config_dir.mkdir(parents=True)

    default_config = {
        "enumeration_cap": 9,
        "use_cache": True,
        "cache_dir": None,
        "default_format": "json",
        "parallel_workers": 1,
        "verify_max_n": 4,
        "rank2_exhaustive_max_n": 3,
        "export_dpi": 72,
        "app_version": "0.0.0",
    }
    (config_dir / "config.default.json").write_text(json.dumps(default_config), encoding="utf-8")

    monkeypatch.setattr("core.config._get_app_root", lambda: app_root)
    return default_config, app_root
