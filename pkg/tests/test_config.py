import json

import pytest

from core.config import load_config, save_config, validate_config
from core.exceptions import ConfigurationError
from core.version import APP_VERSION


def test_load_config_creates_user_file_when_missing(app_root_with_default, tmp_path, monkeypatch):
    default_config, _ = app_root_with_default
    user_dir = tmp_path / "user_dir"
    monkeypatch.setenv("BLT_CONFIG_DIR", str(user_dir))

    config = load_config()

    assert (user_dir / "config.json").exists()
    assert config["enumeration_cap"] == default_config["enumeration_cap"]
    assert config["app_version"] == APP_VERSION


def test_load_config_overlays_user_values(app_root_with_default, tmp_path, monkeypatch):
    user_dir = tmp_path / "user_dir"
    user_dir.mkdir(parents=True)
    monkeypatch.setenv("BLT_CONFIG_DIR", str(user_dir))
    (user_dir / "config.json").write_text(
        json.dumps({"enumeration_cap": 10, "unknown_key": 1}), encoding="utf-8"
    )

    config = load_config()

    assert config["enumeration_cap"] == 10
    assert "unknown_key" not in config


def test_load_config_handles_invalid_user_json(app_root_with_default, tmp_path, monkeypatch):
    default_config, _ = app_root_with_default
    user_dir = tmp_path / "user_dir"
    user_dir.mkdir(parents=True)
    monkeypatch.setenv("BLT_CONFIG_DIR", str(user_dir))
    (user_dir / "config.json").write_text("{invalid json", encoding="utf-8")
    warnings = []

    config = load_config(on_warning=warnings.append)

    assert config["enumeration_cap"] == default_config["enumeration_cap"]
    assert config["app_version"] == APP_VERSION
    assert warnings


def test_load_config_restores_from_backup(app_root_with_default, tmp_path, monkeypatch):
    user_dir = tmp_path / "user_dir"
    user_dir.mkdir(parents=True)
    monkeypatch.setenv("BLT_CONFIG_DIR", str(user_dir))
    (user_dir / "config.json").write_text("{invalid json", encoding="utf-8")
    (user_dir / "config.json.bak").write_text(json.dumps({"verify_max_n": 6}), encoding="utf-8")

    config = load_config()

    assert config["verify_max_n"] == 6
    assert json.loads((user_dir / "config.json").read_text(encoding="utf-8"))["verify_max_n"] == 6


def test_load_config_without_default_file(tmp_path, monkeypatch):
    monkeypatch.setattr("core.config._get_app_root", lambda: tmp_path / "missing")
    monkeypatch.setenv("BLT_CONFIG_DIR", str(tmp_path / "user_dir"))

    config = load_config()

    assert config["enumeration_cap"] == 12
    assert config["default_format"] == "table"


def test_shipped_default_config_is_valid():
    config = load_config()
    assert validate_config(config) is config


def test_save_config_creates_backup_for_existing_file(tmp_path, monkeypatch):
    user_dir = tmp_path / "user_dir"
    monkeypatch.setenv("BLT_CONFIG_DIR", str(user_dir))
    user_dir.mkdir(parents=True)

    config_path = user_dir / "config.json"
    config_path.write_text(json.dumps({"old": 1}), encoding="utf-8")

    result = save_config({"new": 2})

    assert result is True
    assert json.loads(config_path.read_text(encoding="utf-8"))["new"] == 2
    backup_path = user_dir / "config.json.bak"
    assert backup_path.exists()
    assert json.loads(backup_path.read_text(encoding="utf-8"))["old"] == 1


@pytest.mark.parametrize(
    ("key", "value"),
    [
        ("enumeration_cap", 0),
        ("enumeration_cap", True),
        ("default_format", "csv"),
        ("parallel_workers", -1),
        ("export_dpi", 0),
        ("rank2_exhaustive_max_n", "5"),
        ("verify_max_n", 10),
    ],
)
def test_validate_config_rejects(app_root_with_default, key, value):
    default_config, _ = app_root_with_default
    config = default_config | {key: value}

    with pytest.raises(ConfigurationError) as exc_info:
        validate_config(config)

    assert exc_info.value.config_key == key
