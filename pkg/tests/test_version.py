"""Tests for version module."""

from unittest.mock import patch

import pytest

from core import version
from core.cache_manager import generate_cache_id


def test_app_version_prefers_pyproject():
    """Test that APP_VERSION correctly reads from pyproject.toml."""
    pyproject_version = version._read_from_pyproject()
    assert pyproject_version is not None
    assert pyproject_version == version.APP_VERSION


def test_cache_id_follows_app_version():
    """Test that a version bump invalidates cached posets."""
    current = generate_cache_id(4, None)
    with patch("core.cache_manager.APP_VERSION", "99.0.0"):
        assert generate_cache_id(4, None) != current


class TestReadFromDistribution:
    def test_read_from_distribution_success(self):
        with patch("core.version.metadata.version", return_value="1.2.3"):
            assert version._read_from_distribution() == "1.2.3"

    def test_read_from_distribution_package_not_found(self):
        with patch("core.version.metadata.version", side_effect=version.metadata.PackageNotFoundError):
            assert version._read_from_distribution() is None


class TestReadFromPyproject:
    def test_missing_file(self, tmp_path):
        """Test handling when pyproject.toml doesn't exist."""
        assert version._read_from_pyproject(tmp_path / "pyproject.toml") is None

    @pytest.mark.parametrize("use_tomllib", [True, False])
    def test_reads_project_table_only(self, tmp_path, use_tomllib):
        """Test that the version comes from [project], not from other tables."""
        pyproject = tmp_path / "pyproject.toml"
        pyproject.write_text(
            '[tool.ruff]\nversion = "0.1"\n\n[project]\nname = "BLT"\nversion = "9.9.9"\nauthors = [\n    {name = "x"}\n]\n\n'
            '[tool.pytest]\nversion = "2.0"\n',
            encoding="utf-8",
        )
        if use_tomllib:
            assert version._read_from_pyproject(pyproject) == "9.9.9"
        else:
            with patch("core.version.tomllib", None):
                assert version._read_from_pyproject(pyproject) == "9.9.9"

    def test_without_project_table(self, tmp_path):
        pyproject = tmp_path / "pyproject.toml"
        pyproject.write_text('[tool.ruff]\nline-length = 120\n', encoding="utf-8")
        with patch("core.version.tomllib", None):
            assert version._read_from_pyproject(pyproject) is None


class TestResolveVersion:
    def test_resolve_version_prefers_pyproject(self):
        with (
            patch("core.version._read_from_pyproject", return_value="10.0.0"),
            patch("core.version._read_from_distribution", return_value="5.0.0"),
        ):
            assert version._resolve_version() == "10.0.0"

    def test_resolve_version_fallback_to_default(self):
        with (
            patch("core.version._read_from_pyproject", return_value=None),
            patch("core.version._read_from_distribution", return_value=None),
        ):
            assert version._resolve_version() == "0.0.0"


class TestDependencyVersions:
    def test_lists_runtime_packages(self):
        versions = version.dependency_versions()
        assert set(versions) == set(version.RUNTIME_PACKAGES)
        assert versions["numpy"]
        assert versions["networkx"]

    def test_banner_skips_missing_packages(self):
        fake = {"numpy": "1.0", "networkx": None, "pandas": "2.0", "matplotlib": None, "openpyxl": None}
        with patch("core.version.dependency_versions", return_value=fake):
            assert version.version_banner() == f"{version.APP_VERSION} (numpy 1.0, pandas 2.0)"

    def test_banner_without_packages(self):
        with patch("core.version.dependency_versions", return_value={"numpy": None}):
            assert version.version_banner() == version.APP_VERSION
