"""Tests for core.plotting module."""

import matplotlib.pyplot as plt
import pytest

from core.exceptions import ExportError
from core.meanders import build_meander
from core.patterns import identity, involution_from_arcs
from core.plotting import plot_involution, plot_meander

PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"


def test_plot_involution_writes_png(tmp_path, worked_sigma):
    output = plot_involution(worked_sigma, tmp_path / "sigma.png", dpi=50)

    assert output.exists()
    assert output.read_bytes()[:8] == PNG_SIGNATURE


def test_plot_identity(tmp_path):
    output = plot_involution(identity(3), tmp_path / "id.png", dpi=50)
    assert output.exists()


def test_plot_meander_creates_parent(tmp_path):
    meander = build_meander(
        involution_from_arcs(7, [(1, 3), (2, 5), (4, 7)]),
        involution_from_arcs(7, [(1, 4), (3, 5), (6, 7)]),
    )

    output = plot_meander(meander, tmp_path / "figs" / "meander.png", dpi=50)

    assert output.read_bytes()[:8] == PNG_SIGNATURE


def test_figures_are_closed(tmp_path, worked_sigma):
    before = len(plt.get_fignums())
    plot_involution(worked_sigma, tmp_path / "a.png", dpi=50)
    assert len(plt.get_fignums()) == before


def test_save_failure_raises_export_error(tmp_path, worked_sigma, monkeypatch):
    def fail(*args, **kwargs):
        raise OSError("disk full")

    monkeypatch.setattr("matplotlib.figure.Figure.savefig", fail)

    with pytest.raises(ExportError) as exc_info:
        plot_involution(worked_sigma, tmp_path / "b.png", dpi=50)

    assert "disk full" in str(exc_info.value)
    assert len(plt.get_fignums()) == 0
