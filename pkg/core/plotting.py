#!/usr/bin/env python3
"""
描画モジュール

リンクパターンとメアンダーを matplotlib で描き、PNG として保存します。
上のパターンのアークは軸の上側に、下のパターンのアークは下側に半円で描きます。
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
from matplotlib.axes import Axes
from matplotlib.figure import Figure
from matplotlib.patches import Arc as ArcPatch

from core.exceptions import ExportError
from core.logger import get_logger
from core.meanders import BOTTOM, ComponentKind, Meander
from core.patterns import Involution
from core.paths import ensure_parent_dir
from core.version import APP_VERSION

# モジュール用のロガーを初期化
logger = get_logger("plotting")

DEFAULT_DPI = 150


def _draw_points(ax: Axes, n: int) -> None:
    ax.axhline(0, color="0.8", linewidth=0.8, zorder=0)
    ax.scatter(range(1, n + 1), [0] * n, s=25, color="black", zorder=3)
    for p in range(1, n + 1):
        ax.annotate(str(p), (p, 0), textcoords="offset points", xytext=(4, -12), fontsize=8)


def _draw_arc(ax: Axes, i: int, j: int, *, below: bool, color: str, linestyle: str = "-") -> None:
    width = j - i
    theta1, theta2 = (180, 360) if below else (0, 180)
    ax.add_patch(
        ArcPatch(
            ((i + j) / 2, 0),
            width,
            width,
            theta1=theta1,
            theta2=theta2,
            color=color,
            linestyle=linestyle,
            linewidth=1.4,
        )
    )


def _finish_axes(ax: Axes, n: int, span: float, title: str) -> None:
    ax.set_xlim(0.3, n + 0.7)
    ax.set_ylim(-span, span)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title(title)
    # 右下にバージョンを表示
    ax.text(1.0, 0.0, f"BLT v{APP_VERSION}", transform=ax.transAxes, ha="right", va="bottom", fontsize=6, alpha=0.5)


def _save(fig: Figure, output_path: str | Path, dpi: int) -> Path:
    path = ensure_parent_dir(output_path)
    try:
        fig.savefig(path, dpi=dpi, bbox_inches="tight")
    except Exception as e:
        raise ExportError(f"画像の保存中にエラーが発生しました: {e}", file_path=str(path)) from e
    logger.info("画像を保存しました: %s (DPI: %d)", path, dpi)
    return path


def plot_involution(sigma: Involution, output_path: str | Path, *, dpi: int = DEFAULT_DPI) -> Path:
    """リンクパターン P_σ を描く"""
    fig = plt.figure(figsize=(max(4.0, sigma.n * 0.6), 3.0))
    try:
        ax = fig.add_subplot(111)
        _draw_points(ax, sigma.n)
        for i, j in sigma.arcs:
            _draw_arc(ax, i, j, below=False, color="tab:blue")
        span = max((j - i for i, j in sigma.arcs), default=1) / 2 + 0.5
        _finish_axes(ax, sigma.n, span, sigma.cycle_notation())
        return _save(fig, output_path, dpi)
    finally:
        plt.close(fig)


def plot_meander(meander: Meander, output_path: str | Path, *, dpi: int = DEFAULT_DPI) -> Path:
    """
    メアンダーを描く

    ループは青、区間は橙で、下のアークは破線にします。
    """
    fig = plt.figure(figsize=(max(4.0, meander.n * 0.6), 4.0))
    try:
        ax = fig.add_subplot(111)
        _draw_points(ax, meander.n)
        widest = 1
        for component in meander.components:
            color = "tab:blue" if component.kind is ComponentKind.LOOP else "tab:orange"
            for side, (i, j) in component.arcs:
                below = side == BOTTOM
                _draw_arc(ax, i, j, below=below, color=color, linestyle="--" if below else "-")
                widest = max(widest, j - i)
        title = f"{meander.top.cycle_notation()} / {meander.bottom.cycle_notation()}"
        _finish_axes(ax, meander.n, widest / 2 + 0.5, title)
        return _save(fig, output_path, dpi)
    finally:
        plt.close(fig)
