#!/usr/bin/env python3
"""
データエクスポートモジュール

半順序集合・メアンダー・W グラフの DOT 形式への変換、テキスト出力の書き込み、
表データの Excel ワークブックへの書き出しを提供します。
"""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import networkx as nx
import pandas as pd
from openpyxl import Workbook
from openpyxl.utils.dataframe import dataframe_to_rows

from core.exceptions import ExportError
from core.logger import get_logger, log_exception
from core.meanders import BOTTOM, Meander
from core.order import OrbitPoset
from core.paths import ensure_parent_dir

# モジュール用のロガーを初期化
logger = get_logger("export")


def poset_to_dot(poset: OrbitPoset) -> str:
    """
    ハッセ図を DOT 形式に変換する

    節点のラベルは "(1,3)(2,6) d=8"。同じ次元の節点は同じ段に並べ、
    辺は次元の大きい側から小さい側に向けます。
    """
    name = f"poset_n{poset.n}" + ("" if poset.k is None else f"_k{poset.k}")
    lines = [f"digraph {name} {{", "  rankdir=TB;", "  node [shape=box, fontname=monospace];"]

    by_dim: dict[int, list[int]] = defaultdict(list)
    for idx, node in enumerate(poset.nodes):
        lines.append(f'  n{idx} [label="{node.involution.cycle_notation()} d={node.dim}"];')
        by_dim[node.dim].append(idx)

    for dim in sorted(by_dim, reverse=True):
        members = " ".join(f"n{idx};" for idx in by_dim[dim])
        lines.append(f"  {{ rank=same; {members} }}")

    lines.extend(f"  n{parent} -> n{child};" for parent, child in poset.edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def meander_to_dot(meander: Meander) -> str:
    """メアンダーを DOT 形式に変換する（上のアークは実線、下のアークは破線）"""
    lines = [f"graph meander_n{meander.n} {{", "  node [shape=circle, fixedsize=true, width=0.3];"]
    lines.extend(f'  p{p} [label="{p}"];' for p in range(1, meander.n + 1))
    lines.append("  { rank=same; " + " ".join(f"p{p};" for p in range(1, meander.n + 1)) + " }")
    for idx, component in enumerate(meander.components):
        for side, (i, j) in component.arcs:
            style = "dashed" if side == BOTTOM else "solid"
            lines.append(f'  p{i} -- p{j} [style={style}, label="{component.kind.value}{idx}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def w_graph_to_dot(graph: nx.Graph, n: int, k: int) -> str:
    """
    W グラフを DOT 形式に変換する

    節点のラベルは第2列と降下集合 "3,4 I={2}"。
    """
    lines = [f"graph w_graph_n{n}_k{k} {{", "  node [shape=box, fontname=monospace];"]
    ids = {tableau: idx for idx, tableau in enumerate(graph.nodes)}
    for tableau, data in graph.nodes(data=True):
        descents = ",".join(map(str, data["descents"]))
        lines.append(f'  t{ids[tableau]} [label="{data["label"]} I={{{descents}}}"];')
    lines.extend(f"  t{ids[s]} -- t{ids[t]};" for s, t in graph.edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_output(text: str, output_path: str | Path) -> Path:
    """
    テキストを UTF-8 でファイルに書き込む

    Raises:
        ExportError: 書き込みに失敗した場合
    """
    path = ensure_parent_dir(output_path)
    if path.exists():
        logger.info("既存のファイルを上書きします: %s", path)
    try:
        path.write_text(text, encoding="utf-8")
    except PermissionError as e:
        raise ExportError("書き込みできません。権限を確認してください。", file_path=str(path)) from e
    except OSError as e:
        log_exception(e, "出力ファイルの書き込み中にエラーが発生しました")
        raise ExportError(f"出力ファイルの書き込み中にエラーが発生しました: {e}", file_path=str(path)) from e
    logger.info("出力を保存しました: %s", path)
    return path


def poset_frames(poset: OrbitPoset) -> dict[str, pd.DataFrame]:
    """半順序集合の節点と辺の表"""
    nodes = pd.DataFrame(
        {
            "index": range(len(poset.nodes)),
            "involution": [node.involution.cycle_notation() for node in poset.nodes],
            "length": [node.involution.length for node in poset.nodes],
            "dim": [node.dim for node in poset.nodes],
            "children": [",".join(map(str, poset.children(idx))) for idx in range(len(poset.nodes))],
        }
    )
    edges = pd.DataFrame(
        {
            "parent": [parent for parent, _ in poset.edges],
            "child": [child for _, child in poset.edges],
            "parent_label": [poset.nodes[parent].involution.cycle_notation() for parent, _ in poset.edges],
            "child_label": [poset.nodes[child].involution.cycle_notation() for _, child in poset.edges],
        }
    )
    return {"Nodes": nodes, "Edges": edges}


def export_workbook(sheets: dict[str, pd.DataFrame], output_path: str | Path) -> Path:
    """
    表を Excel ワークブックに書き出す

    Args:
        sheets: シート名と表の対応（挿入順にシートを作成）
        output_path: 出力先の .xlsx ファイル

    Returns:
        Path: 出力されたファイルのパス

    Raises:
        ExportError: 書き込みに失敗した場合
    """
    path = ensure_parent_dir(output_path)
    workbook = Workbook()
    # デフォルトのシートを削除（後で必要なシートを追加する）
    default_sheet = workbook.active
    if default_sheet is not None:
        workbook.remove(default_sheet)

    for title, frame in sheets.items():
        sheet = workbook.create_sheet(title=title[:31])
        for row in dataframe_to_rows(frame, index=False, header=True):
            sheet.append(row)

    try:
        workbook.save(path)
    except PermissionError as e:
        raise ExportError(
            "書き込みできません。ファイルが開かれている可能性があります。", file_path=str(path)
        ) from e
    except Exception as e:
        raise ExportError(f"データの保存中にエラーが発生しました: {e}", file_path=str(path)) from e

    logger.info("ワークブックを保存しました: %s (%d シート)", path, len(sheets))
    return path
