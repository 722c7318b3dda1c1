#!/usr/bin/env python3
"""
シリアライズモジュール

対合・タブロー・メアンダー・半順序集合・交わりの結果を JSON 互換の辞書に変換し、
コマンドライン引数の文字列（JSON テキスト、JSON ファイルのパス、インライン記法）を解析します。

インライン記法:
    対合     "1-3,2-6,4-7@7"（アークを並べ、@ の後に n）。"@5" は恒等置換
    タブロー "4,5,7,8@8"（第2列を並べ、@ の後に n）。"@3" は1列のタブロー
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

from core.exceptions import InvalidTableauError, ParseError
from core.logger import get_logger
from core.meanders import (
    ComponentKind,
    IntersectionComponent,
    IntersectionReport,
    Meander,
    MeanderComponent,
    build_meander,
    intersection_matrix,
)
from core.order import CoverSet, OrbitPoset, PosetNode, rank_matrix
from core.patterns import Involution, dimension
from core.tableaux import TwoColumnTableau, tableau_from_second_column

logger = get_logger("codec")

_ARC_RE = re.compile(r"\s*(\d+)\s*-\s*(\d+)\s*")
_INT_RE = re.compile(r"\s*(\d+)\s*")


def dumps(data: Any) -> str:
    """決定的な JSON テキスト（キーは挿入順、末尾に改行）"""
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# 辞書との相互変換
# ---------------------------------------------------------------------------


def _require(data: Any, keys: tuple[str, ...], what: str) -> dict[str, Any]:
    if not isinstance(data, dict):
        raise ParseError(repr(data), 0, f"{what} はオブジェクトでなければなりません")
    missing = [key for key in keys if key not in data]
    if missing:
        raise ParseError(json.dumps(data, ensure_ascii=False), 0, f"{what} にキー {missing} がありません")
    return data


def involution_to_dict(sigma: Involution) -> dict[str, Any]:
    return {"n": sigma.n, "arcs": [list(arc) for arc in sigma.arcs]}


def involution_from_dict(data: Any) -> Involution:
    data = _require(data, ("n", "arcs"), "対合")
    try:
        return Involution(int(data["n"]), tuple((int(a), int(b)) for a, b in data["arcs"]))
    except (TypeError, ValueError) as exc:
        raise ParseError(json.dumps(data, ensure_ascii=False), 0, f"対合の形式が不正です: {exc}") from exc


def tableau_to_dict(tableau: TwoColumnTableau) -> dict[str, Any]:
    return {"n": tableau.n, "col1": list(tableau.col1), "col2": list(tableau.col2)}


def tableau_from_dict(data: Any) -> TwoColumnTableau:
    data = _require(data, ("n", "col2"), "タブロー")
    n = int(data["n"])
    if "col1" in data:
        return TwoColumnTableau(n, tuple(int(p) for p in data["col1"]), tuple(int(p) for p in data["col2"]))
    return tableau_from_second_column(n, (int(p) for p in data["col2"]))


def meander_to_dict(meander: Meander) -> dict[str, Any]:
    return {
        "n": meander.n,
        "top": involution_to_dict(meander.top),
        "bottom": involution_to_dict(meander.bottom),
        "components": [
            {
                "kind": component.kind.value,
                "length": component.length,
                "arcs": [[side, list(arc)] for side, arc in component.arcs],
            }
            for component in meander.components
        ],
        "isolated": list(meander.isolated),
    }


def meander_from_dict(data: Any) -> Meander:
    """top と bottom から成分を計算し直し、記録された成分と一致するか確認する"""
    data = _require(data, ("top", "bottom"), "メアンダー")
    meander = build_meander(involution_from_dict(data["top"]), involution_from_dict(data["bottom"]))
    if "components" in data:
        recorded = tuple(
            MeanderComponent(ComponentKind(c["kind"]), tuple((side, (int(a), int(b))) for side, (a, b) in c["arcs"]))
            for c in data["components"]
        )
        if recorded != meander.components:
            raise ParseError(json.dumps(data, ensure_ascii=False), 0, "記録された成分が top/bottom と一致しません")
    return meander


def poset_to_dict(poset: OrbitPoset) -> dict[str, Any]:
    return {
        "n": poset.n,
        "k": poset.k,
        "nodes": [{"arcs": [list(arc) for arc in node.involution.arcs], "dim": node.dim} for node in poset.nodes],
        "edges": [list(edge) for edge in poset.edges],
    }


def poset_from_dict(data: Any) -> OrbitPoset:
    data = _require(data, ("n", "k", "nodes", "edges"), "半順序集合")
    n = int(data["n"])
    nodes = []
    for entry in data["nodes"]:
        sigma = involution_from_dict({"n": n, "arcs": entry["arcs"]})
        nodes.append(PosetNode(sigma, int(entry["dim"]), rank_matrix(sigma)))
    edges = tuple((int(parent), int(child)) for parent, child in data["edges"])
    if any(not (0 <= idx < len(nodes)) for edge in edges for idx in edge):
        raise ParseError(json.dumps(data["edges"]), 0, "辺が存在しない節点を参照しています")
    k = None if data["k"] is None else int(data["k"])
    return OrbitPoset(n=n, k=k, nodes=tuple(nodes), edges=edges)


def cover_to_dict(cover: CoverSet) -> dict[str, Any]:
    return {
        "source": involution_to_dict(cover.source),
        "D": [
            {
                "target": involution_to_dict(move.target),
                "moves": [{"kind": m.kind.value, "arcs": [list(arc) for arc in m.arcs]} for m in move.provenance],
            }
            for move in cover.d_moves
        ],
        "N": [involution_to_dict(sigma) for sigma in cover.n_moves],
    }


def intersection_to_dict(report: IntersectionReport) -> dict[str, Any]:
    return {
        "a": involution_to_dict(report.a),
        "b": involution_to_dict(report.b),
        "k": report.restrict_k,
        "min_matrix": report.min_matrix.to_rows(),
        "components": [
            {
                "arcs": [list(arc) for arc in c.involution.arcs],
                "dim": c.dim,
                "codim_a": c.codim_a,
                "codim_b": c.codim_b,
            }
            for c in report.components
        ],
        "irreducible": report.irreducible,
    }


def intersection_from_dict(data: Any) -> IntersectionReport:
    data = _require(data, ("a", "b", "components"), "交わり")
    a, b = involution_from_dict(data["a"]), involution_from_dict(data["b"])
    components = []
    for entry in data["components"]:
        sigma = involution_from_dict({"n": a.n, "arcs": entry["arcs"]})
        dim = dimension(sigma)
        components.append(IntersectionComponent(sigma, dim, dimension(a) - dim, dimension(b) - dim))
    k = data.get("k")
    return IntersectionReport(
        a=a,
        b=b,
        restrict_k=None if k is None else int(k),
        min_matrix=intersection_matrix(a, b),
        components=tuple(components),
    )


# ---------------------------------------------------------------------------
# 引数文字列の解析
# ---------------------------------------------------------------------------


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(text, exc.pos, f"JSON の解析に失敗しました: {exc.msg}") from exc


def _json_source(text: str) -> Any | None:
    """JSON テキストか JSON ファイルのパスなら中身を返す。インライン記法なら None"""
    stripped = text.strip()
    if stripped.startswith(("{", "[")):
        return _load_json(stripped)
    if "@" not in stripped:
        path = Path(stripped).expanduser()
        if path.is_file():
            logger.debug("JSON ファイルを読み込みます: %s", path)
            return _load_json(path.read_text(encoding="utf-8"))
    return None


def _split_size(text: str) -> tuple[str, int]:
    body, sep, tail = text.rpartition("@")
    if not sep:
        raise ParseError(text, len(text), "末尾に '@n' で点の個数を指定してください")
    match = _INT_RE.fullmatch(tail)
    if not match or int(match[1]) < 1:
        raise ParseError(text, len(body) + 1, f"n は正の整数でなければなりません: {tail!r}")
    return body, int(match[1])


def parse_involution_spec(text: str) -> Involution:
    """
    対合の指定を解析する

    Args:
        text: JSON テキスト、JSON ファイルのパス、またはインライン記法 "1-3,2-6@7"

    Raises:
        ParseError: 構文が不正な場合（position は問題のある文字の位置）
        InvalidInvolutionError: 端点が重複・範囲外などの場合
    """
    data = _json_source(text)
    if data is not None:
        return involution_from_dict(data)

    body, n = _split_size(text)
    arcs = []
    offset = 0
    if body.strip():
        for token in body.split(","):
            match = _ARC_RE.fullmatch(token)
            if not match:
                raise ParseError(text, offset, f"アークは 'i-j' の形式で指定してください: {token!r}")
            arcs.append((int(match[1]), int(match[2])))
            offset += len(token) + 1
    return Involution(n, tuple(arcs))


def parse_tableau_spec(text: str) -> TwoColumnTableau:
    """
    タブローの指定を解析する

    Args:
        text: JSON テキスト、JSON ファイルのパス、またはインライン記法 "4,5,7,8@8"

    Raises:
        ParseError: 構文が不正な場合
        InvalidTableauError: 標準タブローにならない場合
    """
    data = _json_source(text)
    if data is not None:
        return tableau_from_dict(data)

    body, n = _split_size(text)
    second = []
    offset = 0
    if body.strip():
        for token in body.split(","):
            match = _INT_RE.fullmatch(token)
            if not match:
                raise ParseError(text, offset, f"第2列の数が必要です: {token!r}")
            second.append(int(match[1]))
            offset += len(token) + 1
    if len(set(second)) != len(second):
        raise InvalidTableauError("第2列に同じ数が複数あります", n)
    return tableau_from_second_column(n, second)
