#!/usr/bin/env python3
"""
コマンドラインインターフェース

サブコマンド:
    dim, enum, closure, cover, poset, tableaux, sigma-t, closure-t, meander, intersect, w-graph, verify

結果は標準出力（または --out のファイル）に JSON / DOT / 表 / PNG / Excel で出力します。
ログは標準エラーに出ます。

終了コード:
    0: 成功
    1: 検証の失敗、または内部エラー
    2: 入力・設定の誤り
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import pandas as pd

from core.cache_manager import get_or_build_poset
from core.codec import (
    cover_to_dict,
    dumps,
    intersection_to_dict,
    involution_to_dict,
    meander_to_dict,
    parse_involution_spec,
    parse_tableau_spec,
    poset_to_dict,
    tableau_to_dict,
)
from core.config import OUTPUT_FORMATS, load_config, validate_config
from core.exceptions import BLTException, ConfigurationError, SizeMismatchError
from core.export import (
    export_workbook,
    meander_to_dot,
    poset_frames,
    poset_to_dot,
    w_graph_to_dot,
    write_output,
)
from core.logger import get_logger, log_exception, set_level
from core.meanders import (
    build_meander,
    classify_meander,
    codim1_criterion,
    fung_codim,
    intersect,
    reducibility_sufficient,
    tl_inner_exponent,
    w_graph,
)
from core.order import closure, closure_by_filter, cover_C
from core.patterns import (
    Involution,
    check_cap,
    dim_via_pattern,
    dim_via_q,
    dimension,
    enumerate_involutions,
    is_maximal,
    pattern_stats,
)
from core.plotting import plot_involution, plot_meander
from core.tableaux import (
    TwoColumnTableau,
    closure_tableaux,
    closure_tableaux_via_external_arcs,
    descent_set,
    enumerate_tableaux,
    sigma_of_tableau,
    tableau_of_sigma,
)
from core.verify import run_verification
from core.version import version_banner

logger = get_logger("cli")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

_TEXT_FORMATS = ("json", "table")

FORMATS_BY_COMMAND: dict[str, tuple[str, ...]] = {
    "dim": (*_TEXT_FORMATS, "png"),
    "enum": (*_TEXT_FORMATS, "xlsx"),
    "closure": _TEXT_FORMATS,
    "cover": _TEXT_FORMATS,
    "poset": (*_TEXT_FORMATS, "dot", "xlsx"),
    "tableaux": (*_TEXT_FORMATS, "xlsx"),
    "sigma-t": (*_TEXT_FORMATS, "png"),
    "closure-t": _TEXT_FORMATS,
    "meander": (*_TEXT_FORMATS, "dot", "png"),
    "intersect": _TEXT_FORMATS,
    "w-graph": (*_TEXT_FORMATS, "dot", "xlsx"),
    "verify": (*_TEXT_FORMATS, "xlsx"),
}

_BINARY_FORMATS = ("png", "xlsx")


@dataclass
class RunConfig:
    """1回の実行に必要な設定（引数と設定ファイルを合わせたもの）"""

    command: str
    fmt: str
    inputs: tuple[str, ...] = ()
    n: int | None = None
    n_min: int = 1
    k: int | None = None
    out: Path | None = None
    cache_dir: Path | None = None
    cap: int = 12
    use_cache: bool = True
    workers: int = 1
    check: bool = False
    as_tableaux: bool = False
    config: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_args(cls, args: argparse.Namespace, config: dict[str, Any]) -> RunConfig:
        command = args.command
        fmt = args.format
        if fmt is None:
            fmt = config["default_format"]
            if fmt not in FORMATS_BY_COMMAND[command]:
                fmt = "table"

        n = getattr(args, "n", None)
        if command == "verify" and n is None:
            n = int(config.get("verify_max_n", 7))

        run = cls(
            command=command,
            fmt=fmt,
            inputs=tuple(getattr(args, "inputs", ()) or ()),
            n=n,
            n_min=getattr(args, "n_min", 1),
            k=getattr(args, "k", None),
            out=Path(args.out) if args.out else None,
            cache_dir=Path(args.cache_dir) if args.cache_dir else None,
            cap=args.cap if args.cap is not None else int(config["enumeration_cap"]),
            use_cache=bool(config.get("use_cache", True)) and not args.no_cache,
            workers=args.workers if args.workers is not None else int(config["parallel_workers"]),
            check=getattr(args, "check", False),
            as_tableaux=getattr(args, "tableaux", False),
            config=config,
        )
        run.validate()
        return run

    def validate(self) -> None:
        """
        Raises:
            ConfigurationError: 形式・上限・n・k の組み合わせが不正な場合
        """
        allowed = FORMATS_BY_COMMAND[self.command]
        if self.fmt not in allowed:
            raise ConfigurationError(
                f"{self.command} では {self.fmt} 形式は使えません（使用可能: {', '.join(allowed)}）", "format"
            )
        if self.fmt in _BINARY_FORMATS and self.out is None:
            raise ConfigurationError(f"{self.fmt} 形式では --out で出力先を指定してください", "out")
        if self.cap < 1:
            raise ConfigurationError(f"正の整数が必要です: {self.cap}", "cap")
        if self.workers < 1:
            raise ConfigurationError(f"正の整数が必要です: {self.workers}", "workers")
        if self.n is not None and self.n < 1:
            raise ConfigurationError(f"n は正の整数でなければなりません: {self.n}", "n")
        if self.n is not None and self.k is not None and not 0 <= 2 * self.k <= self.n:
            raise ConfigurationError(f"k は 0 <= k <= n/2 を満たす必要があります: n={self.n}, k={self.k}", "k")
        if self.command == "verify" and self.n is not None and not 1 <= self.n_min <= self.n:
            raise ConfigurationError(f"範囲が不正です: {self.n_min}..{self.n}", "n_min")


@dataclass
class CommandResult:
    """サブコマンドの結果。出力形式ごとの表現を持つ"""

    data: dict[str, Any]
    tables: dict[str, pd.DataFrame] = field(default_factory=dict)
    header: list[str] = field(default_factory=list)
    dot: str | None = None
    figure: Callable[[Path, int], Path] | None = None
    ok: bool = True

    def table_text(self) -> str:
        lines = list(self.header)
        for title, frame in self.tables.items():
            if lines:
                lines.append("")
            lines.append(f"[{title}]")
            lines.append(frame.to_string(index=False) if not frame.empty else "(none)")
        return "\n".join(lines) + "\n"


def _involution_rows(involutions: Sequence[Involution]) -> pd.DataFrame:
    stats = [pattern_stats(sigma) for sigma in involutions]
    return pd.DataFrame(
        {
            "involution": [sigma.cycle_notation() for sigma in involutions],
            "length": [s.length for s in stats],
            "crossings": [s.crossings for s in stats],
            "fixed_under": [s.fixed_under for s in stats],
            "dim": [dimension(sigma) for sigma in involutions],
        }
    )


def _tableau_rows(tableaux: Sequence[TwoColumnTableau]) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "col1": [",".join(map(str, t.col1)) for t in tableaux],
            "col2": [",".join(map(str, t.col2)) for t in tableaux],
            "sigma_T": [sigma_of_tableau(t).cycle_notation() for t in tableaux],
            "descents": [",".join(map(str, sorted(descent_set(t)))) for t in tableaux],
        }
    )


def _tableau_entry(tableau: TwoColumnTableau) -> dict[str, Any]:
    return tableau_to_dict(tableau) | {"sigma": involution_to_dict(sigma_of_tableau(tableau))}


# ---------------------------------------------------------------------------
# サブコマンド
# ---------------------------------------------------------------------------


def cmd_dim(run: RunConfig) -> CommandResult:
    """ℓ, c, f と2つの公式による次元。公式が一致しなければ内部エラーとして扱う"""
    sigma = parse_involution_spec(run.inputs[0])
    stats = pattern_stats(sigma)
    dim_q, dim_pattern = dim_via_q(sigma), dim_via_pattern(sigma)
    agree = dim_q == dim_pattern
    if not agree:
        logger.error("次元公式が一致しません: %s (q=%d, pattern=%d)", sigma, dim_q, dim_pattern)

    data = {
        "involution": involution_to_dict(sigma),
        "length": stats.length,
        "crossings": stats.crossings,
        "fixed_under": stats.fixed_under,
        "dim_q": dim_q,
        "dim_pattern": dim_pattern,
        "agree": agree,
    }
    frame = pd.DataFrame([{k: v for k, v in data.items() if k != "involution"}])
    return CommandResult(
        data=data,
        tables={"Dimension": frame},
        header=[f"involution: {sigma.cycle_notation()} (n={sigma.n})"],
        figure=lambda path, dpi: plot_involution(sigma, path, dpi=dpi),
        ok=agree,
    )


def cmd_enum(run: RunConfig) -> CommandResult:
    involutions = enumerate_involutions(run.n, run.k, cap=run.cap)  # type: ignore[arg-type]
    data = {
        "n": run.n,
        "k": run.k,
        "count": len(involutions),
        "involutions": [involution_to_dict(s) | {"dim": dimension(s)} for s in involutions],
    }
    return CommandResult(
        data=data,
        tables={"Involutions": _involution_rows(involutions)},
        header=[f"n={run.n}, k={'all' if run.k is None else run.k}: {len(involutions)} involutions"],
    )


def cmd_closure(run: RunConfig) -> CommandResult:
    sigma = parse_involution_spec(run.inputs[0])
    members = closure(sigma, cap=run.cap)
    ok = True
    checked = None
    if run.check:
        checked = set(members) == set(closure_by_filter(sigma, cap=run.cap))
        ok = checked
        if not checked:
            logger.error("閉包がランク行列のフィルタと一致しません: %s", sigma)
    data = {
        "involution": involution_to_dict(sigma),
        "closure": [involution_to_dict(s) for s in members],
        "checked": checked,
    }
    header = [f"closure of {sigma.cycle_notation()}: {len(members)} orbits"]
    if checked is not None:
        header.append(f"filter check: {'ok' if checked else 'FAIL'}")
    return CommandResult(data=data, tables={"Closure": _involution_rows(members)}, header=header, ok=ok)


def cmd_cover(run: RunConfig) -> CommandResult:
    sigma = parse_involution_spec(run.inputs[0])
    cover = cover_C(sigma)
    rows = [
        {
            "set": "D",
            "involution": move.target.cycle_notation(),
            "dim": dimension(move.target),
            "moves": "; ".join(f"{m.kind.value} {m.arcs}" for m in move.provenance),
        }
        for move in cover.d_moves
    ]
    rows += [
        {"set": "N", "involution": target.cycle_notation(), "dim": dimension(target), "moves": "delete E_max arc"}
        for target in cover.n_moves
    ]
    frame = pd.DataFrame(rows, columns=["set", "involution", "dim", "moves"])
    return CommandResult(
        data=cover_to_dict(cover),
        tables={"Cover": frame},
        header=[f"cover of {sigma.cycle_notation()} (dim {dimension(sigma)}): {len(rows)} elements"],
    )


def cmd_poset(run: RunConfig) -> CommandResult:
    check_cap(run.n, run.cap)  # type: ignore[arg-type]
    poset = get_or_build_poset(
        run.n,  # type: ignore[arg-type]
        run.k,
        cache_dir=run.cache_dir,
        config=run.config,
        use_cache=run.use_cache,
        cap=run.cap,
        workers=run.workers,
    )
    label = "all" if poset.k is None else poset.k
    maximal, minimal = poset.maximal_nodes(), poset.minimal_nodes()
    data = poset_to_dict(poset) | {
        "maximal": [involution_to_dict(s) for s in maximal],
        "minimal": [involution_to_dict(s) for s in minimal],
    }
    header = [
        f"poset n={poset.n}, k={label}: {len(poset.nodes)} nodes, {len(poset.edges)} edges",
        f"maximal: {' '.join(s.cycle_notation() for s in maximal)}",
        f"minimal: {' '.join(s.cycle_notation() for s in minimal)}",
    ]
    return CommandResult(
        data=data,
        tables=poset_frames(poset),
        header=header,
        dot=poset_to_dot(poset),
    )


def cmd_tableaux(run: RunConfig) -> CommandResult:
    k = run.k if run.k is not None else run.n // 2  # type: ignore[operator]
    tableaux = enumerate_tableaux(run.n, k)  # type: ignore[arg-type]
    data = {"n": run.n, "k": k, "count": len(tableaux), "tableaux": [_tableau_entry(t) for t in tableaux]}
    return CommandResult(
        data=data,
        tables={"Tableaux": _tableau_rows(tableaux)},
        header=[f"shape ({run.n - k},{k})*: {len(tableaux)} tableaux"],  # type: ignore[operator]
    )


def cmd_sigma_t(run: RunConfig) -> CommandResult:
    tableau = parse_tableau_spec(run.inputs[0])
    sigma = sigma_of_tableau(tableau)
    data = _tableau_entry(tableau) | {"dim": dimension(sigma), "descents": sorted(descent_set(tableau))}
    return CommandResult(
        data=data,
        tables={"Tableau": _tableau_rows([tableau])},
        header=[f"sigma_T = {sigma.cycle_notation()} (dim {dimension(sigma)})"],
        figure=lambda path, dpi: plot_involution(sigma, path, dpi=dpi),
    )


def cmd_closure_t(run: RunConfig) -> CommandResult:
    tableau = parse_tableau_spec(run.inputs[0])
    members = closure_tableaux(tableau)
    ok = True
    checked = None
    if run.check:
        checked = members == closure_tableaux_via_external_arcs(tableau)
        ok = checked
        if not checked:
            logger.error("N(T) が外部アークによる計算と一致しません: %s", tableau.col2)
    data = {"tableau": tableau_to_dict(tableau), "closure": [_tableau_entry(t) for t in members], "checked": checked}
    header = [f"N(T) for col2={','.join(map(str, tableau.col2))}: {len(members)} tableaux"]
    if checked is not None:
        header.append(f"external arc check: {'ok' if checked else 'FAIL'}")
    return CommandResult(data=data, tables={"Closure": _tableau_rows(members)}, header=header, ok=ok)


def _parse_pair(run: RunConfig) -> tuple[Involution, Involution, TwoColumnTableau | None, TwoColumnTableau | None]:
    if run.as_tableaux:
        first, second = parse_tableau_spec(run.inputs[0]), parse_tableau_spec(run.inputs[1])
        return sigma_of_tableau(first), sigma_of_tableau(second), first, second
    a, b = parse_involution_spec(run.inputs[0]), parse_involution_spec(run.inputs[1])
    if a.n != b.n:
        raise SizeMismatchError(a.n, b.n)
    if a.length == b.length and is_maximal(a) and is_maximal(b):
        return a, b, tableau_of_sigma(a), tableau_of_sigma(b)
    return a, b, None, None


def cmd_meander(run: RunConfig) -> CommandResult:
    top, bottom, _, _ = _parse_pair(run)
    meander = build_meander(top, bottom)
    kind = classify_meander(meander)
    data = meander_to_dict(meander) | {
        "class": {
            "even": kind.even,
            "loops": kind.loops,
            "odd_intervals": kind.odd_intervals,
            "even_intervals": kind.even_intervals,
        }
    }
    frame = pd.DataFrame(
        {
            "kind": [c.kind.value for c in meander.components],
            "length": [c.length for c in meander.components],
            "arcs": [" ".join(f"{side}{arc}" for side, arc in c.arcs) for c in meander.components],
        }
    )
    header = [
        f"top: {top.cycle_notation()}  bottom: {bottom.cycle_notation()}",
        f"{'even' if kind.even else 'odd'}: {kind.loops} loops, {kind.even_intervals} even intervals, "
        f"{kind.odd_intervals} odd intervals, isolated {list(meander.isolated)}",
    ]
    return CommandResult(
        data=data,
        tables={"Components": frame},
        header=header,
        dot=meander_to_dot(meander),
        figure=lambda path, dpi: plot_meander(meander, path, dpi=dpi),
    )


def cmd_intersect(run: RunConfig) -> CommandResult:
    a, b, first, second = _parse_pair(run)
    k = run.k
    if k is None and first is not None and second is not None and run.as_tableaux:
        k = first.k
    if k is not None and not 0 <= 2 * k <= a.n:
        raise ConfigurationError(f"k は 0 <= k <= n/2 を満たす必要があります: n={a.n}, k={k}", "k")

    report = intersect(a, b, k, cap=run.cap)
    kind = classify_meander(build_meander(a, b))
    data = intersection_to_dict(report) | {
        "min_matrix_in_rank2": report.min_matrix_in_rank2,
        "meander": {"even": kind.even, "loops": kind.loops, "odd_intervals": kind.odd_intervals},
        "tl_exponent": kind.loops if kind.even else None,
    }
    if first is not None and second is not None:
        data |= {
            "tl_exponent": tl_inner_exponent(first, second),
            "codim1_criterion": codim1_criterion(first, second),
            "fung_codim": fung_codim(first, second),
            "reducibility_sufficient": reducibility_sufficient(first, second),
        }

    components = pd.DataFrame(
        {
            "involution": [c.involution.cycle_notation() for c in report.components],
            "dim": [c.dim for c in report.components],
            "codim_a": [c.codim_a for c in report.components],
            "codim_b": [c.codim_b for c in report.components],
        }
    )
    matrix = pd.DataFrame(report.min_matrix.to_rows(), columns=range(1, a.n + 1), index=range(1, a.n + 1))
    header = [
        f"a: {a.cycle_notation()} (dim {dimension(a)})  b: {b.cycle_notation()} (dim {dimension(b)})",
        f"k: {'all' if k is None else k}  irreducible: {report.irreducible}",
        f"meander: {'even' if kind.even else 'odd'}, {kind.loops} loops  TL exponent: {data['tl_exponent']}",
    ]
    if "reducibility_sufficient" in data:
        header.append(
            f"codim-1 criterion: {data['codim1_criterion']}  fung codim: {data['fung_codim']}  "
            f"1-segment reducibility: {data['reducibility_sufficient']}"
        )
    return CommandResult(
        data=data,
        tables={"Components": components, "Min matrix": matrix.reset_index(names="i")},
        header=header,
    )


def cmd_w_graph(run: RunConfig) -> CommandResult:
    """形 (n-k, k)* のタブローで、交わりが余次元 1 の組を結んだグラフ"""
    k = run.k if run.k is not None else run.n // 2  # type: ignore[operator]
    graph = w_graph(run.n, k)  # type: ignore[arg-type]
    shape = f"({run.n - k},{k})*"  # type: ignore[operator]
    data = {
        "n": run.n,
        "k": k,
        "nodes": [_tableau_entry(t) | {"descents": graph.nodes[t]["descents"]} for t in graph.nodes],
        "edges": [[list(s.col2), list(t.col2)] for s, t in graph.edges],
    }
    edges = pd.DataFrame(
        {
            "first": [graph.nodes[s]["label"] for s, _ in graph.edges],
            "second": [graph.nodes[t]["label"] for _, t in graph.edges],
        }
    )
    return CommandResult(
        data=data,
        tables={"Tableaux": _tableau_rows(list(graph.nodes)), "Edges": edges},
        header=[f"W graph {shape}: {graph.number_of_nodes()} tableaux, {graph.number_of_edges()} edges"],
        dot=w_graph_to_dot(graph, run.n, k),  # type: ignore[arg-type]
    )


def cmd_verify(run: RunConfig) -> CommandResult:
    check_cap(run.n, run.cap)  # type: ignore[arg-type]
    report = run_verification(run.n_min, run.n, config=run.config)  # type: ignore[arg-type]
    frame = report.to_frame()
    failed = [r for r in report.results if not r.passed]
    status = "all checks passed" if report.passed else f"{len(failed)} checks failed"
    header = [f"verify n={run.n_min}..{run.n}: {status}"]
    for result in failed:
        header.extend(f"  {result.name} (n={result.n}): {example}" for example in result.examples)
    return CommandResult(data=report.to_dict(), tables={"Checks": frame}, header=header, ok=report.passed)


COMMANDS: dict[str, Callable[[RunConfig], CommandResult]] = {
    "dim": cmd_dim,
    "enum": cmd_enum,
    "closure": cmd_closure,
    "cover": cmd_cover,
    "poset": cmd_poset,
    "tableaux": cmd_tableaux,
    "sigma-t": cmd_sigma_t,
    "closure-t": cmd_closure_t,
    "meander": cmd_meander,
    "intersect": cmd_intersect,
    "w-graph": cmd_w_graph,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------------------
# 引数と出力
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=OUTPUT_FORMATS, default=None, help="出力形式")
    common.add_argument("--out", default=None, help="出力ファイル（省略時は標準出力）")
    common.add_argument("--cache-dir", default=None, help="半順序集合のキャッシュディレクトリ")
    common.add_argument("--cap", type=int, default=None, help="全列挙を許す n の上限")
    common.add_argument("--no-cache", action="store_true", help="キャッシュを使わない")
    common.add_argument("--workers", type=int, default=None, help="並列計算のスレッド数")
    common.add_argument("--debug", action="store_true", help="DEBUG レベルのログを出す")
    common.add_argument("-v", "--verbose", action="store_true", help="INFO レベルのログを出す")

    parser = argparse.ArgumentParser(
        prog="blt",
        description="平方ゼロ行列の B 軌道・リンクパターン・2列タブロー・メアンダーの計算",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {version_banner()}")
    sub = parser.add_subparsers(dest="command", required=True)

    sigma_help = '対合: JSON、JSON ファイル、または "1-3,2-6@7"'
    tableau_help = 'タブロー: JSON、JSON ファイル、または第2列と n の "4,5,7,8@8"'

    p = sub.add_parser("dim", parents=[common], help="軌道の次元")
    p.add_argument("inputs", nargs=1, metavar="SIGMA", help=sigma_help)

    p = sub.add_parser("enum", parents=[common], help="対合の列挙")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None)

    p = sub.add_parser("closure", parents=[common], help="軌道閉包に含まれる軌道")
    p.add_argument("inputs", nargs=1, metavar="SIGMA", help=sigma_help)
    p.add_argument("--check", action="store_true", help="ランク行列のフィルタと照合する")

    p = sub.add_parser("cover", parents=[common], help="真下の軌道 C(σ)")
    p.add_argument("inputs", nargs=1, metavar="SIGMA", help=sigma_help)

    p = sub.add_parser("poset", parents=[common], help="軌道の半順序集合")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None)

    p = sub.add_parser("tableaux", parents=[common], help="2列タブローの列挙")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None)

    p = sub.add_parser("sigma-t", parents=[common], help="タブローに対応する対合 σ_T")
    p.add_argument("inputs", nargs=1, metavar="TABLEAU", help=tableau_help)

    p = sub.add_parser("closure-t", parents=[common], help="軌道多様体の閉包 N(T)")
    p.add_argument("inputs", nargs=1, metavar="TABLEAU", help=tableau_help)
    p.add_argument("--check", action="store_true", help="外部アークによる計算と照合する")

    p = sub.add_parser("meander", parents=[common], help="2つのリンクパターンのメアンダー")
    p.add_argument("inputs", nargs=2, metavar=("TOP", "BOTTOM"))
    p.add_argument("--tableaux", action="store_true", help="入力をタブローとして解釈する")

    p = sub.add_parser("intersect", parents=[common], help="軌道閉包の交わりの既約成分")
    p.add_argument("inputs", nargs=2, metavar=("A", "B"))
    p.add_argument("--k", type=int, default=None, help="長さ k の軌道に制限する")
    p.add_argument("--tableaux", action="store_true", help="入力をタブローとして解釈する")

    p = sub.add_parser("w-graph", parents=[common], help="余次元 1 の組を結んだタブローのグラフ")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None)

    p = sub.add_parser("verify", parents=[common], help="小さい n での総合検査")
    p.add_argument("--n", type=int, default=None, help="最大の n（省略時は設定の verify_max_n）")
    p.add_argument("--n-min", type=int, default=1, help="最小の n")

    return parser


def _emit(result: CommandResult, run: RunConfig) -> None:
    if run.fmt == "png":
        if result.figure is None:  # pragma: no cover - FORMATS_BY_COMMAND で除外済み
            raise ConfigurationError("この結果は画像にできません", "format")
        result.figure(run.out, int(run.config.get("export_dpi", 150)))  # type: ignore[arg-type]
        return
    if run.fmt == "xlsx":
        export_workbook(result.tables, run.out)  # type: ignore[arg-type]
        return

    if run.fmt == "json":
        text = dumps(result.data)
    elif run.fmt == "dot":
        text = result.dot or ""
    else:
        text = result.table_text()

    if run.out is not None:
        write_output(text, run.out)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    """
    CLI のエントリーポイント

    Returns:
        int: 終了コード
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.debug:
        set_level(logging.DEBUG)
    elif args.verbose:
        set_level(logging.INFO)

    try:
        config = validate_config(load_config())
        run = RunConfig.from_args(args, config)
        logger.info("コマンド %s を実行します (形式: %s)", run.command, run.fmt)
        result = COMMANDS[run.command](run)
        _emit(result, run)
    except BLTException as e:
        logger.error("%s", e)
        print(f"エラー: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        log_exception(e, "予期せぬエラーが発生しました")
        print(f"内部エラー: {e}", file=sys.stderr)
        return EXIT_FAILURE

    return EXIT_OK if result.ok else EXIT_FAILURE
