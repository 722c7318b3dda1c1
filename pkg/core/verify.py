#!/usr/bin/env python3
"""
検証モジュール

小さい n について、次元公式・閉包・被覆・タブロー・メアンダーの各判定を
独立した計算と突き合わせる検査を実行します。失敗は例外ではなく結果として報告します。
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from functools import partial
from itertools import combinations_with_replacement, product
from typing import Any

import numpy as np
import pandas as pd

from core.logger import get_logger, log_timing
from core.meanders import (
    codim1_criterion,
    fung_codim,
    intersect,
    intersection_codim,
    reducibility_sufficient,
    tl_inner_exponent,
    w_graph,
)
from core.order import (
    RankMatrix,
    closure,
    closure_by_filter,
    cover_C,
    is_rank2_matrix,
    leq,
    maximal_indices,
    rank_matrix,
    rank_stack,
    sigma_bar,
    sigma_bar_next,
)
from core.patterns import (
    Involution,
    count_involutions,
    dim_via_pattern,
    dim_via_q,
    dimension,
    enumerate_involutions,
    external_max_arcs,
    is_maximal,
    matrix_N,
    project,
)
from core.tableaux import (
    closure_tableaux,
    closure_tableaux_via_external_arcs,
    descent_set,
    descent_set_via_sigma,
    enumerate_tableaux,
    maximal_orbit_dim,
    shape_allows_swap,
    sigma_of_tableau,
    tableau_count,
    tableau_of_sigma,
    u_move,
)

logger = get_logger("verify")

DimFunction = Callable[[Involution], int]

MAX_REPORTED_EXAMPLES = 5


@dataclass
class CheckResult:
    name: str
    n: int
    cases: int = 0
    failures: int = 0
    examples: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, detail: Callable[[], str]) -> None:
        self.cases += 1
        if not ok:
            self.failures += 1
            if len(self.examples) < MAX_REPORTED_EXAMPLES:
                self.examples.append(detail())


@dataclass
class VerificationReport:
    n_min: int
    n_max: int
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(result.passed for result in self.results)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "check": [r.name for r in self.results],
                "n": [r.n for r in self.results],
                "cases": [r.cases for r in self.results],
                "failures": [r.failures for r in self.results],
                "status": ["ok" if r.passed else "FAIL" for r in self.results],
            }
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "n_min": self.n_min,
            "n_max": self.n_max,
            "passed": self.passed,
            "checks": [
                {"name": r.name, "n": r.n, "cases": r.cases, "failures": r.failures, "examples": r.examples}
                for r in self.results
            ],
        }


# ---------------------------------------------------------------------------
# 個々の検査
# ---------------------------------------------------------------------------


def check_dim_equivalence(
    n: int,
    *,
    dim_q: DimFunction = dim_via_q,
    dim_pattern: DimFunction = dim_via_pattern,
) -> CheckResult:
    result = CheckResult("dim_equivalence", n)
    for sigma in enumerate_involutions(n, cap=n):
        q, p = dim_q(sigma), dim_pattern(sigma)
        result.record(q == p, lambda s=sigma, q=q, p=p: f"{s}: q={q}, pattern={p}")
    return result


def check_involution_count(n: int) -> CheckResult:
    result = CheckResult("involution_count", n)
    found = len(enumerate_involutions(n, cap=n))
    result.record(found == count_involutions(n), lambda: f"列挙 {found} 個, 漸化式 {count_involutions(n)} 個")
    return result


def check_n_matrix(n: int) -> CheckResult:
    result = CheckResult("n_matrix_rank", n)
    for sigma in enumerate_involutions(n, cap=n):
        matrix = matrix_N(sigma)
        rank = int(np.linalg.matrix_rank(matrix.entries.astype(float))) if sigma.arcs else 0
        ok = rank == sigma.length and matrix.square_is_zero() and matrix.ones() == list(sigma.arcs)
        result.record(ok, lambda s=sigma, r=rank: f"{s}: rank={r}")
    return result


def check_rank2_exactness(n: int) -> CheckResult:
    """上限 ⌊n/2⌋ の狭義上三角行列すべてについて、is_rank2_matrix の判定がランク行列の集合と一致するか"""
    result = CheckResult("rank2_exactness", n)
    expected = {rank_matrix(sigma) for sigma in enumerate_involutions(n, cap=n)}
    positions = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for values in product(range(n // 2 + 1), repeat=len(positions)):
        entries = np.zeros((n, n), dtype=np.int64)
        for (i, j), value in zip(positions, values):
            entries[i, j] = value
        entries.setflags(write=False)
        candidate = RankMatrix(n, entries)
        accepted = is_rank2_matrix(candidate)
        result.record(accepted == (candidate in expected), lambda c=candidate, a=accepted: f"{c.to_rows()}: {a}")
    return result


def check_closure(n: int) -> CheckResult:
    result = CheckResult("closure_soundness", n)
    for sigma in enumerate_involutions(n, cap=n):
        via_moves, via_filter = set(closure(sigma, cap=n)), set(closure_by_filter(sigma, cap=n))
        result.record(via_moves == via_filter, lambda s=sigma: f"{s}: 被覆による閉包とフィルタが一致しません")
    return result


def check_cover_codimension(n: int) -> CheckResult:
    result = CheckResult("cover_codimension", n)
    for sigma in enumerate_involutions(n, cap=n):
        for lower in cover_C(sigma).members:
            gap = dimension(sigma) - dimension(lower)
            result.record(gap == 1, lambda s=sigma, t=lower, g=gap: f"{s} → {t}: 余次元 {g}")
    return result


def check_cover_maximality(n: int) -> CheckResult:
    result = CheckResult("cover_maximality", n)
    involutions, stack = rank_stack(n)
    for idx, sigma in enumerate(involutions):
        below = [
            other for other in range(len(involutions)) if other != idx and np.all(stack[other] <= stack[idx])
        ]
        expected = {involutions[below[m]] for m in maximal_indices(stack[below])} if below else set()
        members = set(cover_C(sigma).members)
        result.record(members == expected, lambda s=sigma: f"{s}: C(σ) が真下の極大元と一致しません")
    return result


def check_sigma_bar(n: int) -> CheckResult:
    result = CheckResult("sigma_bar_construction", n)
    for sigma in enumerate_involutions(n, cap=n):
        if 2 * (sigma.length + 1) > n:
            continue
        built, scanned = sigma_bar_next(sigma), sigma_bar(sigma, sigma.length + 1, cap=n)
        gap = dimension(built) - dimension(sigma)
        ok = built == scanned and gap == len(external_max_arcs(sigma)) + 1
        result.record(ok, lambda s=sigma, b=built, c=scanned, g=gap: f"{s}: 構成 {b}, 走査 {c}, 次元差 {g}")
    return result


def check_tableaux(n: int) -> CheckResult:
    """タブローの個数、最大次元軌道との全単射、閉包の2通りの計算、降下集合と u_i"""
    result = CheckResult("tableaux", n)
    for k in range(n // 2 + 1):
        tableaux = enumerate_tableaux(n, k)
        result.record(len(tableaux) == tableau_count(n, k), lambda k=k: f"k={k}: 個数が公式と一致しません")

        maximal = {s for s in enumerate_involutions(n, k, cap=n) if is_maximal(s)}
        sigmas = {sigma_of_tableau(t) for t in tableaux}
        result.record(sigmas == maximal, lambda k=k: f"k={k}: σ_T と最大次元軌道が対応しません")

        for tableau in tableaux:
            sigma = sigma_of_tableau(tableau)
            ok = tableau_of_sigma(sigma) == tableau and dimension(sigma) == maximal_orbit_dim(n, k)
            ok = ok and descent_set(tableau) == descent_set_via_sigma(tableau)
            if k >= 1:
                ok = ok and closure_tableaux(tableau) == closure_tableaux_via_external_arcs(tableau)
            result.record(ok, lambda t=tableau: f"col2={t.col2}: σ_T または閉包・降下集合が一致しません")

            for i in range(1, n):
                if i in descent_set(tableau):
                    continue
                moved = u_move(tableau, i)
                if moved is None:
                    continue
                first = next(p for p in moved.col2 if p not in tableau.col2)
                second = next(p for p in tableau.col2 if p not in moved.col2)
                ok = i in descent_set(moved) and shape_allows_swap(tableau, first, second)
                result.record(ok, lambda t=tableau, i=i: f"col2={t.col2}, i={i}: u_i が不正です")
    return result


def check_codim_one(n: int) -> CheckResult:
    """余次元 1 ⟺ k-1 個のループを持つ偶メアンダー、かつそのとき既約"""
    result = CheckResult("codim_one_equivalence", n)
    for k in range(1, n // 2 + 1):
        for first, second in combinations_with_replacement(enumerate_tableaux(n, k), 2):
            report = intersect(sigma_of_tableau(first), sigma_of_tableau(second), k, cap=n)
            codim = maximal_orbit_dim(n, k) - max(c.dim for c in report.components)
            criterion = codim1_criterion(first, second)
            ok = (codim == 1) == criterion and (not criterion or report.irreducible)
            result.record(ok, lambda s=first, t=second, c=codim: f"{s.col2} / {t.col2}: 余次元 {c}")
    return result


def check_reducibility(n: int) -> CheckResult:
    result = CheckResult("reducibility_soundness", n)
    for k in range(1, n // 2 + 1):
        for first, second in combinations_with_replacement(enumerate_tableaux(n, k), 2):
            if not reducibility_sufficient(first, second):
                continue
            report = intersect(sigma_of_tableau(first), sigma_of_tableau(second), k, cap=n)
            count = len(report.components)
            result.record(count >= 2, lambda s=first, t=second, c=count: f"{s.col2} / {t.col2}: 成分 {c} 個")
    return result


def check_projection(n: int) -> CheckResult:
    """
    (R_{π_{i,j}(σ)})_{s,t} = (R_σ)_{max(i,s),min(j,t)} と、π_{i,j} が ≼ を保つこと

    単調性は被覆の組 (σ, τ ∈ C(σ)) で確かめます。
    """
    result = CheckResult("projection", n)
    points = np.arange(1, n + 1)
    rows, cols = np.meshgrid(points, points, indexing="ij")
    for sigma in enumerate_involutions(n, cap=n):
        entries = rank_matrix(sigma).padded()
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                projected = project(sigma, i, j)
                expected = entries[np.maximum(i, rows), np.minimum(j, cols)]
                ok = np.array_equal(rank_matrix(projected).entries, expected)
                ok = ok and all(leq(project(lower, i, j), projected) for lower in cover_C(sigma).members)
                result.record(ok, lambda s=sigma, i=i, j=j: f"{s}: π_{{{i},{j}}} のランク行列または順序が不正です")
    return result


def check_intersections(n: int) -> CheckResult:
    """
    交わりの構造

    すべての組で「既約 ⟺ R_{a,b} がランク行列」。長さ k の組では、
    長さ k に制限した交わりが空でなく、制限しない交わりの成分もすべて長さ k。
    """
    result = CheckResult("intersection_structure", n)
    involutions = enumerate_involutions(n, cap=n)
    for a, b in combinations_with_replacement(involutions, 2):
        report = intersect(a, b, cap=n)
        ok = report.irreducible == report.min_matrix_in_rank2
        if a.length == b.length:
            lengths = {c.involution.length for c in report.components}
            ok = ok and lengths == {a.length} and bool(intersect(a, b, a.length, cap=n).components)
        result.record(ok, lambda a=a, b=b, r=report: f"{a} ∩ {b}: 成分 {[str(c.involution) for c in r.components]}")
    return result


def check_meander_oracles(n: int) -> CheckResult:
    """奇メアンダーでも交わりは空でなく、TL の指数が k-1 なら余次元 1 の判定が真"""
    result = CheckResult("meander_oracles", n)
    for k in range(1, n // 2 + 1):
        for first, second in combinations_with_replacement(enumerate_tableaux(n, k), 2):
            exponent = tl_inner_exponent(first, second)
            if exponent is None:
                report = intersect(sigma_of_tableau(first), sigma_of_tableau(second), k, cap=n)
                ok = fung_codim(first, second) is None and bool(report.components)
            else:
                ok = exponent != k - 1 or codim1_criterion(first, second)
            result.record(ok, lambda s=first, t=second, r=exponent: f"{s.col2} / {t.col2}: 指数 {r}")
    return result


def check_u_moves(n: int) -> CheckResult:
    """
    i ∉ I(T) で u_i(T) があれば、V_T ∩ V_{u_i(T)} は余次元 1 で、
    u_i(T) は W グラフで T の隣のうち i ∈ I(S) となる唯一の S
    """
    result = CheckResult("u_move_codim_one", n)
    for k in range(1, n // 2 + 1):
        graph = w_graph(n, k)
        for tableau in graph.nodes:
            for i in range(1, n):
                if i in descent_set(tableau):
                    continue
                moved = u_move(tableau, i)
                if moved is None:
                    continue
                neighbours = [s for s in graph.neighbors(tableau) if i in graph.nodes[s]["descents"]]
                ok = intersection_codim(tableau, moved, cap=n) == 1 and neighbours == [moved]
                result.record(ok, lambda t=tableau, i=i, u=moved: f"col2={t.col2}, i={i}: u_i={u.col2}")
    return result


def default_checks(
    *,
    dim_q: DimFunction = dim_via_q,
    dim_pattern: DimFunction = dim_via_pattern,
) -> dict[str, Callable[[int], CheckResult]]:
    """検査名と検査関数の対応。次元公式は差し替え可能"""
    return {
        "dim_equivalence": partial(check_dim_equivalence, dim_q=dim_q, dim_pattern=dim_pattern),
        "involution_count": check_involution_count,
        "n_matrix_rank": check_n_matrix,
        "rank2_exactness": check_rank2_exactness,
        "closure_soundness": check_closure,
        "cover_codimension": check_cover_codimension,
        "cover_maximality": check_cover_maximality,
        "sigma_bar_construction": check_sigma_bar,
        "tableaux": check_tableaux,
        "codim_one_equivalence": check_codim_one,
        "reducibility_soundness": check_reducibility,
        "projection": check_projection,
        "intersection_structure": check_intersections,
        "meander_oracles": check_meander_oracles,
        "u_move_codim_one": check_u_moves,
    }


def run_verification(
    n_min: int,
    n_max: int,
    *,
    config: dict[str, Any] | None = None,
    dim_q: DimFunction = dim_via_q,
    dim_pattern: DimFunction = dim_via_pattern,
    checks: dict[str, Callable[[int], CheckResult]] | None = None,
) -> VerificationReport:
    """
    n_min..n_max の各 n について検査を実行する

    rank2_exactness は設定の rank2_exhaustive_max_n 以下の n でだけ実行します。
    """
    config = config or {}
    rank2_max = int(config.get("rank2_exhaustive_max_n", 5))
    checks = checks if checks is not None else default_checks(dim_q=dim_q, dim_pattern=dim_pattern)

    report = VerificationReport(n_min=n_min, n_max=n_max)
    for n in range(n_min, n_max + 1):
        for name, check in checks.items():
            if name == "rank2_exactness" and n > rank2_max:
                continue
            with log_timing(logger, f"検査 {name} (n={n})") as timing:
                result = check(n)
            report.results.append(result)
            level = logger.info if result.passed else logger.warning
            level(
                "検査 %s (n=%d): %d 件中 %d 件失敗 (%.2f 秒)", name, n, result.cases, result.failures, timing.elapsed
            )
    return report
