#!/usr/bin/env python3
"""
メアンダーと交わりモジュール

2つのリンクパターンを上下に重ねたメアンダー M_{σ,σ'} の成分分解と分類、
ランク行列の最小値 R_{σ,σ'} による軌道閉包の交わりの既約成分、
余次元 1 の判定条件、Temperley–Lieb 内積の指数、可約性の十分条件を扱います。
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

import networkx as nx
import numpy as np

from core.exceptions import ShapeMismatchError, SizeMismatchError
from core.logger import get_logger
from core.order import RankMatrix, below_mask, is_rank2_matrix, maximal_indices, rank_matrix, rank_stack
from core.patterns import DEFAULT_ENUMERATION_CAP, Arc, Involution, canonical_key, check_cap, dimension
from core.tableaux import (
    TwoColumnTableau,
    descent_set,
    enumerate_tableaux,
    maximal_orbit_dim,
    sigma_of_tableau,
)

# モジュール用のロガーを初期化
logger = get_logger("meanders")

TOP = "t"
BOTTOM = "b"


class _UnionFind:
    """点 1..n 上の素集合データ構造（経路圧縮と大きさによる併合）"""

    def __init__(self, size: int):
        self.parents: list[int | None] = [None] * (size + 1)
        self.weights = [1] * (size + 1)

    def find(self, i: int) -> int:
        root = i
        while self.parents[root] is not None:
            root = self.parents[root]  # type: ignore[assignment]
        while i != root:
            nxt = self.parents[i]
            self.parents[i] = root
            i = nxt  # type: ignore[assignment]
        return root

    def merge(self, i: int, j: int) -> None:
        i, j = self.find(i), self.find(j)
        if i == j:
            return
        if self.weights[i] < self.weights[j]:
            i, j = j, i
        self.parents[j] = i
        self.weights[i] += self.weights[j]


class ComponentKind(str, Enum):
    LOOP = "loop"
    INTERVAL = "interval"


@dataclass(frozen=True)
class MeanderComponent:
    """上下のアークを交互に辿った経路。arcs は ("t" | "b", アーク) の並び"""

    kind: ComponentKind
    arcs: tuple[tuple[str, Arc], ...]

    @property
    def length(self) -> int:
        return len(self.arcs)

    @property
    def points(self) -> list[int]:
        return sorted({p for _, arc in self.arcs for p in arc})


@dataclass(frozen=True)
class Meander:
    n: int
    top: Involution
    bottom: Involution
    components: tuple[MeanderComponent, ...]
    isolated: tuple[int, ...]

    @property
    def loops(self) -> list[MeanderComponent]:
        return [c for c in self.components if c.kind is ComponentKind.LOOP]

    @property
    def intervals(self) -> list[MeanderComponent]:
        return [c for c in self.components if c.kind is ComponentKind.INTERVAL]


def _walk(start: int, side: str, top: Involution, bottom: Involution) -> list[tuple[str, Arc]]:
    patterns = {TOP: top, BOTTOM: bottom}
    arcs: list[tuple[str, Arc]] = []
    point = start
    while True:
        sigma = patterns[side]
        if sigma.is_fixed(point):
            break
        other = sigma.partner(point)
        arcs.append((side, (min(point, other), max(point, other))))
        point = other
        side = BOTTOM if side == TOP else TOP
        if point == start:
            break
    return arcs


def build_meander(top: Involution, bottom: Involution) -> Meander:
    """
    M_{top,bottom} を作る

    端点を素集合で束ねて連結成分を求め、すべての点が上下両方のアークを持つ成分を
    ループ、それ以外を区間とします。区間は次数 1 の最小の点から、ループは最小の点から
    上のアークを先にして辿ります。

    Raises:
        SizeMismatchError: n が異なる場合
    """
    if top.n != bottom.n:
        raise SizeMismatchError(top.n, bottom.n)
    n = top.n

    groups = _UnionFind(n)
    for i, j in (*top.arcs, *bottom.arcs):
        groups.merge(i, j)

    members: dict[int, list[int]] = defaultdict(list)
    for p in range(1, n + 1):
        members[groups.find(p)].append(p)

    components = []
    isolated = []
    for points in members.values():
        degree = {p: int(not top.is_fixed(p)) + int(not bottom.is_fixed(p)) for p in points}
        if len(points) == 1 and degree[points[0]] == 0:
            isolated.append(points[0])
            continue
        ends = [p for p in points if degree[p] == 1]
        if not ends:
            start = min(points)
            components.append(MeanderComponent(ComponentKind.LOOP, tuple(_walk(start, TOP, top, bottom))))
        else:
            start = min(ends)
            side = BOTTOM if top.is_fixed(start) else TOP
            components.append(MeanderComponent(ComponentKind.INTERVAL, tuple(_walk(start, side, top, bottom))))

    components.sort(key=lambda c: c.points[0])
    return Meander(n=n, top=top, bottom=bottom, components=tuple(components), isolated=tuple(sorted(isolated)))


@dataclass(frozen=True)
class MeanderClass:
    even: bool
    loops: int
    odd_intervals: int
    even_intervals: int


def classify_meander(meander: Meander) -> MeanderClass:
    """ループと区間を数える。孤立点は長さ 0 の偶区間として数える"""
    odd = sum(1 for c in meander.intervals if c.length % 2 == 1)
    even = len(meander.intervals) - odd + len(meander.isolated)
    return MeanderClass(even=odd == 0, loops=len(meander.loops), odd_intervals=odd, even_intervals=even)


def meander_of_tableaux(first: TwoColumnTableau, second: TwoColumnTableau) -> Meander:
    """M_{S,T}: σ_S を上、σ_T を下に描いたメアンダー"""
    _check_shapes(first, second)
    return build_meander(sigma_of_tableau(first), sigma_of_tableau(second))


# ---------------------------------------------------------------------------
# 交わり
# ---------------------------------------------------------------------------


def intersection_matrix(a: Involution, b: Involution) -> RankMatrix:
    """R_{a,b} = min(R_a, R_b)（成分ごと）"""
    if a.n != b.n:
        raise SizeMismatchError(a.n, b.n)
    return rank_matrix(a).minimum(rank_matrix(b))


@dataclass(frozen=True)
class IntersectionComponent:
    involution: Involution
    dim: int
    codim_a: int
    codim_b: int


@dataclass(frozen=True)
class IntersectionReport:
    """B̄_a ∩ B̄_b の既約成分"""

    a: Involution
    b: Involution
    restrict_k: int | None
    min_matrix: RankMatrix
    components: tuple[IntersectionComponent, ...]

    @property
    def irreducible(self) -> bool:
        return len(self.components) == 1

    @property
    def min_matrix_in_rank2(self) -> bool:
        return is_rank2_matrix(self.min_matrix)


def intersect(
    a: Involution,
    b: Involution,
    restrict_k: int | None = None,
    *,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> IntersectionReport:
    """
    B̄_a ∩ B̄_b を軌道の和に分解し、≼ に関して極大なものを成分として返す

    restrict_k を指定すると長さ restrict_k の軌道だけを候補にします
    （同じ長さの軌道多様体どうしの交わり）。成分は次元の降順に並びます。

    Raises:
        SizeMismatchError: n が異なる場合
        ResourceCapError: n が全列挙の上限を超える場合
        ValueError: restrict_k が 0..n/2 の外にある場合
    """
    bound = intersection_matrix(a, b)
    n = a.n
    check_cap(n, cap)
    if restrict_k is not None and not 0 <= 2 * restrict_k <= n:
        raise ValueError(f"k は 0 <= k <= n/2 を満たす必要があります: n={n}, k={restrict_k}")

    involutions, stack = rank_stack(n, restrict_k)
    candidates = np.flatnonzero(below_mask(stack, bound))
    maximal = [int(candidates[idx]) for idx in maximal_indices(stack[candidates])]

    dim_a, dim_b = dimension(a), dimension(b)
    components = sorted(
        (
            IntersectionComponent(
                involution=involutions[idx],
                dim=dimension(involutions[idx]),
                codim_a=dim_a - dimension(involutions[idx]),
                codim_b=dim_b - dimension(involutions[idx]),
            )
            for idx in maximal
        ),
        key=lambda c: (-c.dim, canonical_key(c.involution)),
    )
    logger.debug("%s ∩ %s: 候補 %d, 成分 %d", a, b, len(candidates), len(components))
    return IntersectionReport(a=a, b=b, restrict_k=restrict_k, min_matrix=bound, components=tuple(components))


def _check_shapes(first: TwoColumnTableau, second: TwoColumnTableau) -> None:
    if first.n != second.n or first.k != second.k:
        raise ShapeMismatchError(first.shape, second.shape)


def codim1_criterion(first: TwoColumnTableau, second: TwoColumnTableau) -> bool:
    """M_{S,T} が k-1 個のループを持つ偶メアンダーか"""
    kind = classify_meander(meander_of_tableaux(first, second))
    return kind.even and kind.loops == first.k - 1


def tl_inner_exponent(first: TwoColumnTableau, second: TwoColumnTableau) -> int | None:
    """⟨P_S, P_T⟩ = δ^r の r。奇メアンダーなら内積は 0 なので None"""
    kind = classify_meander(meander_of_tableaux(first, second))
    return kind.loops if kind.even else None


def fung_codim(first: TwoColumnTableau, second: TwoColumnTableau) -> int | None:
    """2行側（転置側）の余次元 k - r。奇メアンダーなら None"""
    exponent = tl_inner_exponent(first, second)
    return None if exponent is None else first.k - exponent


def intersection_codim(
    first: TwoColumnTableau, second: TwoColumnTableau, *, cap: int = DEFAULT_ENUMERATION_CAP
) -> int:
    """V_S ∩ V_T の V_S における余次元（最大成分の次元で測る）"""
    _check_shapes(first, second)
    report = intersect(sigma_of_tableau(first), sigma_of_tableau(second), first.k, cap=cap)
    return maximal_orbit_dim(first.n, first.k) - max(c.dim for c in report.components)


def one_segments(a: Involution, b: Involution) -> list[Arc]:
    """R_{a,b} が 1 となる極小な区間 [i, j] を左端点の順に返す"""
    bound = intersection_matrix(a, b)
    return [
        (i, j)
        for i in range(1, a.n + 1)
        for j in range(i + 1, a.n + 1)
        if bound.at(i, j) == 1 and bound.at(i + 1, j) == 0 and bound.at(i, j - 1) == 0
    ]


def reducibility_sufficient(first: TwoColumnTableau, second: TwoColumnTableau) -> bool:
    """
    隣り合う 1-区間が端点を共有するか、重なっていて両者を覆う区間でも
    R_{S,T} = 1 であれば V_S ∩ V_T は可約
    """
    _check_shapes(first, second)
    a, b = sigma_of_tableau(first), sigma_of_tableau(second)
    bound = intersection_matrix(a, b)
    segments = one_segments(a, b)
    for (i_s, j_s), (i_next, j_next) in zip(segments, segments[1:]):
        if i_next == j_s:
            return True
        if i_next < j_s and bound.at(i_s, j_next) == 1:
            return True
    return False


def w_graph(n: int, k: int) -> nx.Graph:
    """
    形 (n-k, k)* のタブローを節点とし、交わりが余次元 1 の組を辺で結んだグラフ

    各節点は descents 属性に降下集合を持ちます。
    """
    tableaux = enumerate_tableaux(n, k)
    graph = nx.Graph()
    for tableau in tableaux:
        graph.add_node(tableau, descents=sorted(descent_set(tableau)), label=",".join(map(str, tableau.col2)))
    graph.add_edges_from((s, t) for s, t in combinations(tableaux, 2) if codim1_criterion(s, t))
    logger.debug("W グラフ n=%d, k=%d: 節点 %d, 辺 %d", n, k, graph.number_of_nodes(), graph.number_of_edges())
    return graph
