#!/usr/bin/env python3
"""
閉包順序モジュール

ランク行列 R_σ による順序 ≼、ランク行列の判定条件、軌道閉包、
被覆集合 N(σ) / D(σ) / C(σ)、軌道の半順序集合（ハッセ図）と
各長さの最小元を扱います。
"""

from __future__ import annotations

from collections import defaultdict, deque
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache

import networkx as nx
import numpy as np

from core.exceptions import NoFixedPointsError, NotUniqueError, SizeMismatchError
from core.logger import get_logger, log_timing
from core.patterns import (
    DEFAULT_ENUMERATION_CAP,
    Arc,
    Involution,
    arcs_over_arc,
    arcs_over_point,
    canonical_key,
    check_cap,
    dimension,
    enumerate_involutions,
    external_arcs,
    external_max_arcs,
    matrix_N,
)

# モジュール用のロガーを初期化
logger = get_logger("order")


@dataclass(frozen=True, eq=False)
class RankMatrix:
    """
    R_σ: (i, j) 成分が [i, j] に含まれるアークの本数である n×n 行列

    entries は 0 始まりで保持し、at() で 1 始まりの添字を受け付けます。
    範囲外の添字（0 や n+1）は 0 として扱います。
    """

    n: int
    entries: np.ndarray

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> RankMatrix:
        entries = np.asarray(rows, dtype=np.int64)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError(f"正方行列が必要です: shape={entries.shape}")
        entries.setflags(write=False)
        return cls(int(entries.shape[0]), entries)

    def at(self, i: int, j: int) -> int:
        if 1 <= i <= self.n and 1 <= j <= self.n:
            return int(self.entries[i - 1, j - 1])
        return 0

    def padded(self) -> np.ndarray:
        """添字 0..n+1 を直接使えるよう周囲を 0 で囲んだ行列"""
        padded = np.zeros((self.n + 2, self.n + 2), dtype=np.int64)
        padded[1 : self.n + 1, 1 : self.n + 1] = self.entries
        return padded

    def minimum(self, other: RankMatrix) -> RankMatrix:
        _check_same_size(self.n, other.n)
        entries = np.minimum(self.entries, other.entries)
        entries.setflags(write=False)
        return RankMatrix(self.n, entries)

    def to_rows(self) -> list[list[int]]:
        return [[int(v) for v in row] for row in self.entries]

    def __le__(self, other: RankMatrix) -> bool:
        _check_same_size(self.n, other.n)
        return bool(np.all(self.entries <= other.entries))

    def __ge__(self, other: RankMatrix) -> bool:
        return other.__le__(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RankMatrix):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((self.n, self.entries.tobytes()))


def _check_same_size(n_left: int, n_right: int) -> None:
    if n_left != n_right:
        raise SizeMismatchError(n_left, n_right)


@lru_cache(maxsize=65536)
def rank_matrix(sigma: Involution) -> RankMatrix:
    """
    (R_σ)_{i,j} = #{(i', j') ∈ σ : i ≤ i', j' ≤ j}

    N_σ を下から行方向に累積し、さらに列方向に累積して求めます。
    """
    ones = matrix_N(sigma).entries.astype(np.int64)
    from_below = np.cumsum(ones[::-1, :], axis=0)[::-1, :]
    entries = np.cumsum(from_below, axis=1)
    entries.setflags(write=False)
    return RankMatrix(sigma.n, entries)


def leq(a: Involution, b: Involution) -> bool:
    """a ≼ b ⟺ R_a ≤ R_b（成分ごと）"""
    _check_same_size(a.n, b.n)
    return rank_matrix(a) <= rank_matrix(b)


def strictly_below(a: Involution, b: Involution) -> bool:
    return a != b and leq(a, b)


def is_rank2_matrix(matrix: RankMatrix) -> bool:
    """
    行列が何らかの対合のランク行列かどうかを判定する

    (i) 対角以下が 0、(ii) 隣接成分の差が 0 か 1、
    (iii) 角 (i, j) で R_{ij} = R_{i+1,j}+1 = R_{i,j-1}+1 = R_{i+1,j-1}+1 が成り立つなら
    (a) 行 i は列 j 以降でだけ行 i+1 より 1 大きい
    (b) 列 j は行 i 以前でだけ列 j-1 より 1 大きい
    (c) 行 j と行 j+1、列 i と列 i-1 が一致する
    """
    n = matrix.n
    if np.any(matrix.entries < 0):
        return False
    if np.any(np.tril(matrix.entries) != 0):
        return False

    padded = matrix.padded()
    points = np.arange(1, n + 1)

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            value = padded[i, j]
            below, left = padded[i + 1, j], padded[i, j - 1]
            if not (below <= value <= below + 1 and left <= value <= left + 1):
                return False

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            value = padded[i, j]
            if not (value == padded[i + 1, j] + 1 == padded[i, j - 1] + 1 == padded[i + 1, j - 1] + 1):
                continue
            row_step = padded[i, 1 : n + 1] - padded[i + 1, 1 : n + 1]
            if not np.array_equal(row_step, (points >= j).astype(np.int64)):
                return False
            col_step = padded[1 : n + 1, j] - padded[1 : n + 1, j - 1]
            if not np.array_equal(col_step, (points <= i).astype(np.int64)):
                return False
            if not np.array_equal(padded[j, 1 : n + 1], padded[j + 1, 1 : n + 1]):
                return False
            if not np.array_equal(padded[1 : n + 1, i], padded[1 : n + 1, i - 1]):
                return False

    return True


@lru_cache(maxsize=256)
def rank_stack(n: int, k: int | None = None) -> tuple[tuple[Involution, ...], np.ndarray]:
    """長さ k（None なら全長）の対合と、そのランク行列を積み重ねた (m, n, n) 配列"""
    involutions = tuple(enumerate_involutions(n, k, cap=max(n, DEFAULT_ENUMERATION_CAP)))
    stack = np.stack([rank_matrix(sigma).entries for sigma in involutions])
    stack.setflags(write=False)
    return involutions, stack


def below_mask(stack: np.ndarray, bound: RankMatrix) -> np.ndarray:
    return np.all(stack <= bound.entries, axis=(1, 2))


def maximal_indices(stack: np.ndarray) -> list[int]:
    """積み重ねたランク行列のうち、他のどれよりも真に小さくはならないものの添字"""
    maximal = []
    for idx in range(stack.shape[0]):
        dominated = np.all(stack[idx] <= stack, axis=(1, 2)) & np.any(stack[idx] < stack, axis=(1, 2))
        if not dominated.any():
            maximal.append(idx)
    return maximal


# ---------------------------------------------------------------------------
# 基本操作
# ---------------------------------------------------------------------------


def delete_arc(sigma: Involution, arc: Arc) -> Involution:
    """σ⁻_{(i,j)}: アークを1本消す"""
    return sigma.with_arcs(a for a in sigma.arcs if a != arc)


def move_endpoint(sigma: Involution, source: int, target: int) -> Involution:
    """σ_{source→target}: 端点 source を固定点 target に付け替える"""
    partner = sigma.partner(source)
    arcs = [a for a in sigma.arcs if source not in a]
    arcs.append((target, partner))
    return sigma.with_arcs(arcs)


def swap_endpoints(sigma: Involution, a: int, b: int) -> Involution:
    """σ_{a⇄b}: 点 a と b の役割を入れ替える"""

    def swap(p: int) -> int:
        if p == a:
            return b
        if p == b:
            return a
        return p

    return sigma.with_arcs((swap(i), swap(j)) for i, j in sigma.arcs)


def shift_left(sigma: Involution, arc: Arc) -> Involution | None:
    """左端点を、それより左で最も近い固定点 m まで動かす（↶）"""
    i = arc[0]
    candidates = [p for p in sigma.fixed_points if p < i]
    if not candidates:
        return None
    m = candidates[-1]
    if not set(arcs_over_arc(sigma, arc)) <= set(arcs_over_point(sigma, m)):
        return None
    return move_endpoint(sigma, i, m)


def shift_right(sigma: Involution, arc: Arc) -> Involution | None:
    """右端点を、それより右で最も近い固定点 m まで動かす（↷）"""
    j = arc[1]
    candidates = [p for p in sigma.fixed_points if p > j]
    if not candidates:
        return None
    m = candidates[0]
    if not set(arcs_over_arc(sigma, arc)) <= set(arcs_over_point(sigma, m)):
        return None
    return move_endpoint(sigma, j, m)


def left_cross_partners(sigma: Involution, arc: Arc) -> list[Arc]:
    """
    L_{(i,j)}(σ): 左側のアーク (i_s, j_s) で、j_s と i の間の点がすべて
    [i_s, j] に含まれるアークの端点になっているもの
    """
    i, j = arc
    partners = []
    for left in sigma.arcs:
        i_s, j_s = left
        if j_s >= i:
            continue
        inner = {p for a in sigma.arcs if i_s <= a[0] and a[1] <= j for p in a}
        if all(p in inner for p in range(j_s + 1, i)):
            partners.append(left)
    return partners


def concentric_partners(sigma: Involution, arc: Arc) -> list[Arc]:
    """
    Ov_{(i,j)}(σ): arc を含むアーク (i_s, j_s) のうち、両者の間に挟まるアーク
    （i_s < a < i かつ j < b < j_s）が無いもの
    """
    i, j = arc
    partners = []
    for outer in arcs_over_arc(sigma, arc):
        i_s, j_s = outer
        if not any(i_s < a < i and j < b < j_s for a, b in sigma.arcs):
            partners.append(outer)
    return partners


# ---------------------------------------------------------------------------
# 被覆集合
# ---------------------------------------------------------------------------


class MoveKind(str, Enum):
    """D(σ) を生成する移動の種類"""

    LEFT_SHRINK = "left-shrink"
    RIGHT_SHRINK = "right-shrink"
    LEFT_CROSS = "left-cross"
    CONCENTRIC_CROSS = "concentric-cross"


@dataclass(frozen=True)
class Move:
    kind: MoveKind
    arcs: tuple[Arc, ...]


@dataclass(frozen=True)
class DMove:
    """D(σ) の元と、それを生成した移動の一覧"""

    target: Involution
    provenance: tuple[Move, ...]


@dataclass(frozen=True)
class CoverSet:
    """C(σ) = D(σ) ⊔ {E_max のアークを消したもの}"""

    source: Involution
    d_moves: tuple[DMove, ...] = ()
    n_moves: tuple[Involution, ...] = ()

    @property
    def members(self) -> list[Involution]:
        return sorted([move.target for move in self.d_moves] + list(self.n_moves), key=canonical_key)


def cover_N(sigma: Involution) -> list[Involution]:
    """N(σ): 外部アークを1本消したもの"""
    return [delete_arc(sigma, arc) for arc in external_arcs(sigma)]


def _d_move_candidates(sigma: Involution) -> Iterable[tuple[Involution, Move]]:
    for arc in sigma.arcs:
        moved = shift_left(sigma, arc)
        if moved is not None:
            yield moved, Move(MoveKind.LEFT_SHRINK, (arc,))
        moved = shift_right(sigma, arc)
        if moved is not None:
            yield moved, Move(MoveKind.RIGHT_SHRINK, (arc,))
        for left in left_cross_partners(sigma, arc):
            yield swap_endpoints(sigma, left[1], arc[0]), Move(MoveKind.LEFT_CROSS, (left, arc))
        for outer in concentric_partners(sigma, arc):
            yield swap_endpoints(sigma, outer[0], arc[0]), Move(MoveKind.CONCENTRIC_CROSS, (outer, arc))


def cover_D(sigma: Involution) -> tuple[DMove, ...]:
    """
    D(σ): 同じ長さで余次元 1 の元

    4種類の移動の結果を合わせ、同じ結果は1つにまとめて生成元を併記します。
    """
    provenance: dict[Involution, list[Move]] = defaultdict(list)
    for target, move in _d_move_candidates(sigma):
        provenance[target].append(move)
    return tuple(
        DMove(target, tuple(provenance[target])) for target in sorted(provenance, key=canonical_key)
    )


@lru_cache(maxsize=65536)
def cover_C(sigma: Involution) -> CoverSet:
    """C(σ): ≼ に関して σ の真下にある元全体"""
    n_moves = tuple(sorted((delete_arc(sigma, arc) for arc in external_max_arcs(sigma)), key=canonical_key))
    return CoverSet(source=sigma, d_moves=cover_D(sigma), n_moves=n_moves)


def closure(sigma: Involution, *, cap: int = DEFAULT_ENUMERATION_CAP) -> list[Involution]:
    """
    B̄_σ に含まれる軌道のラベル {σ' : σ' ≼ σ}

    被覆移動の幅優先探索で求めます。
    """
    check_cap(sigma.n, cap)
    seen = {sigma}
    queue = deque([sigma])
    while queue:
        current = queue.popleft()
        for lower in cover_C(current).members:
            if lower not in seen:
                seen.add(lower)
                queue.append(lower)
    logger.debug("%s の閉包: %d 個", sigma, len(seen))
    return sorted(seen, key=canonical_key)


def closure_by_filter(sigma: Involution, *, cap: int = DEFAULT_ENUMERATION_CAP) -> list[Involution]:
    """全列挙を R ≼ R_σ で絞り込む閉包の検算用実装"""
    check_cap(sigma.n, cap)
    involutions, stack = rank_stack(sigma.n)
    mask = below_mask(stack, rank_matrix(sigma))
    return [involutions[idx] for idx in np.flatnonzero(mask)]


# ---------------------------------------------------------------------------
# 半順序集合
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PosetNode:
    involution: Involution
    dim: int
    rank: RankMatrix = field(compare=False, repr=False)


@dataclass(frozen=True)
class OrbitPoset:
    """
    n（と任意の長さ k）を固定したときの軌道のハッセ図

    辺は (親, 子) の添字の組で、次元が 1 下がる向きに張ります。
    """

    n: int
    k: int | None
    nodes: tuple[PosetNode, ...]
    edges: tuple[tuple[int, int], ...]

    @cached_property
    def _index(self) -> dict[Involution, int]:
        return {node.involution: idx for idx, node in enumerate(self.nodes)}

    def index_of(self, sigma: Involution) -> int:
        return self._index[sigma]

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        for idx, node in enumerate(self.nodes):
            graph.add_node(idx, label=node.involution.cycle_notation(), dim=node.dim)
        graph.add_edges_from(self.edges)
        return graph

    @cached_property
    def _graph(self) -> nx.DiGraph:
        return self.to_networkx()

    def children(self, idx: int) -> list[int]:
        """idx の節点の真下にある節点の添字（辺の順）"""
        return list(self._graph.successors(idx))

    def reachable(self, upper: Involution, lower: Involution) -> bool:
        """ハッセ図で upper から lower に辿り着けるか（lower ≼ upper）"""
        return nx.has_path(self._graph, self.index_of(upper), self.index_of(lower))

    def minimal_nodes(self) -> list[Involution]:
        graph = self._graph
        return [self.nodes[idx].involution for idx in graph.nodes if graph.out_degree(idx) == 0]

    def maximal_nodes(self) -> list[Involution]:
        graph = self._graph
        return [self.nodes[idx].involution for idx in graph.nodes if graph.in_degree(idx) == 0]


def build_poset(
    n: int,
    k: int | None = None,
    *,
    cap: int = DEFAULT_ENUMERATION_CAP,
    workers: int = 1,
) -> OrbitPoset:
    """
    軌道の半順序集合を構築する

    Args:
        n: 点の個数
        k: 指定した場合は長さ k の対合だけを節点にする
        cap: 全列挙の上限
        workers: 被覆集合の計算に使うスレッド数

    Returns:
        OrbitPoset: 節点は次元の降順、同じ次元では canonical_key の順
    """
    involutions = sorted(enumerate_involutions(n, k, cap=cap), key=lambda s: (-dimension(s), canonical_key(s)))
    index = {sigma: idx for idx, sigma in enumerate(involutions)}

    with log_timing(logger, f"被覆集合の計算 n={n}, k={k}, workers={workers}"):
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                covers = list(pool.map(cover_C, involutions))
        else:
            covers = [cover_C(sigma) for sigma in involutions]

    edges = sorted(
        (index[cover.source], index[lower]) for cover in covers for lower in cover.members if lower in index
    )
    nodes = tuple(PosetNode(sigma, dimension(sigma), rank_matrix(sigma)) for sigma in involutions)
    logger.info("半順序集合を構築しました: n=%d, k=%s, 節点 %d, 辺 %d", n, k, len(nodes), len(edges))
    return OrbitPoset(n=n, k=k, nodes=nodes, edges=tuple(edges))


def minimal_involution(n: int, k: int, *, cap: int = DEFAULT_ENUMERATION_CAP) -> Involution:
    """
    S_n²(k) の最小元 σ_o(k) を走査で求める

    Raises:
        NotUniqueError: 全元より小さい元がちょうど1つでない場合
    """
    check_cap(n, cap)
    involutions, stack = rank_stack(n, k)
    minima = [idx for idx in range(len(involutions)) if np.all(stack[idx] <= stack)]
    if len(minima) != 1:
        raise NotUniqueError(n, k, len(minima))
    return involutions[minima[0]]


def upper_set_of_length(sigma: Involution, m: int, *, cap: int = DEFAULT_ENUMERATION_CAP) -> list[Involution]:
    """F_m(σ) = {τ ∈ S_n²(m) : τ ≻ σ}"""
    check_cap(sigma.n, cap)
    involutions, stack = rank_stack(sigma.n, m)
    mask = np.all(stack >= rank_matrix(sigma).entries, axis=(1, 2))
    return [involutions[idx] for idx in np.flatnonzero(mask) if involutions[idx] != sigma]


def sigma_bar(sigma: Involution, m: int, *, cap: int = DEFAULT_ENUMERATION_CAP) -> Involution:
    """F_m(σ) の最小元を走査で求める"""
    upper = upper_set_of_length(sigma, m, cap=cap)
    minima = [tau for tau in upper if all(leq(tau, other) for other in upper)]
    if len(minima) != 1:
        raise NotUniqueError(sigma.n, m, len(minima))
    return minima[0]


def sigma_bar_next(sigma: Involution) -> Involution:
    """
    σ̄_{k+1}: σ より大きい長さ k+1 の対合のうち最小のもの

    E_max(σ) が空なら両端の固定点 i_σ, j_σ を結ぶアークを足します。
    そうでなければ E_max のアーク (i_1,j_1),…,(i_s,j_s) を消し、
    (i_1,j_σ), (i_2,j_1), …, (i_σ,j_s) を張ります。

    Raises:
        NoFixedPointsError: 固定点が2つ未満の場合
    """
    fixed = sigma.fixed_points
    if len(fixed) < 2:
        raise NoFixedPointsError(sigma.n, sigma.length)
    i_sigma, j_sigma = fixed[0], fixed[-1]

    e_max = sorted(external_max_arcs(sigma))
    if not e_max:
        return sigma.with_arcs((*sigma.arcs, (i_sigma, j_sigma)))

    kept = [arc for arc in sigma.arcs if arc not in e_max]
    lefts = [arc[0] for arc in e_max] + [i_sigma]
    rights = [j_sigma] + [arc[1] for arc in e_max]
    return sigma.with_arcs(kept + list(zip(lefts, rights)))
