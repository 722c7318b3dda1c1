#!/usr/bin/env python3
"""
リンクパターンモジュール

平方ゼロの狭義上三角行列のB軌道は、S_n の対合 σ（互いに素なアークの集合）で
ラベル付けされます。このモジュールは対合の表現・列挙・統計量と、
軌道次元の2つの公式（q値による式とリンクパターンによる式）を提供します。

点は常に 1 始まりで、アークは (i, j), i < j として保持します。
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from core.exceptions import (
    DuplicateEndpointError,
    InvalidInvolutionError,
    OutOfRangeError,
    ResourceCapError,
    SelfArcError,
)
from core.logger import get_logger

# モジュール用のロガーを初期化
logger = get_logger("patterns")

Arc = tuple[int, int]

DEFAULT_ENUMERATION_CAP = 12


@dataclass(frozen=True)
class Involution:
    """
    点 1..n 上の互いに素なアークの集合

    アークは (小さい端点, 大きい端点) に正規化され、左端点の昇順に並びます。
    n とアーク列が等しいとき、2つの対合は等しいとみなします。
    """

    n: int
    arcs: tuple[Arc, ...] = ()

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise InvalidInvolutionError(self.n, "n は正の整数でなければなりません")

        seen: set[int] = set()
        normalized: list[Arc] = []
        for raw in self.arcs:
            if len(raw) != 2:
                raise InvalidInvolutionError(self.n, f"アークは2点の組でなければなりません: {raw!r}")
            a, b = int(raw[0]), int(raw[1])
            for point in (a, b):
                if not 1 <= point <= self.n:
                    raise OutOfRangeError(self.n, point)
            if a == b:
                raise SelfArcError(self.n, a)
            for point in (a, b):
                if point in seen:
                    raise DuplicateEndpointError(self.n, point)
                seen.add(point)
            normalized.append((min(a, b), max(a, b)))

        object.__setattr__(self, "arcs", tuple(sorted(normalized)))

    @property
    def length(self) -> int:
        """アークの本数 ℓ"""
        return len(self.arcs)

    @cached_property
    def _partners(self) -> dict[int, int]:
        partners: dict[int, int] = {}
        for i, j in self.arcs:
            partners[i] = j
            partners[j] = i
        return partners

    @cached_property
    def endpoints(self) -> frozenset[int]:
        return frozenset(self._partners)

    @cached_property
    def fixed_points(self) -> tuple[int, ...]:
        return tuple(p for p in range(1, self.n + 1) if p not in self._partners)

    def partner(self, point: int) -> int:
        """σ(point)。固定点ならその点自身を返す"""
        return self._partners.get(point, point)

    def is_fixed(self, point: int) -> bool:
        return point not in self._partners

    def with_arcs(self, arcs: Iterable[Arc]) -> Involution:
        """同じ n で別のアーク集合を持つ対合を作る"""
        return Involution(self.n, tuple(arcs))

    def cycle_notation(self) -> str:
        """巡回表記 "(1,3)(2,6)"。恒等置換は "id" """
        if not self.arcs:
            return "id"
        return "".join(f"({i},{j})" for i, j in self.arcs)

    def __str__(self) -> str:
        return self.cycle_notation()


def canonical_key(sigma: Involution) -> tuple[int, tuple[Arc, ...]]:
    """列挙順を決めるソートキー（アーク数、次にアーク列の辞書順）"""
    return (sigma.length, sigma.arcs)


def involution_from_arcs(n: int, arcs: Iterable[Sequence[int]]) -> Involution:
    """
    アークのリストから正規形の対合を作る

    Args:
        n: 点の個数
        arcs: (i, j) の組の並び。i > j でもよい

    Returns:
        Involution: 正規化された対合

    Raises:
        DuplicateEndpointError: 端点が重複している場合
        OutOfRangeError: 端点が [1, n] の外にある場合
        SelfArcError: i = j のアークがある場合
    """
    return Involution(n, tuple((arc[0], arc[1]) for arc in arcs))


def identity(n: int) -> Involution:
    return Involution(n)


def _generate_arc_sets(points: tuple[int, ...]) -> Iterator[tuple[Arc, ...]]:
    # 先頭の点を固定点にするか、残りのどれかと結ぶかで分岐する
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    yield from _generate_arc_sets(rest)
    for idx, other in enumerate(rest):
        remaining = rest[:idx] + rest[idx + 1 :]
        for tail in _generate_arc_sets(remaining):
            yield ((first, other), *tail)


@lru_cache(maxsize=None)
def _all_involutions(n: int) -> tuple[Involution, ...]:
    result = sorted(
        (Involution(n, arcs) for arcs in _generate_arc_sets(tuple(range(1, n + 1)))),
        key=canonical_key,
    )
    logger.debug("n=%d の対合を %d 個生成しました", n, len(result))
    return tuple(result)


@lru_cache(maxsize=None)
def _involutions_of_length(n: int, k: int) -> tuple[Involution, ...]:
    return tuple(sigma for sigma in _all_involutions(n) if sigma.length == k)


def check_cap(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> None:
    """全列挙を伴う計算の前に n が上限以内か確認する"""
    if n > cap:
        raise ResourceCapError(n, cap, hint="--cap で上限を上げるか、--k で長さを指定してください")


def enumerate_involutions(n: int, k: int | None = None, *, cap: int = DEFAULT_ENUMERATION_CAP) -> list[Involution]:
    """
    S_n の対合をすべて列挙する

    Args:
        n: 点の個数
        k: 指定した場合はアーク数がちょうど k のものだけを返す
        cap: 全列挙を許す n の上限

    Returns:
        list[Involution]: canonical_key の順に並んだ重複のないリスト

    Raises:
        ResourceCapError: n が上限を超える場合
        ValueError: k が範囲 0..n/2 の外にある場合
    """
    if n < 1:
        raise ValueError(f"n は正の整数でなければなりません: {n}")
    check_cap(n, cap)
    if k is None:
        return list(_all_involutions(n))
    if not 0 <= 2 * k <= n:
        raise ValueError(f"k は 0 <= k <= n/2 を満たす必要があります: n={n}, k={k}")
    return list(_involutions_of_length(n, k))


def count_involutions(n: int) -> int:
    """I(n) = I(n-1) + (n-1) I(n-2), I(0) = I(1) = 1"""
    prev, cur = 1, 1
    for m in range(2, n + 1):
        prev, cur = cur, cur + (m - 1) * prev
    return cur


@dataclass(frozen=True)
class PatternStats:
    """リンクパターンの統計量 ℓ, c, f と各固定点の被覆数 f_p"""

    length: int
    crossings: int
    fixed_under: int
    per_point_fixed: dict[int, int] = field(default_factory=dict, hash=False)


def crossing_count(sigma: Involution) -> int:
    arcs = sigma.arcs
    return sum(
        1
        for a, (i, j) in enumerate(arcs)
        for (i2, j2) in arcs[a + 1 :]
        if i < i2 < j < j2
    )


def arcs_over_point(sigma: Involution, point: int) -> list[Arc]:
    """点 point の上を通るアーク (i < point < j)"""
    return [(i, j) for i, j in sigma.arcs if i < point < j]


def arcs_over_arc(sigma: Involution, arc: Arc) -> list[Arc]:
    """arc を真に含むアーク"""
    i, j = arc
    return [(a, b) for a, b in sigma.arcs if a < i and j < b]


def arcs_under_arc(sigma: Involution, arc: Arc) -> list[Arc]:
    """[i+1, j-1] に含まれるアーク"""
    i, j = arc
    return [(a, b) for a, b in sigma.arcs if i < a and b < j]


def fixed_under_arc(sigma: Involution, arc: Arc) -> int:
    """アークの下にある固定点の個数 f'"""
    i, j = arc
    return sum(1 for p in sigma.fixed_points if i < p < j)


@lru_cache(maxsize=65536)
def pattern_stats(sigma: Involution) -> PatternStats:
    """
    ℓ(P_σ), c(P_σ), f(P_σ) を計算する

    交差数は全ペアの比較で数えます。
    """
    per_point = {p: len(arcs_over_point(sigma, p)) for p in sigma.fixed_points}
    return PatternStats(
        length=sigma.length,
        crossings=crossing_count(sigma),
        fixed_under=sum(per_point.values()),
        per_point_fixed=per_point,
    )


def q_value(sigma: Involution, arc: Arc) -> int:
    """q_{(i,j)}(σ) = #{i_p < i, j_p < j} + #{j_p < i}"""
    i, j = arc
    return sum(1 for a, b in sigma.arcs if a < i and b < j) + sum(1 for _, b in sigma.arcs if b < i)


def dim_via_q(sigma: Involution) -> int:
    """dim B_σ = kn - Σ(j_s - i_s) - Σ q_{(i_s,j_s)}(σ)"""
    k = sigma.length
    span = sum(j - i for i, j in sigma.arcs)
    return k * sigma.n - span - sum(q_value(sigma, arc) for arc in sigma.arcs)


def dim_via_pattern(sigma: Involution) -> int:
    """dim B_σ = ℓ(n - ℓ) - c - f"""
    stats = pattern_stats(sigma)
    return stats.length * (sigma.n - stats.length) - stats.crossings - stats.fixed_under


@lru_cache(maxsize=65536)
def dimension(sigma: Involution) -> int:
    """軌道 B_σ の次元"""
    return dim_via_pattern(sigma)


def is_maximal(sigma: Involution) -> bool:
    """交差も被覆された固定点も無い（長さ ℓ の中で次元が最大）"""
    stats = pattern_stats(sigma)
    return stats.crossings == 0 and stats.fixed_under == 0


@dataclass(frozen=True, eq=False)
class ZeroOneMatrix:
    """N_σ: アークの位置だけが 1 の狭義上三角 0/1 行列"""

    n: int
    entries: np.ndarray

    def at(self, i: int, j: int) -> int:
        return int(self.entries[i - 1, j - 1])

    def ones(self) -> list[Arc]:
        rows, cols = np.nonzero(self.entries)
        return sorted((int(r) + 1, int(c) + 1) for r, c in zip(rows, cols))

    def square_is_zero(self) -> bool:
        product = self.entries.astype(np.int64) @ self.entries.astype(np.int64)
        return not product.any()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ZeroOneMatrix):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((self.n, self.entries.tobytes()))


def matrix_N(sigma: Involution) -> ZeroOneMatrix:
    """(N_σ)_{i,j} = 1 ⟺ i < j かつ σ(i) = j"""
    entries = np.zeros((sigma.n, sigma.n), dtype=np.uint8)
    for i, j in sigma.arcs:
        entries[i - 1, j - 1] = 1
    entries.setflags(write=False)
    return ZeroOneMatrix(sigma.n, entries)


def external_arcs(sigma: Involution) -> list[Arc]:
    """上に他のアークが無いアーク E(σ)"""
    return [arc for arc in sigma.arcs if not arcs_over_arc(sigma, arc)]


def external_max_arcs(sigma: Involution) -> list[Arc]:
    """すべての固定点を下に持つ外部アーク E_max(σ)"""
    free = sigma.n - 2 * sigma.length
    return [arc for arc in external_arcs(sigma) if fixed_under_arc(sigma, arc) == free]


def project(sigma: Involution, i: int, j: int) -> Involution:
    """π_{i,j}(σ): [i, j] に含まれるアークだけを残した対合"""
    return sigma.with_arcs(arc for arc in sigma.arcs if i <= arc[0] and arc[1] <= j)
