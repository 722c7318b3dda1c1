#!/usr/bin/env python3
"""
2列タブローモジュール

形 (n-k, k)* の標準ヤング盤（列の長さが n-k と k）と、最大次元軌道の
対合 σ_T との対応、軌道多様体の閉包 N(T)、降下集合 I(T) と移動 u_i(T) を扱います。
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from itertools import combinations
from math import comb

from core.exceptions import DescentAtIError, InvalidTableauError, NotMaximalError
from core.logger import get_logger
from core.order import cover_N
from core.patterns import Involution, is_maximal

# モジュール用のロガーを初期化
logger = get_logger("tableaux")


@dataclass(frozen=True)
class TwoColumnTableau:
    """
    2列の標準タブロー

    col1 が第1列 ⟨T_1⟩（長さ n-k）、col2 が第2列 ⟨T_2⟩（長さ k）。
    どちらも昇順で、各行 s について col1[s] < col2[s] を満たします。
    """

    n: int
    col1: tuple[int, ...]
    col2: tuple[int, ...]

    def __post_init__(self) -> None:
        col1, col2 = tuple(self.col1), tuple(self.col2)
        object.__setattr__(self, "col1", col1)
        object.__setattr__(self, "col2", col2)

        if list(col1) != sorted(set(col1)) or list(col2) != sorted(set(col2)):
            raise InvalidTableauError("各列は狭義単調増加でなければなりません", self.n)
        if sorted(col1 + col2) != list(range(1, self.n + 1)):
            raise InvalidTableauError("2つの列の和集合は {1,…,n} でなければなりません", self.n)
        if len(col2) > len(col1):
            raise InvalidTableauError("第2列が第1列より長くなっています", self.n)
        for row, (left, right) in enumerate(zip(col1, col2), start=1):
            if left >= right:
                raise InvalidTableauError(f"{row} 行目が標準ではありません: {left} >= {right}", self.n)

    @property
    def k(self) -> int:
        return len(self.col2)

    @property
    def shape(self) -> tuple[int, int]:
        """列の長さ (n-k, k)"""
        return (len(self.col1), len(self.col2))

    def rows(self) -> list[tuple[int, int | None]]:
        return [(left, self.col2[idx] if idx < self.k else None) for idx, left in enumerate(self.col1)]


def tableau_from_second_column(n: int, col2: Iterable[int]) -> TwoColumnTableau:
    second = tuple(sorted(col2))
    first = tuple(p for p in range(1, n + 1) if p not in set(second))
    return TwoColumnTableau(n, first, second)


def tableau_count(n: int, k: int) -> int:
    """n!/(k!(n-k)!) · (n-2k+1)/(n-k+1)"""
    return comb(n, k) * (n - 2 * k + 1) // (n - k + 1)


def _is_ballot(n: int, col2: tuple[int, ...]) -> bool:
    second = set(col2)
    balance = 0
    for p in range(1, n + 1):
        balance += -1 if p in second else 1
        if balance < 0:
            return False
    return True


def enumerate_tableaux(n: int, k: int) -> list[TwoColumnTableau]:
    """
    形 (n-k, k)* の標準タブローをすべて列挙する

    第2列の組み合わせを辞書順に走査し、標準なものだけを残します。
    """
    if not 0 <= 2 * k <= n:
        raise ValueError(f"k は 0 <= k <= n/2 を満たす必要があります: n={n}, k={k}")
    result = [
        tableau_from_second_column(n, col2)
        for col2 in combinations(range(1, n + 1), k)
        if _is_ballot(n, col2)
    ]
    logger.debug("n=%d, k=%d のタブロー: %d 個", n, k, len(result))
    return result


def sigma_of_tableau(tableau: TwoColumnTableau) -> Involution:
    """
    σ_T を作る

    第2列の j_1 < j_2 < … を順に見て、まだ使っていない第1列の数のうち
    j_s より小さい最大のものと結びます。
    """
    available = list(tableau.col1)
    arcs = []
    for right in tableau.col2:
        left = max(d for d in available if d < right)
        available.remove(left)
        arcs.append((left, right))
    return Involution(tableau.n, tuple(arcs))


def tableau_of_sigma(sigma: Involution) -> TwoColumnTableau:
    """
    最大次元の σ から T を復元する（第2列 = 右端点の集合）

    Raises:
        NotMaximalError: σ に交差または被覆された固定点がある場合
    """
    if not is_maximal(sigma):
        raise NotMaximalError(sigma.cycle_notation())
    return tableau_from_second_column(sigma.n, (j for _, j in sigma.arcs))


def move_to_first_column(tableau: TwoColumnTableau, entry: int) -> TwoColumnTableau:
    """T⟨entry⟩: 第2列の entry を第1列に移す"""
    if entry not in tableau.col2:
        raise InvalidTableauError(f"{entry} は第2列にありません", tableau.n)
    return tableau_from_second_column(tableau.n, (p for p in tableau.col2 if p != entry))


def closure_tableaux(tableau: TwoColumnTableau) -> list[TwoColumnTableau]:
    """
    N(T): T の軌道多様体の閉包に含まれる、形 (n-k+1, k-1)* の極大な軌道多様体

    第2列を j_1 < … < j_k としたとき、i = k または すべての s > i で
    j_s - j_i >= 2(s - i) を満たす i について T⟨j_i⟩ を、第2列の辞書順に返します。
    """
    if tableau.k < 1:
        raise ValueError("第2列が空のタブローには閉包の元がありません")
    second = tableau.col2
    k = tableau.k
    result = []
    for idx in range(k):
        if all(second[s] - second[idx] >= 2 * (s - idx) for s in range(idx + 1, k)):
            result.append(move_to_first_column(tableau, second[idx]))
    return sorted(result, key=lambda t: t.col2)


def closure_tableaux_via_external_arcs(tableau: TwoColumnTableau) -> list[TwoColumnTableau]:
    """σ_T の外部アークを消して N(T) を求める別経路"""
    return sorted(
        (tableau_of_sigma(lower) for lower in cover_N(sigma_of_tableau(tableau))),
        key=lambda t: t.col2,
    )


def descent_set(tableau: TwoColumnTableau) -> set[int]:
    """I(T) = {i : i ∈ ⟨T_1⟩, i+1 ∈ ⟨T_2⟩}"""
    second = set(tableau.col2)
    return {i for i in tableau.col1 if i + 1 in second}


def descent_set_via_sigma(tableau: TwoColumnTableau) -> set[int]:
    """I(T) = {i : (i, i+1) ∈ σ_T}"""
    return {i for i, j in sigma_of_tableau(tableau).arcs if j == i + 1}


def swap_entries(tableau: TwoColumnTableau, first: int, second: int) -> TwoColumnTableau | None:
    """
    T_{first⇄second}: 2つの数の列を入れ替える

    first は第1列、second は第2列の数。入れ替えた結果が標準でなければ None。
    """
    if first not in tableau.col1 or second not in tableau.col2:
        raise InvalidTableauError(f"{first} は第1列、{second} は第2列になければなりません", tableau.n)
    col2 = [p for p in tableau.col2 if p != second] + [first]
    try:
        return tableau_from_second_column(tableau.n, col2)
    except InvalidTableauError:
        return None


def _prefix_balance(tableau: TwoColumnTableau, upto: int) -> int:
    in_second = sum(1 for p in tableau.col2 if p <= upto)
    return (upto - in_second) - in_second


def shape_allows_swap(tableau: TwoColumnTableau, first: int, second: int) -> bool:
    """
    先頭部分の形から T_{first⇄second} が空でないかを判定する

    second < first なら常に可能。そうでなければ π_{1,first}(T) の2列の長さの差が 2 以上、
    π_{1,second}(T) の差が 1 以上のときに可能とします。

    この判定が正しいのは u_i が行う入れ替えに限ります。一般の組では先頭部分の形だけでは
    決まらず、例えば n=5, 第2列 (3, 5) で 2⇄5 は True を返しますが、結果の第2列 (2, 3) は
    標準ではありません。一般の組は swap_entries の戻り値で判定してください。
    """
    if second < first:
        return True
    return _prefix_balance(tableau, first) >= 2 and _prefix_balance(tableau, second) >= 1


def u_move(tableau: TwoColumnTableau, i: int) -> TwoColumnTableau | None:
    """
    u_i(T) を計算する

    i, i+1 が両方第2列: T_{σ_T(i)⇄i}
    i が第2列、i+1 が第1列: T_{i+1⇄i}
    i, i+1 が両方第1列で i+1 が固定点でない: T_{i+1⇄σ_T(i+1)}
    i, i+1 が両方固定点: None

    Raises:
        DescentAtIError: i ∈ I(T) の場合
        ValueError: i が 1 <= i < n を満たさない場合
    """
    if not 1 <= i < tableau.n:
        raise ValueError(f"i は 1 <= i < n を満たす必要があります: i={i}, n={tableau.n}")
    if i in descent_set(tableau):
        raise DescentAtIError(i)

    sigma = sigma_of_tableau(tableau)
    second = set(tableau.col2)
    if i in second and i + 1 in second:
        return swap_entries(tableau, sigma.partner(i), i)
    if i in second:
        return swap_entries(tableau, i + 1, i)
    partner = sigma.partner(i + 1)
    if partner != i + 1:
        return swap_entries(tableau, i + 1, partner)
    return None


def two_column_orbit_dim(n: int, k: int) -> int:
    """dim O_{(n-k,k)*} = 2k(n-k)"""
    if not 0 <= 2 * k <= n:
        raise ValueError(f"k は 0 <= k <= n/2 を満たす必要があります: n={n}, k={k}")
    return 2 * k * (n - k)


def maximal_orbit_dim(n: int, k: int) -> int:
    """最大次元の B 軌道（と軌道多様体）の次元 k(n-k)"""
    return two_column_orbit_dim(n, k) // 2
