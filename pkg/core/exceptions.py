#!/usr/bin/env python3
"""
カスタム例外クラス

BLTで使用される例外クラスを定義します。
各例外は原因となった値を属性として保持し、メッセージを自分で組み立てます。
"""


class BLTException(Exception):
    """BLT の基本例外クラス"""


class InvalidInvolutionError(BLTException):
    """対合（アーク集合）が不正な場合のエラー"""

    def __init__(self, n: int, message: str):
        self.n = n
        super().__init__(f"不正な対合 (n={n}): {message}")


class DuplicateEndpointError(InvalidInvolutionError):
    """同じ端点が複数のアークで使われている場合のエラー"""

    def __init__(self, n: int, point: int):
        self.point = point
        super().__init__(n, f"端点 {point} が重複しています")


class OutOfRangeError(InvalidInvolutionError):
    """端点が 1..n の範囲外にある場合のエラー"""

    def __init__(self, n: int, point: int):
        self.point = point
        super().__init__(n, f"端点 {point} が範囲 [1, {n}] の外にあります")


class SelfArcError(InvalidInvolutionError):
    """i = j のアークが指定された場合のエラー"""

    def __init__(self, n: int, point: int):
        self.point = point
        super().__init__(n, f"アーク ({point},{point}) は自己ループです")


class SizeMismatchError(BLTException):
    """異なる n のオブジェクト同士を比較しようとした場合のエラー"""

    def __init__(self, n_left: int, n_right: int):
        self.n_left = n_left
        self.n_right = n_right
        super().__init__(f"サイズが一致しません: n={n_left} と n={n_right}")


class ResourceCapError(BLTException):
    """全列挙の上限を超えた場合のエラー"""

    def __init__(self, n: int, cap: int, hint: str | None = None):
        self.n = n
        self.cap = cap
        self.hint = hint
        message = f"n={n} は全列挙の上限 {cap} を超えています"
        if hint:
            message += f" ({hint})"
        super().__init__(message)


class NotUniqueError(BLTException):
    """一意であるべき最小元が一意に定まらない場合のエラー"""

    def __init__(self, n: int, k: int, count: int):
        self.n = n
        self.k = k
        self.count = count
        super().__init__(f"最小元が一意ではありません (n={n}, k={k}): 候補数 {count}")


class NoFixedPointsError(BLTException):
    """新しいアークを張るための固定点が足りない場合のエラー"""

    def __init__(self, n: int, length: int):
        self.n = n
        self.length = length
        super().__init__(f"固定点が2つ未満です (n={n}, アーク数={length})")


class InvalidTableauError(BLTException):
    """2列タブローが不正な場合のエラー"""

    def __init__(self, message: str, n: int | None = None):
        self.n = n
        if n is not None:
            message = f"不正なタブロー (n={n}): {message}"
        super().__init__(message)


class NotMaximalError(InvalidTableauError):
    """交差または被覆された固定点を持つ対合からタブローを作ろうとした場合のエラー"""

    def __init__(self, arcs: str):
        self.arcs = arcs
        super().__init__(f"{arcs} は最大次元の軌道ではありません（交差または被覆された固定点があります）")


class ShapeMismatchError(InvalidTableauError):
    """形の異なるタブロー同士を比較しようとした場合のエラー"""

    def __init__(self, left_shape: tuple[int, int], right_shape: tuple[int, int]):
        self.left_shape = left_shape
        self.right_shape = right_shape
        super().__init__(f"タブローの形が一致しません: {left_shape} と {right_shape}")


class DescentAtIError(InvalidTableauError):
    """i が降下集合に含まれるのに u_i を適用しようとした場合のエラー"""

    def __init__(self, i: int):
        self.i = i
        super().__init__(f"{i} は降下集合に含まれているため u_{i} は定義されません")


class ParseError(BLTException):
    """入力文字列の解析に失敗した場合のエラー"""

    def __init__(self, text: str, position: int, message: str):
        self.text = text
        self.position = position
        super().__init__(f"解析エラー (位置 {position}): {message}\n入力: {text!r}")


class ConfigurationError(BLTException):
    """設定関連のエラー"""

    def __init__(self, message: str, config_key: str | None = None):
        self.config_key = config_key
        if config_key:
            message = f"設定エラー [{config_key}]: {message}"
        super().__init__(message)


class ExportError(BLTException):
    """出力ファイル書き込み時のエラー"""

    def __init__(self, message: str, file_path: str | None = None):
        self.file_path = file_path
        if file_path:
            message = f"エクスポートエラー ({file_path}): {message}"
        super().__init__(message)


class CacheError(BLTException):
    """キャッシュ操作時のエラー"""

    def __init__(self, message: str, cache_path: str | None = None):
        self.cache_path = cache_path
        if cache_path:
            message = f"キャッシュエラー ({cache_path}): {message}"
        super().__init__(message)


class CacheCorruptError(CacheError):
    """キャッシュファイルが壊れている場合のエラー"""
