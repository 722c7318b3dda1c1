#!/usr/bin/env python3
"""
B-orbit Link-pattern Toolkit (BLT)
平方ゼロの上三角行列の B 軌道とリンクパターンを計算するツール

このモジュールはコマンドラインのエントリーポイントです。
"""

import sys

from core.cli import main

if __name__ == "__main__":
    sys.exit(main())
