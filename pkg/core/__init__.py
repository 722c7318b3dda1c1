# core パッケージの初期化ファイル
