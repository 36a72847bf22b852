class Descent3Error(Exception):
    """descent3 の全例外の基底クラス"""


class GroupSpecError(Descent3Error):
    """群指定文字列の構文エラー、または作用条件違反"""


class OrderCapError(Descent3Error):
    """位数・列挙数の上限超過"""


class PreconditionError(Descent3Error):
    """演算の前提条件違反（非正規部分群、法の不一致、非コサイクルなど）"""


class ConfigError(Descent3Error):
    """設定値（環境変数など）が不正"""
