import os

from .errors import ConfigError

DEFAULT_ORDER_CAP = 4096
ORDER_CAP_ENV = "DESCENT3_ORDER_CAP"

# h2 は Schreier 表示の行列サイズで制限する
H2_ORDER_CAP = 256
H2_MATRIX_CAP = 4_000_000

HOM_CANDIDATE_CAP = 2_000_000
HOM_CHUNK = 4096
GRT_PAIR_CAP = 1_000_000
GRT_RANDOM_SAMPLES = 16
ENUMERATION_CAP = 100_000

VERIFY_PRIMES = (2, 3)
VERIFY_ORDER_CAP = 243
# 埋め込み問題と 5 項完全列は |G| をここまでに絞る
SMALL_ORDER_CAPS = {2: 32, 3: 81}


def order_cap(override: int | None = None) -> int:
    """有効な位数上限を返す（引数 > 環境変数 > 既定値）"""
    if override is not None:
        if override < 1:
            raise ConfigError(f"位数上限は正の整数: {override}")
        return override
    raw = os.environ.get(ORDER_CAP_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_ORDER_CAP
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{ORDER_CAP_ENV} が整数ではありません: {raw!r}") from None
    if value < 1:
        raise ConfigError(f"{ORDER_CAP_ENV} は正の整数: {value}")
    return value
