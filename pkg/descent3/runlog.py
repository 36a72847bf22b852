"""verify-all の実行ログ（JSONL）"""

import json
from datetime import datetime
from pathlib import Path
from typing import IO

from .errors import ConfigError


def write_log(log: IO[str] | None, event: str, **data) -> None:
    """1 イベントを 1 行の JSON として書き出す"""
    if log is None:
        return
    record = {"time": datetime.now().isoformat(), "event": event, **data}
    log.write(json.dumps(record, ensure_ascii=False) + "\n")
    log.flush()


def _load_log_records(log_path: Path) -> list[dict]:
    """JSONLログをレコードのリストとして読み込む"""
    records = []
    with open(log_path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line:
                records.append(json.loads(line))
    return records


def load_log(log_path: Path) -> dict:
    """ログから実行条件と各チェックの結果・所要時間を復元する"""
    records = _load_log_records(log_path)
    start = next((r for r in records if r["event"] == "start"), None)
    if start is None:
        raise ConfigError(f"start レコードがありません: {log_path}")
    checks = [r for r in records if r["event"] == "check"]
    end = next((r for r in reversed(records) if r["event"] == "end"), None)
    return {
        "primes": start.get("primes", []),
        "order_cap": start.get("order_cap"),
        "names": start.get("names"),
        "checks": checks,
        "seconds": sum(r.get("seconds", 0.0) for r in checks),
        "verdict": end["verdict"] if end else None,
    }
