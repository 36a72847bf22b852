"""レポートの組み立てと JSON / テキスト出力

テキスト出力は JSON と同じペイロードを並べ直すだけで、別の計算経路は持たない。
"""

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

SCHEMA_VERSION = 1
VERDICTS = ("pass", "fail", "fail-expected", "unsupported")


@dataclass(frozen=True)
class CheckResult:
    """verify-all の 1 チェック分の結果"""

    check: str
    verdict: str
    p: int | None = None
    group: str | None = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"不明な判定: {self.verdict}")

    def sort_key(self) -> tuple:
        return (self.check, self.group or "", self.p or 0)

    def to_dict(self) -> dict:
        return {"check": self.check, "group": self.group, "p": self.p,
                "verdict": self.verdict, "details": self.details}


@dataclass(frozen=True)
class Report:
    command: dict
    results: Any
    verdict: str

    @property
    def exit_code(self) -> int:
        return 1 if self.verdict == "fail" else 0

    def to_dict(self) -> dict:
        return {"schema": SCHEMA_VERSION, "command": self.command,
                "results": self.results, "verdict": self.verdict}


def combine_verdicts(verdicts) -> str:
    """一つでも fail があれば fail、なければ pass（空なら pass）"""
    verdicts = list(verdicts)
    if "fail" in verdicts:
        return "fail"
    return "pass"


def check_report(command: dict, results: list[CheckResult]) -> Report:
    ordered = sorted(results, key=CheckResult.sort_key)
    summary: dict[str, int] = {v: 0 for v in VERDICTS}
    for r in ordered:
        summary[r.verdict] += 1
    payload = {"checks": [r.to_dict() for r in ordered], "summary": summary}
    return Report(command, payload, combine_verdicts(r.verdict for r in ordered))


def _json_default(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (tuple, set, frozenset)):
        return list(obj)
    raise TypeError(f"JSON にできない値: {type(obj).__name__}")


def render_json(report: Report) -> str:
    return json.dumps(report.to_dict(), ensure_ascii=False, indent=2, default=_json_default)


def _is_scalar_list(value) -> bool:
    return isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value)


def _text_lines(value, indent: int) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and not _is_scalar_list(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text_lines(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        if _is_scalar_list(value):
            lines.append(f"{pad}{_scalar(value)}")
        else:
            for item in value:
                sub = _text_lines(item, indent + 1)
                if sub:
                    lines.append(f"{pad}- {sub[0].strip()}")
                    lines.extend(sub[1:])
    else:
        lines.append(f"{pad}{_scalar(value)}")
    return lines


def _scalar(value) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(_scalar(v) for v in value) + "]"
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def render_text(report: Report) -> str:
    data = json.loads(render_json(report))
    verb = data["command"].get("verb", "")
    lines = [f"=== {verb} ==="]
    lines.extend(_text_lines(data["command"], 1))
    lines.append("")
    lines.append("=== 結果 ===")
    lines.extend(_text_lines(data["results"], 1))
    lines.append("")
    lines.append(f"判定: {data['verdict']}")
    return "\n".join(lines)


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "text":
        return render_text(report)
    raise ValueError(f"不明な出力形式: {fmt}")
