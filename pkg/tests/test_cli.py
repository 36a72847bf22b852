import json
from pathlib import Path

import pytest

from descent3.cli import main
from descent3.runlog import load_log

SCHEMA_PATH = Path(__file__).resolve().parents[1] / "descent3" / "report.schema.json"


def _run(capsys, argv: list[str]) -> tuple[int, dict]:
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.fixture(scope="module")
def schema() -> dict:
    return json.loads(SCHEMA_PATH.read_text(encoding="utf-8"))


@pytest.mark.parametrize("argv", [
    ["catalog", "--p", "2", "--order-cap", "8"],
    ["cohomology", "--group", "cyclic:4", "-m", "2"],
    ["series", "--group", "dihedral:8", "--q", "2"],
    ["extension", "show", "--p", "3", "--omega", "omega5"],
    ["grt", "--group", "cyclic:9", "--q", "3"],
    ["main-theorem", "--group", "modular:3", "--p", "3"],
    ["wgroup", "--group", "direct:cyclic:9,cyclic:9", "--p", "3"],
])
def test_reports_follow_schema(capsys, schema, argv):
    code, data = _run(capsys, argv)
    assert code == 0
    assert set(schema["required"]) == set(data)
    assert data["schema"] == schema["properties"]["schema"]["const"]
    assert data["command"]["verb"] == argv[0]
    assert data["verdict"] in schema["properties"]["verdict"]["enum"]


def test_output_is_byte_stable(capsys):
    argv = ["cohomology", "--group", "quaternion:8", "-m", "2"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_catalog_respects_order_cap(capsys):
    _, data = _run(capsys, ["catalog", "--p", "2", "3", "--order-cap", "9"])
    assert set(data["results"]) == {"2", "3"}
    assert all(row["order"] <= 9 for rows in data["results"].values() for row in rows)


def test_cohomology_report(capsys):
    _, data = _run(capsys, ["cohomology", "--group", "direct:cyclic:4,cyclic:2", "-m", "4"])
    results = data["results"]
    assert results["h2"]["order"] == 16
    assert results["h2_sym_order"] == 8
    assert results["skew_order"] == 2
    assert len(results["h2_basis"]) == len(results["h2"]["invariant_factors"])


def test_series_of_trivial_group(capsys):
    _, data = _run(capsys, ["series", "--group", "cyclic:1", "--q", "2"])
    assert data["results"]["length"] == 1
    assert data["results"]["w_order"] == 1


def test_baer_sum_command(capsys):
    code, data = _run(capsys, ["extension", "baer", "--p", "3", "--left", "omega4", "--right", "omega6"])
    assert code == 0
    assert data["results"]["equivalent_to"] == ["omega5"]
    assert data["results"]["sum"]["middle"] == "M_27"


def test_extension_classify_command(capsys):
    code, data = _run(capsys, ["extension", "classify", "--p", "2"])
    assert code == 0
    assert data["verdict"] == "pass"
    assert all(row["equivalent"] for row in data["results"]["rows"])


def test_grt_verdicts_and_exit_codes(capsys):
    code, data = _run(capsys, ["grt", "--group", "quaternion:8", "--q", "2"])
    assert (code, data["verdict"]) == (1, "fail")
    code, data = _run(capsys, ["grt", "--group", "cyclic:8", "--q", "4"])
    assert (code, data["verdict"]) == (0, "unsupported")


def test_main_theorem_counterexample_is_expected(capsys):
    code, data = _run(capsys, ["main-theorem", "--group", "quaternion:8", "--p", "2"])
    assert code == 0
    assert data["verdict"] == "fail-expected"
    assert data["results"]["witnesses"]["delta_order"] == 2


def test_text_format(capsys):
    assert main(["grt", "--group", "cyclic:9", "--q", "3", "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("=== grt ===")
    assert "=== 結果 ===" in out
    assert out.rstrip().endswith("判定: pass")


@pytest.mark.parametrize("argv", [
    ["grt", "--group", "cyclic:0", "--q", "2"],
    ["grt", "--q", "2"],
    ["main-theorem", "--group", "cyclic:4", "--p", "2", "3"],
    ["extension", "show", "--p", "3", "--omega", "omegaX"],
    ["verify-all", "--p", "2", "--order-cap", "0"],
])
def test_errors_exit_with_two(capsys, argv):
    assert main(argv) == 2
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err.startswith("エラー: ")


def test_order_cap_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("DESCENT3_ORDER_CAP", "4")
    assert main(["cohomology", "--group", "cyclic:8", "-m", "2"]) == 2
    assert "上限" in capsys.readouterr().err


def test_usage_errors_exit_through_argparse(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["grt", "show", "--group", "cyclic:2", "--q", "2"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["nonsense"])


def test_verify_all_command_with_log(capsys, tmp_path):
    log_path = tmp_path / "run.jsonl"
    code, data = _run(capsys, ["verify-all", "--p", "2", "--order-cap", "8",
                               "--check", "counterexamples", "--log", str(log_path)])
    assert code == 0
    assert data["verdict"] == "pass"
    assert data["command"]["checks"] == ["counterexamples"]
    assert data["results"]["summary"]["pass"] == 1
    assert load_log(log_path)["verdict"] == "pass"


def test_verify_all_resume_from_complete_log(capsys, tmp_path):
    log_path = tmp_path / "run.jsonl"
    main(["verify-all", "--p", "2", "--order-cap", "8", "--check", "counterexamples",
          "--log", str(log_path)])
    capsys.readouterr()
    code, data = _run(capsys, ["verify-all", "--resume", str(log_path)])
    assert code == 0
    assert data["command"]["resumed"] is True
    assert data["command"]["p"] == [2]
    assert [c["check"] for c in data["results"]["checks"]] == ["counterexamples"]


def test_verify_all_resume_missing_log(capsys, tmp_path):
    assert main(["verify-all", "--resume", str(tmp_path / "none.jsonl")]) == 2
    captured = capsys.readouterr()
    assert captured.err.startswith("エラー: ログファイルが見つかりません")
    assert captured.out == ""
