import io

import pytest

from descent3.checks import check_names, plan_checks, run_check
from descent3.cli import resume_verify_all, timed_check, verify_all
from descent3.errors import PreconditionError
from descent3.report import CheckResult, check_report, combine_verdicts
from descent3.runlog import load_log


def test_check_registry():
    names = check_names()
    assert names == sorted(names)
    assert len(names) == 16
    assert {"main_theorem", "baer_sum_modular", "five_term", "wgroup"} <= set(names)


def test_run_check_validates_arguments():
    with pytest.raises(PreconditionError, match="必須パラメータ"):
        run_check("main_theorem", {"p": 2})
    with pytest.raises(PreconditionError, match="不明なチェック"):
        run_check("no_such_check", {"p": 2})


@pytest.mark.parametrize("name, args, verdict", [
    ("baer_sum_modular", {"p": 3}, "pass"),
    ("extension_classification", {"p": 2}, "pass"),
    ("counterexamples", {"p": 2}, "pass"),
    ("counterexamples", {"p": 3}, "pass"),
    ("local_field_model", {"p": 3}, "pass"),
    ("list_necessity", {"p": 3}, "pass"),
    ("main_theorem", {"group": "quaternion:8", "p": 2}, "fail-expected"),
    ("main_theorem", {"group": "modular:3", "p": 3}, "pass"),
    ("wgroup", {"group": "cyclic:3", "p": 3}, "unsupported"),
    ("corollary_lists", {"group": "quaternion:8", "p": 2}, "unsupported"),
    ("embedding_bijection", {"group": "cyclic:4", "p": 2}, "pass"),
    ("pontryagin_duality", {"group": "dihedral:8", "p": 2}, "pass"),
    ("five_term", {"group": "heisenberg:3", "p": 3}, "pass"),
    ("series_duality", {"group": "modular:3", "p": 3}, "pass"),
    ("cohomology_identities", {"group": "quaternion:8", "p": 2}, "pass"),
    ("distinguished_routes", {"group": "dihedral:8", "p": 2}, "pass"),
    ("main_theorem", {"group": "cyclic:1", "p": 2}, "pass"),
    ("main_theorem", {"group": "cyclic:3", "p": 2}, "pass"),
    ("corollary_lists", {"group": "cyclic:1", "p": 2}, "pass"),
    ("corollary_lists", {"group": "cyclic:1", "p": 3}, "pass"),
    ("wgroup", {"group": "cyclic:1", "p": 3}, "pass"),
    ("epi_lifting", {"group": "cyclic:1", "p": 2}, "pass"),
])
def test_run_check(name, args, verdict):
    result = run_check(name, args)
    assert result.check == name
    assert result.verdict == verdict, result.details


def test_plan_skips_odd_only_checks_for_two():
    plan = plan_checks([2], 8)
    names = {name for name, _ in plan}
    assert "baer_sum_modular" not in names
    assert "local_field_model" not in names
    assert [name for name, _ in plan] == sorted(name for name, _ in plan)
    for _, args in plan:
        assert args["p"] == 2


def test_plan_respects_order_caps():
    assert ("local_field_model", {"p": 3}) in plan_checks([3], 81)
    assert ("local_field_model", {"p": 3}) not in plan_checks([3], 27)
    small = [args["group"] for name, args in plan_checks([3], 243) if name == "five_term"]
    assert "direct:cyclic:27,cyclic:9" not in small
    assert "semidirect:9,9,4" in small
    routes = [args["group"] for name, args in plan_checks([2], 243) if name == "distinguished_routes"]
    assert routes == ["dihedral:8", "quaternion:8", "cyclic:8", "direct:cyclic:4,cyclic:2"]


def test_plan_filters_by_name():
    plan = plan_checks([2, 3], 27, ["wgroup"])
    assert {name for name, _ in plan} == {"wgroup"}
    with pytest.raises(PreconditionError):
        plan_checks([2], 8, ["no_such_check"])


def test_check_report_orders_results_and_summarizes():
    results = [
        CheckResult("wgroup", "unsupported", p=3, group="cyclic:3"),
        CheckResult("main_theorem", "pass", p=2, group="dihedral:8"),
        CheckResult("main_theorem", "fail-expected", p=2, group="cyclic:2"),
    ]
    report = check_report({"verb": "verify-all"}, results)
    assert [c["group"] for c in report.results["checks"]] == ["cyclic:2", "dihedral:8", "cyclic:3"]
    assert report.results["summary"]["pass"] == 1
    assert report.verdict == "pass" and report.exit_code == 0
    assert combine_verdicts(["pass", "fail", "unsupported"]) == "fail"
    with pytest.raises(ValueError):
        CheckResult("wgroup", "maybe")


def test_verify_all_writes_log(tmp_path):
    log_path = tmp_path / "verify.jsonl"
    with open(log_path, "w", encoding="utf-8") as log:
        report = verify_all([2], 8, names=["counterexamples", "main_theorem"], log=log)
    assert report.verdict == "pass"
    summary = load_log(log_path)
    assert summary["primes"] == [2]
    assert summary["order_cap"] == 8
    assert summary["verdict"] == "pass"
    assert len(summary["checks"]) == len(report.results["checks"])


def test_verify_all_without_log():
    report = verify_all([3], 9, names=["series_duality"])
    assert report.command == {"verb": "verify-all", "p": [3], "order_cap": 9, "checks": ["series_duality"]}
    assert [c["group"] for c in report.results["checks"]] == ["cyclic:1", "cyclic:3", "cyclic:9", "elementary:3:2"]


def _broken_check(name, args):
    if args.get("group") == "cyclic:2":
        raise ValueError("cannot reshape array")
    return CheckResult(name, "pass", p=args.get("p"), group=args.get("group"))


def test_unexpected_exception_is_recorded_as_fail(monkeypatch, caplog):
    monkeypatch.setattr("descent3.cli.run_check", _broken_check)
    result, seconds = timed_check("main_theorem", {"group": "cyclic:2", "p": 2})
    assert result.verdict == "fail"
    assert result.details["error"] == "ValueError: cannot reshape array"
    assert seconds >= 0
    assert "チェックが例外で終了しました" in caplog.text


def test_verify_all_continues_past_unexpected_exception(monkeypatch):
    monkeypatch.setattr("descent3.cli.run_check", _broken_check)
    report = verify_all([2], 4, names=["main_theorem"])
    checks = report.results["checks"]
    assert [c["group"] for c in checks] == ["cyclic:1", "cyclic:2", "cyclic:4", "elementary:2:2"]
    assert [c["verdict"] for c in checks] == ["pass", "fail", "pass", "pass"]
    assert report.verdict == "fail" and report.exit_code == 1


def test_resume_runs_only_missing_checks(tmp_path, monkeypatch):
    log_path = tmp_path / "verify.jsonl"
    with open(log_path, "w", encoding="utf-8") as log:
        verify_all([2], 8, names=["counterexamples", "list_necessity"], log=log)
    lines = log_path.read_text(encoding="utf-8").splitlines()
    # start と 1 件目のチェックだけ残す
    log_path.write_text("\n".join(lines[:2]) + "\n", encoding="utf-8")
    assert load_log(log_path)["verdict"] is None

    ran = []

    def recording_check(name, args):
        ran.append(name)
        return run_check(name, args)

    monkeypatch.setattr("descent3.cli.run_check", recording_check)
    with open(log_path, "a", encoding="utf-8") as log:
        report = resume_verify_all(log_path, log=log)
    assert ran == ["list_necessity"]
    assert report.command["resumed"] is True
    assert report.command["checks"] == ["counterexamples", "list_necessity"]
    assert [c["check"] for c in report.results["checks"]] == ["counterexamples", "list_necessity"]
    assert report.results["checks"][0]["details"] == {"resumed": True}
    summary = load_log(log_path)
    assert summary["verdict"] == report.verdict == "pass"
    assert len(summary["checks"]) == 2


@pytest.mark.slow
@pytest.mark.parametrize("p, cap", [(2, 32), (3, 81)])
def test_verify_all_catalog(p, cap):
    report = verify_all([p], cap, log=io.StringIO())
    failures = [c for c in report.results["checks"] if c["verdict"] == "fail"]
    assert not failures
    assert report.verdict == "pass"
