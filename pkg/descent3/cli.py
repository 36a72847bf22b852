import argparse
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import nullcontext
from pathlib import Path

from .catalog import catalog_specs
from .checks import check_names, plan_checks, run_check
from .cohomology import bockstein, cup, h1_basis, h1_order, h2, sym_sk_decompose
from .descent import grt_check, verify_main_theorem, wgroup_properties
from .errors import ConfigError, Descent3Error
from .extensions import (
    are_equivalent,
    baer_sum,
    classify_middle,
    extension_table,
    omega_catalog,
    omega_indices,
    to_cocycle,
)
from .groups import make_group, parse_group_spec, same_group
from .report import CheckResult, Report, check_report, render
from .runlog import load_log, write_log
from .series import q_central_series, w_quotient
from .settings import VERIFY_ORDER_CAP, VERIFY_PRIMES, order_cap

logger = logging.getLogger(__name__)

VERBS = ("catalog", "cohomology", "series", "extension", "grt", "main-theorem", "wgroup", "verify-all")
# H² の基底コサイクルを出力に含める位数の上限
WITNESS_ORDER_CAP = 32


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="descent3", description="有限群の降下 q-中心列と Galois 関係型の検証")
    parser.add_argument("verb", choices=VERBS, help="実行するコマンド")
    parser.add_argument("action", nargs="?", choices=("show", "baer", "classify"),
                        help="extension の動作（show / baer / classify）")
    parser.add_argument("--group", "-g", help="群指定（例: dihedral:8, direct:cyclic:9,cyclic:3）")
    parser.add_argument("--p", type=int, nargs="+", help="素数（verify-all, catalog は複数可）")
    parser.add_argument("--q", type=int, help="q（素冪）")
    parser.add_argument("--modulus", "-m", type=int, help="係数 Z/m の m")
    parser.add_argument("--omega", help="extension show で表示する ω（例: omega5 または 5）")
    parser.add_argument("--left", help="extension baer の左の ω")
    parser.add_argument("--right", help="extension baer の右の ω")
    parser.add_argument("--format", "-f", choices=("json", "text"), default="json", help="出力形式（デフォルト: json）")
    parser.add_argument("--order-cap", type=int, help="群の位数上限（環境変数 DESCENT3_ORDER_CAP より優先）")
    parser.add_argument("--jobs", "-j", type=int, default=1, help="verify-all の並列数")
    parser.add_argument("--check", nargs="+", choices=check_names(), metavar="NAME",
                        help="verify-all で実行するチェック名")
    parser.add_argument("--log", metavar="LOG_FILE", help="verify-all の実行ログ（JSONL）")
    parser.add_argument("--resume", metavar="LOG_FILE", help="中断した verify-all をログから再開")
    parser.add_argument("--verbose", "-v", action="count", default=0, help="診断出力を増やす（-vv でデバッグ）")
    return parser


def _require(value, flag: str, verb: str):
    if value is None:
        raise ConfigError(f"{verb} には {flag} が必要です")
    return value


def _single_p(args) -> int:
    primes = _require(args.p, "--p", args.verb)
    if len(primes) != 1:
        raise ConfigError(f"{args.verb} の --p は 1 つだけ指定してください")
    return primes[0]


def _omega_index(text: str) -> int:
    raw = text.strip().lower().removeprefix("omega").removeprefix("ω")
    if not raw.isdigit():
        raise ConfigError(f"ω の指定が不正です: {text!r}")
    return int(raw)


def _group(args):
    return make_group(_require(args.group, "--group", args.verb), args.order_cap)


def _catalog(args) -> Report:
    primes = args.p or list(VERIFY_PRIMES)
    cap = order_cap(args.order_cap)
    results = {}
    for p in primes:
        results[str(p)] = [{"spec": s, "order": parse_group_spec(s).order()}
                           for s in catalog_specs(p, cap)]
    return Report({"verb": "catalog", "p": primes, "order_cap": cap}, results, "pass")


def _cohomology(args) -> Report:
    g = _group(args)
    m = _require(args.modulus, "--modulus", args.verb)
    h = h2(g, m)
    basis = h1_basis(g, m)
    results = {
        "group_spec": g.name,
        "order": g.order,
        "modulus": m,
        "h1": {"invariant_factors": [o for _, o in basis], "order": h1_order(g, m)},
        "h2": {"invariant_factors": list(h.invariant_factors), "order": h.order},
        "bockstein": [list(h.coordinates(bockstein(c))) for c, _ in basis],
        "cup": [[list(h.coordinates(cup(a, b))) for b, _ in basis] for a, _ in basis],
    }
    if g.is_abelian:
        dec = sym_sk_decompose(h)
        results["h2_sym_order"] = dec.sym_order
        results["skew_order"] = dec.skew.order
    if g.order <= WITNESS_ORDER_CAP:
        results["h2_basis"] = [c.to_dict() for c in h.basis]
    command = {"verb": "cohomology", "group": g.name, "modulus": m}
    return Report(command, results, "pass")


def _series(args) -> Report:
    g = _group(args)
    q = _require(args.q, "--q", args.verb)
    series = q_central_series(g, q)
    w, _ = w_quotient(g, q)
    results = {
        "group_spec": g.name,
        "q": q,
        "length": series.length,
        "orders": [t.order for t in series.terms],
        "factor_orders": series.factor_orders(),
        "terms": series.to_dict(),
        "w_order": w.order,
        "w_name": classify_middle(w),
    }
    return Report({"verb": "series", "group": g.name, "q": q}, results, "pass")


def _extension_summary(w) -> dict:
    return {"name": w.name, "base": w.base.name, "middle": classify_middle(w.middle),
            "middle_order": w.middle.order, "extension": w.to_dict(),
            "cocycle": to_cocycle(w).to_dict()}


def _equivalent_omegas(w, p: int) -> list[str]:
    found = []
    for i in omega_indices(p):
        other = omega_catalog(i, p)
        if same_group(other.base, w.base) and are_equivalent(w, other) is not None:
            found.append(f"omega{i}")
    return found


def _extension(args) -> Report:
    action = _require(args.action, "action (show / baer / classify)", args.verb)
    p = _single_p(args)
    command = {"verb": "extension", "action": action, "p": [p]}
    if action == "show":
        i = _omega_index(_require(args.omega, "--omega", "extension show"))
        command["omega"] = i
        return Report(command, _extension_summary(omega_catalog(i, p)), "pass")
    if action == "baer":
        left = _require(args.left, "--left", "extension baer")
        right = _require(args.right, "--right", "extension baer")
        command.update(left=left, right=right)
        total = baer_sum(omega_catalog(_omega_index(left), p), omega_catalog(_omega_index(right), p))
        total_summary = _extension_summary(total)
        total_summary["name"] = f"{left}+{right}"
        results = {"sum": total_summary, "equivalent_to": _equivalent_omegas(total, p)}
        return Report(command, results, "pass")
    rows = extension_table(p)
    results = {"rows": [{"base": r.base, "kind": r.kind, "psi": list(r.psi), "psi2": list(r.psi2),
                         "case": r.case, "omega": f"omega{r.omega}", "middle": r.middle,
                         "equivalent": r.equivalent} for r in rows]}
    return Report(command, results, "pass" if all(r.equivalent for r in rows) else "fail")


def _grt(args) -> Report:
    g = _group(args)
    q = _require(args.q, "--q", args.verb)
    report = grt_check(g, q)
    if not report.supported:
        verdict = "unsupported"
    else:
        verdict = "pass" if report.passed else "fail"
    return Report({"verb": "grt", "group": g.name, "q": q}, report.to_dict(), verdict)


def _main_theorem(args) -> Report:
    g = _group(args)
    p = _single_p(args)
    report = verify_main_theorem(g, p)
    return Report({"verb": "main-theorem", "group": g.name, "p": [p]}, report.to_dict(), report.verdict)


def _wgroup(args) -> Report:
    g = _group(args)
    p = _single_p(args)
    report = wgroup_properties(g, p)
    if not report.grt:
        verdict = "unsupported"
    else:
        verdict = "pass" if report.holds else "fail"
    return Report({"verb": "wgroup", "group": g.name, "p": [p]}, report.to_dict(), verdict)


def timed_check(name: str, args: dict) -> tuple[CheckResult, float]:
    """1 チェックを実行し所要時間と組にする（例外は fail として返す）"""
    start = time.perf_counter()
    where = {"p": args.get("p"), "group": args.get("group")}
    try:
        result = run_check(name, args)
    except Descent3Error as e:
        logger.warning("%s %s: %s", name, where, e)
        result = CheckResult(name, "fail", **where, details={"error": str(e)})
    except Exception as e:
        logger.exception("%s %s: チェックが例外で終了しました", name, where)
        result = CheckResult(name, "fail", **where, details={"error": f"{type(e).__name__}: {e}"})
    return result, time.perf_counter() - start


def _run_plan(plan, jobs: int, log) -> list[CheckResult]:
    with ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else nullcontext() as pool:
        if pool is None:
            outcomes = (timed_check(name, args) for name, args in plan)
        else:
            futures = [pool.submit(timed_check, name, args) for name, args in plan]
            outcomes = (f.result() for f in futures)
        results = []
        for result, seconds in outcomes:
            logger.info("%s %s p=%s: %s (%.2fs)", result.check, result.group or "-",
                        result.p, result.verdict, seconds)
            write_log(log, "check", check=result.check, group=result.group, p=result.p,
                      verdict=result.verdict, seconds=round(seconds, 3))
            results.append(result)
    return results


def _verify_command(primes, cap: int, names) -> dict:
    command = {"verb": "verify-all", "p": list(primes), "order_cap": cap}
    if names:
        command["checks"] = sorted(names)
    return command


def verify_all(primes, cap: int, *, jobs: int = 1, names=None, log=None) -> Report:
    """カタログ全体のチェックを実行し、(チェック名, 群, p) の順に並べる"""
    plan = plan_checks(primes, cap, names)
    write_log(log, "start", primes=list(primes), order_cap=cap, checks=len(plan),
              names=sorted(names) if names else None)
    logger.info("verify-all: %d チェック (p=%s, cap=%d, jobs=%d)", len(plan), list(primes), cap, jobs)
    results = _run_plan(plan, jobs, log)
    report = check_report(_verify_command(primes, cap, names), results)
    write_log(log, "end", verdict=report.verdict)
    return report


def resume_verify_all(log_path: Path, *, jobs: int = 1, log=None) -> Report:
    """ログに記録済みのチェックは判定を引き継ぎ、残りだけを実行する"""
    state = load_log(log_path)
    primes, cap, names = state["primes"], state["order_cap"], state["names"]
    done = {(r["check"], r["group"], r["p"]): r for r in state["checks"]}
    plan = [(name, args) for name, args in plan_checks(primes, cap, names)
            if (name, args.get("group"), args.get("p")) not in done]
    logger.info("verify-all 再開: 記録済み %d, 残り %d", len(done), len(plan))
    results = [CheckResult(r["check"], r["verdict"], p=r["p"], group=r["group"],
                           details={"resumed": True}) for r in done.values()]
    results += _run_plan(plan, jobs, log)
    command = _verify_command(primes, cap, names)
    command["resumed"] = True
    report = check_report(command, results)
    write_log(log, "end", verdict=report.verdict)
    return report


def _verify_all(args) -> Report:
    if args.jobs < 1:
        raise ConfigError(f"--jobs は 1 以上: {args.jobs}")
    if args.resume:
        log_path = Path(args.resume)
        if not log_path.exists():
            raise ConfigError(f"ログファイルが見つかりません: {log_path}")
        with open(log_path, "a", encoding="utf-8") as log:
            return resume_verify_all(log_path, jobs=args.jobs, log=log)
    primes = args.p or list(VERIFY_PRIMES)
    cap = args.order_cap if args.order_cap is not None else VERIFY_ORDER_CAP
    if cap < 1:
        raise ConfigError(f"位数上限は正の整数: {cap}")
    if args.log:
        with open(args.log, "w", encoding="utf-8") as log:
            return verify_all(primes, cap, jobs=args.jobs, names=args.check, log=log)
    return verify_all(primes, cap, jobs=args.jobs, names=args.check)


def run(args) -> Report:
    """コマンドを担当モジュールに振り分ける"""
    dispatch = {
        "catalog": _catalog,
        "cohomology": _cohomology,
        "series": _series,
        "extension": _extension,
        "grt": _grt,
        "main-theorem": _main_theorem,
        "wgroup": _wgroup,
        "verify-all": _verify_all,
    }
    return dispatch[args.verb](args)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING if args.verbose == 0 else logging.INFO if args.verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    if args.action is not None and args.verb != "extension":
        parser.error(f"{args.verb} に動作 {args.action} は指定できません")
    try:
        report = run(args)
    except Descent3Error as e:
        print(f"エラー: {e}", file=sys.stderr)
        return 2
    print(render(report, args.format))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
