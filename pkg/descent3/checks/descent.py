from ..descent import (
    delta,
    distinguished_by_definition,
    distinguished_by_embedding,
    distinguished_by_quotient,
    epi_lifting_check,
    grt_check,
    lambda_surjectivity_check,
    list_necessity_check,
    maximal_p_quotient,
    reduced_list_intersection,
    verify_main_theorem,
    wgroup_properties,
)
from ..extensions import classify_middle
from ..groups import center, hom_from_images, make_group, quotient
from ..report import CheckResult
from ..series import q_central_series, w_quotient
from .cohomology import GROUP_PARAMS, PRIME_PARAMS

DESCENT_CHECKS = [
    {
        "type": "check",
        "check": {
            "name": "main_theorem",
            "description": "G⁽³⁾ ≤ Δ_G ≤ G⁽²⁾、GRT なら G⁽³⁾ = Δ_G と Λ の全射性",
            "parameters": GROUP_PARAMS,
        },
    },
    {
        "type": "check",
        "check": {
            "name": "counterexamples",
            "description": "Q₈, Z/p, H_{p³} と二面体群・Z/p³ モデルの反例が再現する",
            "parameters": PRIME_PARAMS,
        },
    },
    {
        "type": "check",
        "check": {
            "name": "distinguished_routes",
            "description": "定義・商群・埋め込み問題の三通りで区別部分群が一致し、指数が p³ を割る",
            "parameters": GROUP_PARAMS,
            "equivalence": True,
        },
    },
    {
        "type": "check",
        "check": {
            "name": "corollary_lists",
            "description": "GRT 群で縮小リスト（と短いリスト）の共通部分が G⁽³⁾ に一致する",
            "parameters": GROUP_PARAMS,
        },
    },
    {
        "type": "check",
        "check": {
            "name": "local_field_model",
            "description": "semidirect:p²,p²,1+p の M_{p³} 商、{1, Z/p²} の共通部分、W 群の性質",
            "parameters": PRIME_PARAMS,
            "odd_only": True,
        },
    },
    {
        "type": "check",
        "check": {
            "name": "list_necessity",
            "description": "縮小リストの各成員が必要であることをモデル群で示す",
            "parameters": PRIME_PARAMS,
        },
    },
    {
        "type": "check",
        "check": {
            "name": "epi_lifting",
            "description": "全射 G → Z/p が Z/p² か M_{p³}（p = 2 では D₄）を経由する",
            "parameters": GROUP_PARAMS,
        },
    },
    {
        "type": "check",
        "check": {
            "name": "wgroup",
            "description": "GRT 群の W = G/G⁽³⁾ が W 群の性質を満たす",
            "parameters": GROUP_PARAMS,
        },
    },
]


def _verdict(items: dict) -> str:
    return "pass" if all(items.values()) else "fail"


def check_main_theorem(group: str, p: int) -> CheckResult:
    g = make_group(group)
    report = verify_main_theorem(g, p)
    surj = lambda_surjectivity_check(g, p)
    verdict = report.verdict
    if report.grt.passed and not surj["surjective"]:
        verdict = "fail"
    details = {
        **report.to_dict()["witnesses"],
        "sandwich": report.sandwich,
        "equal": report.equal,
        "grt": report.grt.passed,
        "lambda_surjective": surj["surjective"],
        "distinguished": sorted({name for _, name in report.distinguished}),
    }
    return CheckResult("main_theorem", verdict, p=p, group=group, details=details)


def _dihedral_model(spec: str) -> dict:
    """Z/2, Z/4 の商だけでは G⁽³⁾ より真に大きく、商は (Z/2)²"""
    g = make_group(spec)
    g3 = q_central_series(g, 2).term(3)
    n = reduced_list_intersection(g, 2, ("1", "Z/2", "Z/4"))
    return {
        f"strictly_larger[{spec}]": g3 < n,
        f"quotient_klein[{spec}]": classify_middle(quotient(g, n)[0]) == "(Z/2)^2",
    }


def check_counterexamples(p: int) -> CheckResult:
    items: dict[str, bool] = {}
    if p == 2:
        q8 = make_group("quaternion:8")
        grt = grt_check(q8, 2)
        d = delta(q8, 2)
        items["q8_delta_is_center"] = d.members == center(q8).members and d.order == 2
        items["q8_g3_trivial"] = q_central_series(q8, 2).term(3).order == 1
        items["q8_fails_i"] = grt.condition_i is False and grt.kernel_witness is not None
        for spec in ("dihedral:8", "dihedral:16"):
            items.update(_dihedral_model(spec))
    else:
        for spec in (f"cyclic:{p}", f"heisenberg:{p}"):
            g = make_group(spec)
            grt = grt_check(g, p)
            items[f"fails_ii[{spec}]"] = grt.condition_ii is False
            whole = reduced_list_intersection(g, p, "odd-reduced")
            items[f"reduced_list_is_g[{spec}]"] = whole.order == g.order
        w, _ = w_quotient(make_group(f"cyclic:{p ** 3}"), p)
        items["zhat_model_w"] = classify_middle(w) == f"Z/{p * p}"
    return CheckResult("counterexamples", _verdict(items), p=p, details=items)


def check_distinguished_routes(group: str, p: int) -> CheckResult:
    g = make_group(group)
    by_quotient = distinguished_by_quotient(g, p)
    routes = {
        "quotient": {n.members for n in by_quotient},
        "definition": {n.members for n in distinguished_by_definition(g, p)},
        "embedding": {n.members for n in distinguished_by_embedding(g, p)},
    }
    items = {
        "definition_matches": routes["definition"] == routes["quotient"],
        "embedding_matches": routes["embedding"] == routes["quotient"],
        "index_divides": all(p ** 3 % n.index == 0 for n in by_quotient),
        "exponent_divides": all(p * p % quotient(g, n)[0].exponent == 0 for n in by_quotient),
    }
    details = {**items, **{f"{k}_count": len(v) for k, v in routes.items()}}
    return CheckResult("distinguished_routes", _verdict(items), p=p, group=group, details=details)


def check_corollary_lists(group: str, p: int) -> CheckResult:
    g = make_group(group)
    if not grt_check(g, p).passed:
        return CheckResult("corollary_lists", "unsupported", p=p, group=group,
                           details={"grt": False})
    g3 = q_central_series(g, p).term(3)
    items: dict[str, bool] = {}
    reduced = "even-reduced" if p == 2 else "odd-reduced"
    items[reduced] = reduced_list_intersection(g, p, reduced).members == g3.members
    if p == 2 and maximal_p_quotient(g, 2)[0].order != 2:
        items["even-short"] = reduced_list_intersection(g, p, "even-short").members == g3.members
    return CheckResult("corollary_lists", _verdict(items), p=p, group=group, details=items)


def check_local_field_model(p: int) -> CheckResult:
    g = make_group(f"semidirect:{p * p},{p * p},{1 + p}")
    top = make_group(f"modular:{p}")
    # τ ↦ r, σ ↦ s
    epi = hom_from_images(g, top, [1, p * p])
    n0 = reduced_list_intersection(g, p, ("1", f"Z/{p * p}"))
    w = wgroup_properties(g, p)
    items = {
        "modular_quotient": epi.is_surjective(),
        "g3_trivial": q_central_series(g, p).term(3).order == 1,
        "n0_quotient": classify_middle(quotient(g, n0)[0]) == f"Z/{p * p}×Z/{p}",
        "order_p_in_w2": w.order_p_in_w2,
        "no_zp_factor": w.no_zp_factor,
    }
    return CheckResult("local_field_model", _verdict(items), p=p, details=items)


def check_list_necessity(p: int) -> CheckResult:
    rows = list_necessity_check(p)
    verdict = "pass" if all(r.necessary for r in rows) else "fail"
    return CheckResult("list_necessity", verdict, p=p, details={"rows": [r.to_dict() for r in rows]})


def check_epi_lifting(group: str, p: int) -> CheckResult:
    report = epi_lifting_check(make_group(group), p)
    if not report.precondition:
        verdict = "unsupported"
    else:
        verdict = "pass" if report.all_lift else "fail"
    return CheckResult("epi_lifting", verdict, p=p, group=group, details=report.to_dict())


def check_wgroup(group: str, p: int) -> CheckResult:
    report = wgroup_properties(make_group(group), p)
    if not report.grt:
        verdict = "unsupported"
    else:
        verdict = "pass" if report.holds else "fail"
    return CheckResult("wgroup", verdict, p=p, group=group, details=report.to_dict())
