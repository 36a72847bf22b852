from ..cohomology import h2
from ..descent import hoechsmann_check
from ..extensions import (
    are_equivalent,
    baer_sum,
    classify_middle,
    extension_table,
    omega_catalog,
    omega_indices,
    to_cocycle,
    twist,
)
from ..groups import is_isomorphic, make_group, normal_subgroups, quotient
from ..report import CheckResult
from .cohomology import GROUP_PARAMS, PRIME_PARAMS

EXTENSION_CHECKS = [
    {
        "type": "check",
        "check": {
            "name": "baer_sum_modular",
            "description": "ω₄ と ω₆ の Baer 和が ω₅ と同値（p は奇素数）",
            "parameters": PRIME_PARAMS,
            "odd_only": True,
        },
    },
    {
        "type": "check",
        "check": {
            "name": "extension_classification",
            "description": "cup・Λ・Bockstein 類から作った拡大が対応する ω_i と同値",
            "parameters": PRIME_PARAMS,
        },
    },
    {
        "type": "check",
        "check": {
            "name": "embedding_bijection",
            "description": "埋め込み問題の解の個数 = trg(φ) = α となる φ ∈ H¹(M)^G の個数 × |Hom(G/M, A)|",
            "parameters": GROUP_PARAMS,
            "small": True,
        },
    },
]


def check_baer_sum_modular(p: int) -> CheckResult:
    left, right, expected = omega_catalog(4, p), omega_catalog(6, p), omega_catalog(5, p)
    total = baer_sum(left, right)
    h = h2(expected.base, p)
    classes = [h.coordinates(to_cocycle(w)) for w in (left, right, expected)]
    class_sum = tuple((a + b) % f for a, b, f in zip(classes[0], classes[1], h.invariant_factors))
    items = {
        "equivalent": are_equivalent(total, expected) is not None,
        "class_sum": class_sum == classes[2],
    }
    details = {**items, "middle": classify_middle(total.middle),
               "expected_middle": classify_middle(expected.middle)}
    return CheckResult("baer_sum_modular", "pass" if all(items.values()) else "fail",
                       p=p, details=details)


def check_extension_classification(p: int) -> CheckResult:
    rows = extension_table(p)
    failures = [{"base": r.base, "kind": r.kind, "psi": list(r.psi), "psi2": list(r.psi2),
                 "case": r.case, "omega": r.omega} for r in rows if not r.equivalent]
    cases = sorted({r.case for r in rows})
    details = {"rows": len(rows), "cases": cases, "failures": failures[:5]}
    return CheckResult("extension_classification", "fail" if failures else "pass",
                       p=p, details=details)


def check_embedding_bijection(group: str, p: int) -> CheckResult:
    g = make_group(group)
    triples = 0
    solvable = 0
    bad = []
    for m_sub in normal_subgroups(g):
        if p * p % m_sub.index:
            continue
        qg, proj = quotient(g, m_sub)
        for i in omega_indices(p):
            w = omega_catalog(i, p)
            if w.base.order != qg.order:
                continue
            theta = is_isomorphic(qg, w.base)
            if theta is None:
                continue
            report = hoechsmann_check(proj, twist(w, theta))
            triples += 1
            solvable += report.solutions > 0
            if not report.holds:
                bad.append({"normal_subgroup": list(m_sub.members), "omega": i, **report.to_dict()})
    details = {"triples": triples, "solvable": solvable, "failures": bad[:5]}
    return CheckResult("embedding_bijection", "fail" if bad else "pass", p=p, group=group,
                       details=details)
