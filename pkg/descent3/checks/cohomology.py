import itertools
from math import gcd

import numpy as np

from ..cohomology import (
    Cochain1,
    bockstein,
    cup,
    d1,
    h1,
    h1_basis,
    h2,
    inflate,
    invariants_h1,
    is_2cocycle,
    restrict,
    span_size,
    sym_sk_decompose,
    transgression,
)
from ..groups import make_group, normal_subgroups, quotient
from ..report import CheckResult
from ..series import is_central_exponent_step, next_term, q_central_series
from ..settings import ENUMERATION_CAP

GROUP_PARAMS = {
    "type": "object",
    "properties": {
        "group": {"type": "string", "description": "群指定（例: dihedral:8）"},
        "p": {"type": "integer", "description": "素数"},
    },
    "required": ["group", "p"],
}

PRIME_PARAMS = {
    "type": "object",
    "properties": {"p": {"type": "integer", "description": "素数"}},
    "required": ["p"],
}

COHOMOLOGY_CHECKS = [
    {
        "type": "check",
        "check": {
            "name": "cohomology_engine",
            "description": "d∘d = 0、|H²(Z/n, Z/m)| = gcd(n, m)、(Z/q)ⁿ での Ψ(H²_dec) = Skew と β の像 = H²_sym、β(ψ) = ψ∪ψ (q = 2)",
            "parameters": PRIME_PARAMS,
        },
    },
    {
        "type": "check",
        "check": {
            "name": "cohomology_identities",
            "description": "β の加法性、cup の反可換性、H² 分解の往復を群ごとに確かめる",
            "parameters": GROUP_PARAMS,
        },
    },
    {
        "type": "check",
        "check": {
            "name": "pontryagin_duality",
            "description": "∩{Ker φ : φ ∈ H¹(N)^G} = N^q[N, G] を全ての正規部分群 N で確かめる",
            "parameters": GROUP_PARAMS,
        },
    },
    {
        "type": "check",
        "check": {
            "name": "five_term",
            "description": "Ker(trg) = Im(res) と Ker(inf) = Im(trg) を全ての正規部分群 N で確かめる",
            "parameters": GROUP_PARAMS,
            "small": True,
        },
    },
    {
        "type": "check",
        "check": {
            "name": "series_duality",
            "description": "|G⁽ⁱ⁾/G⁽ⁱ⁺¹⁾| = |H¹(G⁽ⁱ⁾)^G| と各段が中心的で冪数 q",
            "parameters": GROUP_PARAMS,
        },
    },
]


def _moduli(p: int) -> list[int]:
    """確かめる係数 q（q ≤ 4 の素冪）"""
    return [q for q in (p, p * p) if q <= 4] or [p]


def _verdict(items: dict) -> str:
    return "pass" if all(items.values()) else "fail"


def _power_spec(q: int, n: int) -> str:
    spec = f"cyclic:{q}"
    for _ in range(n - 1):
        spec = f"direct:{spec},cyclic:{q}"
    return spec


def _elementary_facts(spec: str, q: int) -> dict:
    """(Z/q)ⁿ 型の可換群での H² の構造"""
    g = make_group(spec)
    h = h2(g, q)
    dec = sym_sk_decompose(h)
    chars = [c for c, _ in h1_basis(g, q)]
    cups = [cup(a, b) for a, b in itertools.product(chars, repeat=2)]
    betas = [bockstein(c) for c in chars]
    skew_hits = [dec.psi(c) for c in cups]
    beta_classes = {h.coordinates(bockstein(psi)) for psi in h1(g, q)}
    gens = [h.coordinates(c) for c in cups] + [h.coordinates(b) for b in betas]
    cup_only = span_size([h.coordinates(c) for c in cups], h.invariant_factors)
    return {
        "skew_from_decomposable": span_size(skew_hits, dec.skew.orders) == dec.skew.order,
        "order_splits": h.order == dec.sym_order * dec.skew.order,
        "beta_injective": len(beta_classes) == len(h1(g, q)),
        "beta_symmetric": all(not any(dec.psi(b)) for b in betas),
        "beta_onto_sym": len(beta_classes) == dec.sym_order,
        "generated": span_size(gens, h.invariant_factors) == h.order,
        "cup_alone": q != 2 or cup_only == h.order,
    }


def check_cohomology_engine(p: int) -> CheckResult:
    items: dict[str, bool] = {}
    rng = np.random.default_rng(0)
    for spec in (f"cyclic:{p * p}", "dihedral:8" if p == 2 else f"heisenberg:{p}"):
        g = make_group(spec)
        ok = True
        for _ in range(100):
            values = rng.integers(0, p, size=g.order)
            values[0] = 0
            ok = ok and is_2cocycle(d1(Cochain1(g, p, values)))
        items[f"dd_zero[{spec}]"] = ok

    for n, m in ((2, 2), (4, 2), (9, 3)):
        if n % p == 0:
            items[f"h2_cyclic[{n},{m}]"] = h2(make_group(f"cyclic:{n}"), m).order == gcd(n, m)

    for q in _moduli(p):
        for n in (1, 2, 3):
            for key, value in _elementary_facts(_power_spec(q, n), q).items():
                items[f"{key}[(Z/{q})^{n}]"] = value
    extra = [("direct:cyclic:4,cyclic:2", 4)] if p == 2 else [("cyclic:9", 9)]
    for spec, q in extra:
        facts = _elementary_facts(spec, q)
        items[f"beta_onto_sym[{spec},{q}]"] = facts["beta_injective"] and facts["beta_onto_sym"]

    if p == 2:
        for spec in ("cyclic:2", "cyclic:4", "elementary:2:2", "dihedral:8", "quaternion:8"):
            g = make_group(spec)
            h = h2(g, 2)
            items[f"beta_is_square[{spec}]"] = all(
                h.same_class(bockstein(psi), cup(psi, psi)) for psi in h1(g, 2))
    return CheckResult("cohomology_engine", _verdict(items), p=p, details=items)


def check_cohomology_identities(group: str, p: int) -> CheckResult:
    g = make_group(group)
    h = h2(g, p)
    basis = [c for c, _ in h1_basis(g, p)]
    pairs = list(itertools.product(basis, repeat=2))
    items = {
        "beta_additive": all(h.same_class(bockstein(a + b), bockstein(a) + bockstein(b))
                             for a, b in pairs),
        "cup_anticommutative": all(h.same_class(cup(a, b), -cup(b, a)) for a, b in pairs),
    }
    chars = h1(g, p)
    if p == 2:
        items["beta_is_square"] = all(h.same_class(bockstein(psi), cup(psi, psi)) for psi in chars)
    else:
        items["cup_alternate"] = all(h.is_zero_class(cup(psi, psi)) for psi in chars)
    round_trip = True
    for a, b in pairs:
        c = cup(a, b) + bockstein(a)
        coords, witness = h.decompose(c)
        round_trip = round_trip and (h.cocycle(coords) + d1(witness)) == c
    items["decompose_round_trip"] = round_trip
    details = {**items, "h2_invariant_factors": list(h.invariant_factors)}
    return CheckResult("cohomology_identities", _verdict(items), p=p, group=group, details=details)


def check_pontryagin_duality(group: str, p: int) -> CheckResult:
    g = make_group(group)
    pairs = 0
    bad = []
    for q in _moduli(p):
        for n in normal_subgroups(g):
            phis = invariants_h1(n, q)
            _, emb = n.as_group
            common = np.ones(n.order, dtype=bool)
            for phi in phis:
                common &= phi.values == 0
            lower = next_term(n, g, q)
            pairs += 1
            same = tuple(int(x) for x in np.sort(emb.images[common])) == lower.members
            if not same or len(phis) != n.order // lower.order:
                bad.append({"q": q, "normal_subgroup": list(n.members)})
    details = {"pairs": pairs, "failures": bad[:5]}
    return CheckResult("pontryagin_duality", "fail" if bad else "pass", p=p, group=group,
                       details=details)


def check_five_term(group: str, p: int) -> CheckResult:
    g = make_group(group)
    hg = h2(g, p)
    chars = h1(g, p)
    pairs = 0
    bad = []
    for n in normal_subgroups(g):
        qg, proj = quotient(g, n)
        hq = h2(qg, p)
        trg = {phi.key(): hq.coordinates(transgression(n, phi)[0]) for phi in invariants_h1(n, p)}
        ker_trg = {k for k, c in trg.items() if not any(c)}
        im_res = {restrict(psi, n).key() for psi in chars}
        if hq.order > ENUMERATION_CAP:
            continue
        ker_inf = set()
        for coords in itertools.product(*(range(f) for f in hq.invariant_factors)):
            if hg.is_zero_class(inflate(hq.cocycle(coords), proj)):
                ker_inf.add(tuple(coords))
        pairs += 1
        if ker_trg != im_res or ker_inf != set(trg.values()):
            bad.append(list(n.members))
    return CheckResult("five_term", "fail" if bad else "pass", p=p, group=group,
                       details={"pairs": pairs, "failures": bad[:5]})


def check_series_duality(group: str, p: int) -> CheckResult:
    g = make_group(group)
    items: dict[str, bool] = {}
    for q in _moduli(p):
        series = q_central_series(g, q)
        steps = range(1, series.length)
        items[f"duality[q={q}]"] = all(
            a.order // b.order == len(invariants_h1(a, q))
            for a, b in zip(series.terms, series.terms[1:]))
        items[f"central_exponent[q={q}]"] = all(is_central_exponent_step(series, i) for i in steps)
        items[f"reaches_trivial[q={q}]"] = series.terms[-1].order == 1
    return CheckResult("series_duality", _verdict(items), p=p, group=group, details=items)
