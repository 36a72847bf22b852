"""Ω(G)、Λ_G、Galois 関係型の判定と区別部分群

q は素数 p に限る。H¹(G, Z/p) は h1_basis の基底座標による F_p ベクトル空間として、
H² の類は h2(G, p) の座標として扱う。
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache, reduce

import galois
import numpy as np

from .cohomology import (
    Cochain1,
    Cochain2,
    H2Structure,
    bockstein,
    cup,
    h1_basis,
    h1_order,
    h2,
    inflate,
    invariants_h1,
    transgression,
)
from .errors import OrderCapError, PreconditionError
from .extensions import (
    CentralExtension,
    classify_middle,
    from_cocycle,
    inject_inverse,
    to_cocycle,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    center,
    hom_from_images,
    hom_image_blocks,
    make_group,
    normal_subgroups,
    quotient,
    same_group,
)
from .linalg import in_span_fp, independent_rows_fp, nullspace_fp, rank_fp, solve_fp
from .series import CentralSeries, maximal_p_quotient, q_central_series, w_quotient
from .settings import GRT_PAIR_CAP, GRT_RANDOM_SAMPLES

logger = logging.getLogger(__name__)


def _check_prime(q: int) -> None:
    if not galois.is_prime(q):
        raise PreconditionError(f"q は素数に限ります: {q}")


# --- H¹ の座標 ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class H1Space:
    """H¹(G, Z/p) と基底座標。elements は座標の辞書式順"""

    group: FiniteGroup
    p: int
    basis: tuple[Cochain1, ...]
    elements: tuple[Cochain1, ...] = field(repr=False)
    element_coords: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, psi: Cochain1) -> np.ndarray:
        if psi.modulus != self.p or not same_group(psi.group, self.group):
            raise PreconditionError("群または法が一致しません")
        if not self.basis:
            if not psi.is_zero():
                raise PreconditionError("準同型ではありません")
            return np.zeros(0, dtype=np.int64)
        values = np.stack([b.values for b in self.basis], axis=1)
        x = solve_fp(values, psi.values, self.p)
        if x is None:
            raise PreconditionError("準同型ではありません")
        return x


@lru_cache(maxsize=64)
def h1_space(g: FiniteGroup, p: int) -> H1Space:
    _check_prime(p)
    basis = tuple(c for c, _ in h1_basis(g, p))
    d = len(basis)
    coords = np.array(list(itertools.product(range(p), repeat=d)), dtype=np.int64).reshape(p ** d, d)
    values = np.stack([b.values for b in basis]) if d else np.zeros((0, g.order), dtype=np.int64)
    elements = tuple(Cochain1(g, p, row) for row in coords @ values % p)
    return H1Space(g, p, basis, elements, coords)


@dataclass(frozen=True, eq=False)
class LambdaData:
    """cup(b_i, b_j) と β(b_i) の H² 座標"""

    space: H1Space
    h2: H2Structure
    cup_classes: np.ndarray = field(repr=False)
    beta_classes: np.ndarray = field(repr=False)

    @property
    def cup_matrix(self) -> np.ndarray:
        d, r = self.space.dim, self.h2.rank
        return self.cup_classes.reshape(d * d, r)


@lru_cache(maxsize=64)
def lambda_data(g: FiniteGroup, p: int) -> LambdaData:
    space = h1_space(g, p)
    h = h2(g, p)
    d, r = space.dim, h.rank
    cups = np.zeros((d, d, r), dtype=np.int64)
    for i, j in itertools.product(range(d), repeat=2):
        cups[i, j] = h.coordinates(cup(space.basis[i], space.basis[j]))
    betas = np.array([h.coordinates(bockstein(b)) for b in space.basis],
                     dtype=np.int64).reshape(d, r)
    return LambdaData(space, h, cups, betas)


# --- Ω(G) ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class OmegaElement:
    """Ω(G) = (H¹⊗H¹) ⊕ H¹ の元（q = 2 ではテンソル部分のみ）"""

    group: FiniteGroup
    q: int
    tensor_part: tuple[tuple[int, Cochain1, Cochain1], ...] = ()
    h1_part: Cochain1 | None = None

    def __post_init__(self):
        _check_prime(self.q)
        merged: dict[tuple, tuple[int, Cochain1, Cochain1]] = {}
        for coef, psi, psi2 in self.tensor_part:
            for c in (psi, psi2):
                if c.modulus != self.q or not same_group(c.group, self.group):
                    raise PreconditionError("群または法が一致しません")
            key = (psi.key(), psi2.key())
            prev = merged[key][0] if key in merged else 0
            merged[key] = ((prev + int(coef)) % self.q, psi, psi2)
        terms = tuple(merged[k] for k in sorted(merged) if merged[k][0])
        object.__setattr__(self, "tensor_part", terms)
        h = self.h1_part
        if self.q == 2:
            if h is not None and not h.is_zero():
                raise PreconditionError("q = 2 では H¹ 成分を持ちません")
            h = None
        elif h is None:
            h = Cochain1.zero(self.group, self.q)
        elif h.modulus != self.q or not same_group(h.group, self.group):
            raise PreconditionError("群または法が一致しません")
        object.__setattr__(self, "h1_part", h)

    @staticmethod
    def zero(group: FiniteGroup, q: int) -> "OmegaElement":
        return OmegaElement(group, q)

    @staticmethod
    def simple(psi: Cochain1, psi2: Cochain1) -> "OmegaElement":
        """単純型の元 (ψ⊗ψ′, ψ)（q = 2 なら ψ⊗ψ′）"""
        q = psi.modulus
        return OmegaElement(psi.group, q, ((1, psi, psi2),), psi if q != 2 else None)

    def __add__(self, other: "OmegaElement") -> "OmegaElement":
        if self.q != other.q or not same_group(self.group, other.group):
            raise PreconditionError("群または法が一致しません")
        h = None if self.q == 2 else self.h1_part + other.h1_part
        return OmegaElement(self.group, self.q, self.tensor_part + other.tensor_part, h)

    def __rmul__(self, k: int) -> "OmegaElement":
        terms = tuple((int(k) * c, a, b) for c, a, b in self.tensor_part)
        h = None if self.q == 2 else int(k) * self.h1_part
        return OmegaElement(self.group, self.q, terms, h)

    def __neg__(self) -> "OmegaElement":
        return (-1) * self

    def __sub__(self, other: "OmegaElement") -> "OmegaElement":
        return self + (-other)

    def coordinates(self) -> tuple[int, ...]:
        """テンソル部分（d² 成分）と H¹ 部分の F_q 座標"""
        space = h1_space(self.group, self.q)
        d = space.dim
        tensor = np.zeros(d * d, dtype=np.int64)
        for coef, a, b in self.tensor_part:
            tensor += coef * np.outer(space.coordinates(a), space.coordinates(b)).ravel()
        parts = [tensor % self.q]
        if self.h1_part is not None:
            parts.append(space.coordinates(self.h1_part))
        return tuple(int(x) for x in np.concatenate(parts))

    def __eq__(self, other) -> bool:
        if not isinstance(other, OmegaElement):
            return NotImplemented
        return (self.q == other.q and same_group(self.group, other.group)
                and self.coordinates() == other.coordinates())

    __hash__ = object.__hash__

    def to_dict(self) -> dict:
        return {
            "group_spec": self.group.name,
            "q": self.q,
            "tensor": [{"coefficient": c, "left": a.key(), "right": b.key()}
                       for c, a, b in self.tensor_part],
            "h1": None if self.h1_part is None else list(self.h1_part.key()),
        }


def lambda_cocycle(alpha: OmegaElement) -> Cochain2:
    """Σ c·(ψ ∪ ψ′) + β(α₂) を代表するコサイクル"""
    total = Cochain2.zero(alpha.group, alpha.q)
    for coef, a, b in alpha.tensor_part:
        total = total + coef * cup(a, b)
    if alpha.h1_part is not None:
        total = total + bockstein(alpha.h1_part)
    return total


def lambda_eval(alpha: OmegaElement) -> tuple[int, ...]:
    """Λ_G(α) の H²(G, Z/q) での座標"""
    return lambda_data(alpha.group, alpha.q).h2.coordinates(lambda_cocycle(alpha))


# --- Galois 関係型 ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GrtReport:
    group_name: str | None
    q: int
    supported: bool
    condition_i: bool | None = None
    condition_ii: bool | None = None
    condition_iii: bool | None = None
    xi: Cochain1 | None = None
    kernel_witness: tuple[int, ...] | None = None
    cup_kernel_dim: int = 0
    simple_span_dim: int = 0
    random_checks: int = 0

    @property
    def passed(self) -> bool:
        return bool(self.supported and self.condition_i and self.condition_ii and self.condition_iii)

    def to_dict(self) -> dict:
        return {
            "supported": self.supported,
            "condition_i": self.condition_i,
            "condition_ii": self.condition_ii,
            "condition_iii": self.condition_iii,
            "passed": self.passed,
            "xi": None if self.xi is None else list(self.xi.key()),
            "kernel_witness": None if self.kernel_witness is None else list(self.kernel_witness),
            "cup_kernel_dim": self.cup_kernel_dim,
            "simple_span_dim": self.simple_span_dim,
        }


def simple_kernel_tensors(data: LambdaData) -> tuple[np.ndarray, np.ndarray]:
    """ψ ∪ ψ′ = 0 となる全ての (ψ, ψ′) の添字対とテンソル座標"""
    space, p = data.space, data.space.p
    n, d = len(space.elements), space.dim
    if n * n > GRT_PAIR_CAP:
        raise OrderCapError(f"(ψ, ψ′) の組 {n * n} が上限 {GRT_PAIR_CAP} を超えています")
    a = space.element_coords
    tensors = (a[:, None, :, None] * a[None, :, None, :]).reshape(n * n, d * d) % p
    images = tensors @ data.cup_matrix % p
    hit = np.flatnonzero(~images.any(axis=1))
    pairs = np.stack([hit // n, hit % n], axis=1)
    return pairs, tensors[hit]


def _xi_residuals(data: LambdaData) -> np.ndarray:
    """各 ξ について ψ_i ∪ ξ + β(ψ_i) の座標（全 i を並べる）"""
    x = data.space.element_coords
    res = np.einsum("aj,ijr->air", x, data.cup_classes) + data.beta_classes[None]
    return res.reshape(len(x), -1) % data.space.p


def _is_witness(data: LambdaData, xi: Cochain1) -> bool:
    coords = data.space.coordinates(xi)
    res = np.einsum("j,ijr->ir", coords, data.cup_classes) + data.beta_classes
    return not (res % data.space.p).any()


def grt_check(g: FiniteGroup, q: int) -> GrtReport:
    """条件 (i)(ii)(iii) を個別に判定する"""
    if not galois.is_prime(q):
        return GrtReport(g.name, q, supported=False)
    data = lambda_data(g, q)
    space = data.space
    d = space.dim

    cmat = data.cup_matrix
    kernel = nullspace_fp(cmat.T, q) if d else np.zeros((0, 0), dtype=np.int64)
    kernel_dim = d * d - (rank_fp(cmat, q) if cmat.size else 0)
    _, simple = simple_kernel_tensors(data)
    span_dim = rank_fp(simple, q) if simple.size else 0
    witness = None
    if span_dim < kernel_dim:
        for row in kernel:
            if not in_span_fp(simple, row, q):
                witness = tuple(int(x) for x in row)
                break
    cond_i = span_dim == kernel_dim

    ok = np.flatnonzero(~_xi_residuals(data).any(axis=1))
    xi = space.elements[int(ok[0])] if ok.size else None
    checks = 0
    cond_ii = xi is not None
    if xi is not None:
        rng = np.random.default_rng(0)
        picks = rng.choice(len(space.elements), size=min(len(space.elements), GRT_RANDOM_SAMPLES),
                           replace=False)
        for k in picks:
            psi = space.elements[int(k)]
            checks += 1
            if not data.h2.is_zero_class(cup(psi, xi) + bockstein(psi)):
                logger.warning("grt_check(%s): 基底での判定と全体での判定が一致しません", g.name)
                cond_ii = False
                break

    report = GrtReport(g.name, q, True, cond_i, cond_ii, True, xi, witness,
                       kernel_dim, span_dim, checks)
    logger.debug("grt_check(%s, %d): (i)=%s (ii)=%s", g.name, q, cond_i, cond_ii)
    return report


def decompose_kernel_element(alpha: OmegaElement, xi: Cochain1 | None = None) -> list[OmegaElement]:
    """Ker Λ の元を単純型の元の和に分解する"""
    g, q = alpha.group, alpha.q
    data = lambda_data(g, q)
    if any(lambda_eval(alpha)):
        raise PreconditionError("Λ(α) ≠ 0")
    pairs, simple = simple_kernel_tensors(data)
    chosen = independent_rows_fp(simple, q) if simple.size else []
    elements = data.space.elements

    def combination(rest: OmegaElement) -> list[tuple[int, Cochain1, Cochain1]]:
        d = data.space.dim
        target = np.array(rest.coordinates()[:d * d], dtype=np.int64)
        if not target.any():
            return []
        if not chosen:
            raise PreconditionError("テンソル部分が単純テンソルの張る空間に入りません")
        basis = simple[chosen]
        coeffs = solve_fp(basis.T, target, q)
        if coeffs is None:
            raise PreconditionError("テンソル部分が単純テンソルの張る空間に入りません")
        return [(int(c), elements[int(pairs[k][0])], elements[int(pairs[k][1])])
                for c, k in zip(coeffs, chosen) if c]

    if q == 2:
        out = []
        for c, a, b in combination(alpha):
            out.append(OmegaElement.simple(c * a, b))
        return out

    if xi is None:
        raise PreconditionError("q ≠ 2 では ξ が必要です")
    if not _is_witness(data, xi):
        raise PreconditionError("ξ は ψ ∪ ξ + β(ψ) = 0 を満たしません")
    summands = []
    rest = alpha
    if not alpha.h1_part.is_zero():
        first = OmegaElement.simple(alpha.h1_part, xi)
        summands.append(first)
        rest = alpha - first
    for c, a, b in combination(rest):
        psi = c * a
        summands.append(OmegaElement.simple(psi, b + xi))
        summands.append(OmegaElement.simple(-psi, xi))
    return summands


# --- 区別部分群 ---------------------------------------------------------------

LIST_IDS = ("odd-full", "odd-reduced", "even-full", "even-reduced", "even-short")


def quotient_list(p: int, list_id: str) -> tuple[str, ...]:
    """商群の候補リスト（classify_middle の名前で）"""
    if list_id not in LIST_IDS:
        raise PreconditionError(f"不明なリスト: {list_id}")
    if list_id.startswith("odd") and p == 2:
        raise PreconditionError(f"{list_id} は p ≠ 2 のみ")
    if list_id.startswith("even") and p != 2:
        raise PreconditionError(f"{list_id} は p = 2 のみ")
    pp, top = f"Z/{p * p}", f"M_{p ** 3}"
    return {
        "odd-full": ("1", f"Z/{p}", f"(Z/{p})^2", pp, top),
        "odd-reduced": ("1", pp, top),
        "even-full": ("1", "Z/2", "(Z/2)^2", "Z/4", "D4"),
        "even-reduced": ("1", "Z/2", "Z/4", "D4"),
        "even-short": ("1", "Z/4", "D4"),
    }[list_id]


def full_list(p: int) -> tuple[str, ...]:
    return quotient_list(p, "even-full" if p == 2 else "odd-full")


def quotient_names(g: FiniteGroup, p: int) -> list[tuple[Subgroup, str]]:
    """(G:N) が p³ を割る全ての正規部分群 N と G/N の名前"""
    out = []
    for n in normal_subgroups(g):
        if p ** 3 % n.index:
            continue
        out.append((n, classify_middle(quotient(g, n)[0])))
    return out


def kernels_with_quotients(g: FiniteGroup, p: int, names) -> list[tuple[Subgroup, str]]:
    names = set(names)
    return [(n, name) for n, name in quotient_names(g, p) if name in names]


def intersection(g: FiniteGroup, subgroups) -> Subgroup:
    """空の族の共通部分は G"""
    return reduce(Subgroup.intersect, subgroups, Subgroup.whole(g))


def distinguished_by_quotient(g: FiniteGroup, p: int) -> list[Subgroup]:
    _check_prime(p)
    return [n for n, _ in kernels_with_quotients(g, p, full_list(p))]


def _simple_pairs(qg: FiniteGroup, p: int) -> list[tuple[Cochain1, Cochain1]]:
    """G/M 上の単純型で核が自明な (ψ̄, ψ̄′)"""
    elements = h1_space(qg, p).elements
    out = []
    for a, b in itertools.product(elements, repeat=2):
        if not ((a.values == 0) & (b.values == 0))[1:].any():
            out.append((a, b))
    return out


def _case_class(a: Cochain1, b: Cochain1) -> Cochain2:
    c = cup(a, b)
    if a.modulus != 2:
        c = c + bockstein(a)
    return c


def _data_subgroups(g: FiniteGroup, p: int) -> list[Subgroup]:
    """G⁽²⁾ ≤ M かつ (G:M) | p² となる正規部分群 M（G/M ↪ (Z/p)²）"""
    g2 = q_central_series(g, p).term(2)
    return [m for m in normal_subgroups(g) if g2 <= m and p * p % m.index == 0]


def _check_index(n: Subgroup, p: int) -> None:
    if p ** 3 % n.index:
        raise PreconditionError(f"区別部分群の指数 {n.index} が {p}³ を割りません")


def distinguished_by_definition(g: FiniteGroup, p: int) -> list[Subgroup]:
    """データ (M, ᾱ, φ) を全て列挙し N = Ker(φ) を集める"""
    _check_prime(p)
    found: dict[tuple[int, ...], Subgroup] = {}
    for m_sub in _data_subgroups(g, p):
        qg, _ = quotient(g, m_sub)
        hq = h2(qg, p)
        targets = {hq.coordinates(_case_class(a, b)) for a, b in _simple_pairs(qg, p)}
        _, emb = m_sub.as_group
        for phi in invariants_h1(m_sub, p):
            c, _ = transgression(m_sub, phi)
            if hq.coordinates(c) in targets:
                members = emb.images[phi.values == 0]
                n = Subgroup.of(g, members)
                _check_index(n, p)
                found.setdefault(n.members, n)
    return sorted(found.values(), key=Subgroup.sort_key)


def embedding_solutions(proj: GroupHom, w: CentralExtension) -> list[GroupHom]:
    """project∘Φ = proj を満たす全ての Φ: G → B"""
    if not same_group(proj.codomain, w.base):
        raise PreconditionError("射影の終域と拡大の底が一致しません")
    w.check_exact()
    g = proj.domain
    cands = [np.flatnonzero(w.project.images == proj(x)) for x in g.generators]
    out = []
    for block in hom_image_blocks(g, w.middle, cands):
        out.extend(GroupHom(g, w.middle, row) for row in block)
    return out


def distinguished_by_embedding(g: FiniteGroup, p: int) -> list[Subgroup]:
    """埋め込み問題の解 Φ の核 Ker(Φ) を集める"""
    _check_prime(p)
    found: dict[tuple[int, ...], Subgroup] = {}
    for m_sub in _data_subgroups(g, p):
        qg, proj = quotient(g, m_sub)
        for a, b in _simple_pairs(qg, p):
            w = from_cocycle(_case_class(a, b))
            for sol in embedding_solutions(proj, w):
                n = sol.kernel()
                _check_index(n, p)
                found.setdefault(n.members, n)
    return sorted(found.values(), key=Subgroup.sort_key)


def delta(g: FiniteGroup, p: int) -> Subgroup:
    """Δ_G: 区別部分群全体の共通部分"""
    return intersection(g, distinguished_by_quotient(g, p))


def reduced_list_intersection(g: FiniteGroup, p: int, list_id) -> Subgroup:
    """リスト（識別子または名前の組）の商を持つ N 全体の共通部分"""
    _check_prime(p)
    if isinstance(list_id, str):
        names = quotient_list(p, list_id)
        if list_id == "even-short" and maximal_p_quotient(g, 2)[0].order == 2:
            raise PreconditionError("短いリストは G(2) ≇ Z/2 のときのみ")
    else:
        names = tuple(list_id)
    return intersection(g, [n for n, _ in kernels_with_quotients(g, p, names)])


# --- 主定理 -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MainTheoremReport:
    group: FiniteGroup
    p: int
    series: CentralSeries
    delta: Subgroup
    distinguished: tuple[tuple[Subgroup, str], ...]
    grt: GrtReport
    sandwich: bool
    equal: bool

    @property
    def verdict(self) -> str:
        if not self.sandwich:
            return "fail"
        if self.equal:
            return "pass"
        return "fail" if self.grt.passed else "fail-expected"

    def to_dict(self) -> dict:
        g3 = self.series.term(3)
        return {
            "group_spec": self.group.name,
            "p": self.p,
            "grt": self.grt.to_dict(),
            "series": self.series.to_dict(),
            "delta": list(self.delta.members),
            "distinguished": [{"members": list(n.members), "quotient_name": name}
                              for n, name in self.distinguished],
            "verdicts": {
                "sandwich": self.sandwich,
                "equal": self.equal,
                "verdict": self.verdict,
            },
            "witnesses": {
                "g2_order": self.series.term(2).order,
                "g3_order": g3.order,
                "delta_order": self.delta.order,
            },
        }


def verify_main_theorem(g: FiniteGroup, p: int) -> MainTheoremReport:
    """G⁽³⁾ ≤ Δ_G ≤ G⁽²⁾ と、GRT のとき G⁽³⁾ = Δ_G を確かめる"""
    _check_prime(p)
    series = q_central_series(g, p)
    dist = tuple(kernels_with_quotients(g, p, full_list(p)))
    d = intersection(g, [n for n, _ in dist])
    g2, g3 = series.term(2), series.term(3)
    report = MainTheoremReport(g, p, series, d, dist, grt_check(g, p),
                               g3 <= d and d <= g2, d.members == g3.members)
    logger.info("main-theorem %s p=%d: |Δ|=%d |G⁽³⁾|=%d → %s",
                g.name, p, d.order, g3.order, report.verdict)
    return report


# --- 埋め込み問題 -------------------------------------------------------------

@dataclass(frozen=True)
class HoechsmannReport:
    solutions: int
    targets: int
    fiber: int
    restrictions_match: bool
    inflation_consistent: bool

    @property
    def holds(self) -> bool:
        counts = self.solutions == self.targets * self.fiber
        return self.restrictions_match and counts and self.inflation_consistent

    def to_dict(self) -> dict:
        return {"solutions": self.solutions, "targets": self.targets, "fiber": self.fiber,
                "restrictions_match": self.restrictions_match,
                "inflation_consistent": self.inflation_consistent, "holds": self.holds}


def hoechsmann_check(proj: GroupHom, w: CentralExtension) -> HoechsmannReport:
    """Φ ↦ Φ|_M が {φ ∈ H¹(M)^G : trg(φ) = [ω]} への全射で、各ファイバーが Hom(G/M, A) と同数"""
    g = proj.domain
    m_sub = proj.kernel()
    qg, qproj = quotient(g, m_sub)
    if not np.array_equal(qproj.images, proj.images) or not same_group(qg, w.base):
        raise PreconditionError("proj は G → G/M の標準射影でなければなりません")
    m = w.modulus
    sols = embedding_solutions(proj, w)
    _, emb = m_sub.as_group
    inj_inv = inject_inverse(w)
    restrictions = {tuple(int(x) for x in inj_inv[s.images[emb.images]]) for s in sols}

    hq = h2(qg, m)
    alpha = to_cocycle(w)
    target = hq.coordinates(alpha)
    phis = {phi.key() for phi in invariants_h1(m_sub, m)
            if hq.coordinates(transgression(m_sub, phi)[0]) == target}
    inflated = inflate(alpha, proj)
    solvable = h2(g, m).is_zero_class(inflated)
    return HoechsmannReport(len(sols), len(phis), h1_order(qg, m),
                            restrictions == phis, solvable == bool(sols))


# --- 持ち上げ ------------------------------------------------------------------

@dataclass(frozen=True)
class LiftRoute:
    name: str
    target: FiniteGroup
    to_zp: GroupHom


def lifting_routes(p: int) -> list[LiftRoute]:
    """ψ: G → Z/p が経由しうる全射の一覧"""
    zp = make_group(f"cyclic:{p}")
    zpp = make_group(f"cyclic:{p * p}")
    routes = [LiftRoute(f"Z/{p * p}→Z/{p}", zpp,
                        GroupHom(zpp, zp, np.arange(p * p, dtype=np.int64) % p))]
    if p == 2:
        d4 = make_group("dihedral:8")
        routes.append(LiftRoute("θ′", d4, hom_from_images(d4, zp, [1, 0])))
        routes.append(LiftRoute("θ″", d4, hom_from_images(d4, zp, [0, 1])))
    else:
        mp = make_group(f"modular:{p}")
        routes.append(LiftRoute("λ″", mp, hom_from_images(mp, zp, [1, 0])))
    return routes


def find_lift(psi: Cochain1, route: LiftRoute) -> GroupHom | None:
    """to_zp∘Φ = ψ となる全射 Φ: G → X を一つ探す"""
    g = psi.group
    cands = [np.flatnonzero(route.to_zp.images == psi(x)) for x in g.generators]
    n = route.target.order
    for block in hom_image_blocks(g, route.target, cands):
        srt = np.sort(block, axis=1)
        distinct = 1 + (np.diff(srt, axis=1) != 0).sum(axis=1)
        hits = np.flatnonzero(distinct == n)
        if hits.size:
            return GroupHom(g, route.target, block[hits[0]])
    return None


@dataclass(frozen=True)
class EpiLiftingReport:
    group_name: str | None
    p: int
    grt: bool
    not_z2: bool
    lifts: tuple[tuple[tuple[int, ...], str | None], ...]

    @property
    def precondition(self) -> bool:
        return self.grt and self.not_z2

    @property
    def all_lift(self) -> bool:
        return all(route is not None for _, route in self.lifts)

    def to_dict(self) -> dict:
        return {"precondition": self.precondition, "all_lift": self.all_lift,
                "lifts": [{"psi": list(k), "route": r} for k, r in self.lifts]}


def epi_lifting_check(g: FiniteGroup, p: int) -> EpiLiftingReport:
    """全ての全射 ψ: G → Z/p について経由する全射を探す"""
    _check_prime(p)
    grt = grt_check(g, p).passed
    not_z2 = p != 2 or maximal_p_quotient(g, 2)[0].order != 2
    routes = lifting_routes(p)
    lifts = []
    for psi in h1_space(g, p).elements:
        if psi.is_zero():
            continue
        found = next((r.name for r in routes if find_lift(psi, r) is not None), None)
        lifts.append((psi.key(), found))
    return EpiLiftingReport(g.name, p, grt, not_z2, tuple(lifts))


# --- W 群 ---------------------------------------------------------------------

@dataclass(frozen=True)
class WGroupReport:
    group_name: str | None
    p: int
    grt: bool
    not_z2: bool
    w_order: int
    w2_order: int
    nonabelian: bool
    top_quotient: bool
    order_p_in_w2: bool
    no_zp_factor: bool
    realizable_pairs: bool
    not_small_type: bool

    @property
    def holds(self) -> bool:
        """GRT のとき成り立つべき性質が全て成り立つか（Z/p 直積因子は p = 2 で G(2) ≇ Z/2 も要る）"""
        if not self.grt:
            return True
        ok = (not self.nonabelian or self.top_quotient) and self.realizable_pairs
        if self.p != 2:
            return ok and self.order_p_in_w2 and self.not_small_type and self.no_zp_factor
        return ok and (self.no_zp_factor or not self.not_z2)

    def to_dict(self) -> dict:
        return {
            "precondition": self.grt and self.not_z2,
            "w_order": self.w_order,
            "w2_order": self.w2_order,
            "nonabelian": self.nonabelian,
            "top_quotient": self.top_quotient,
            "order_p_in_w2": self.order_p_in_w2,
            "no_zp_factor": self.no_zp_factor,
            "realizable_pairs": self.realizable_pairs,
            "not_small_type": self.not_small_type,
            "holds": self.holds,
        }


def has_zp_direct_factor(w: FiniteGroup, p: int) -> bool:
    """W = N × Z/p ⇔ 位数 p の中心元 z と z ∉ Ker(χ) となる χ: W → Z/p が存在"""
    z = center(w)
    central = [int(x) for x in z.array if w.element_orders[x] == p]
    for chi in h1_space(w, p).elements:
        if any(chi(x) for x in central):
            return True
    return False


def wgroup_properties(g: FiniteGroup, p: int) -> WGroupReport:
    """W = G/G⁽³⁾ について W 群の性質を評価する"""
    _check_prime(p)
    w, _ = w_quotient(g, p)
    w_series = q_central_series(w, p)
    w2 = w_series.term(2)
    names = {name for _, name in quotient_names(w, p)}
    top = "D4" if p == 2 else f"M_{p ** 3}"
    small = "Q8" if p == 2 else f"H_{p ** 3}"
    order_p = np.flatnonzero(w.element_orders == p)
    w_name = classify_middle(w) if w.order <= p ** 3 else None
    elementary = w.order > 1 and w.is_abelian and w.exponent == p
    return WGroupReport(
        g.name, p,
        grt=grt_check(g, p).passed,
        not_z2=p != 2 or maximal_p_quotient(g, 2)[0].order != 2,
        w_order=w.order,
        w2_order=w2.order,
        nonabelian=not w.is_abelian,
        top_quotient=top in names,
        order_p_in_w2=bool(w2.mask[order_p].all()),
        no_zp_factor=not has_zp_direct_factor(w, p),
        realizable_pairs=small not in names or top in names,
        not_small_type=not elementary and w_name != small,
    )


def lambda_surjectivity_check(g: FiniteGroup, p: int) -> dict:
    """G/G⁽²⁾ 上で Λ の像が H² 全体を張るか"""
    _check_prime(p)
    g2 = q_central_series(g, p).term(2)
    qbar, _ = quotient(g, g2)
    data = lambda_data(qbar, p)
    rows = [data.cup_matrix]
    if p != 2:
        rows.append(data.beta_classes)
    image = np.vstack(rows) if data.h2.rank else np.zeros((0, 0), dtype=np.int64)
    image_rank = rank_fp(image, p) if image.size else 0
    return {
        "grt": grt_check(g, p).passed,
        "h2_rank": data.h2.rank,
        "image_rank": image_rank,
        "surjective": image_rank == data.h2.rank,
    }


@dataclass(frozen=True)
class NecessityRow:
    member: str
    model: str
    g3_order: int
    full_order: int
    dropped_order: int
    dropped_empty: bool

    @property
    def necessary(self) -> bool:
        return self.dropped_empty or self.dropped_order != self.g3_order

    def to_dict(self) -> dict:
        return {"member": self.member, "model": self.model, "g3_order": self.g3_order,
                "full_order": self.full_order, "dropped_order": self.dropped_order,
                "dropped_empty": self.dropped_empty, "necessary": self.necessary}


def necessity_models(p: int) -> list[tuple[str, str]]:
    if p == 2:
        return [("1", "cyclic:1"), ("Z/2", "cyclic:2"), ("Z/4", "cyclic:8"), ("D4", "dihedral:8")]
    return [("1", "cyclic:1"), (f"Z/{p * p}", f"cyclic:{p ** 3}"),
            (f"M_{p ** 3}", f"semidirect:{p * p},{p * p},{1 + p}")]


def list_necessity_check(p: int) -> list[NecessityRow]:
    """縮小リストの各成員を外すと共通部分が G⁽³⁾ からずれるモデル群"""
    _check_prime(p)
    names = quotient_list(p, "even-reduced" if p == 2 else "odd-reduced")
    rows = []
    for member, spec in necessity_models(p):
        g = make_group(spec)
        g3 = q_central_series(g, p).term(3)
        full = reduced_list_intersection(g, p, names)
        kept = tuple(n for n in names if n != member)
        family = kernels_with_quotients(g, p, kept)
        dropped = intersection(g, [n for n, _ in family])
        rows.append(NecessityRow(member, spec, g3.order, full.order, dropped.order, not family))
    return rows
