"""Z/m による中心拡大

中間群は乗積表として実体化する。from_cocycle は (a, σ) を添字 σ·m + a に置く。
"""

import hashlib
import logging
from dataclasses import dataclass
from itertools import product

import numpy as np

from .cohomology import Cochain1, Cochain2, bockstein, cup, h1, is_2cocycle
from .errors import PreconditionError
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    abelian_invariants,
    coset_section,
    direct_product,
    hom_from_images,
    hom_image_blocks,
    make_group,
    parse_group_spec,
    quotient,
    same_group,
)
from .linalg import prime_power_parts

logger = logging.getLogger(__name__)


def cyclic_group(m: int) -> FiniteGroup:
    return make_group(f"cyclic:{m}")


@dataclass(frozen=True, eq=False)
class CentralExtension:
    """0 → Z/m → B → Ḡ → 1"""

    modulus: int
    middle: FiniteGroup
    inject: GroupHom
    project: GroupHom
    name: str | None = None

    @property
    def base(self) -> FiniteGroup:
        return self.project.codomain

    def kernel_element(self, a: int) -> int:
        return self.inject(a % self.modulus)

    def exactness_problems(self) -> list[str]:
        problems = []
        if self.inject.domain.order != self.modulus:
            problems.append("inject の定義域が Z/m ではありません")
        if not self.inject.is_homomorphism() or not self.project.is_homomorphism():
            problems.append("準同型ではありません")
        if not self.inject.is_injective():
            problems.append("inject が単射ではありません")
        if not self.project.is_surjective():
            problems.append("project が全射ではありません")
        image = self.inject.image()
        if image.members != self.project.kernel().members:
            problems.append("ker(project) ≠ im(inject)")
        t = self.middle.table
        if not np.array_equal(t[image.array], t[:, image.array].T):
            problems.append("inject の像が中心に入りません")
        return problems

    def is_exact(self) -> bool:
        return not self.exactness_problems()

    def check_exact(self) -> None:
        problems = self.exactness_problems()
        if problems:
            raise PreconditionError("完全な中心拡大ではありません: " + "、".join(problems))

    def to_dict(self) -> dict:
        digest = hashlib.sha256(self.middle.table.tobytes()).hexdigest()
        return {
            "base_spec": self.base.name,
            "modulus": self.modulus,
            "middle_table_digest": digest,
            "inject": [int(x) for x in self.inject.images],
            "project": [int(x) for x in self.project.images],
        }


@dataclass(frozen=True, eq=False)
class ExtensionClass:
    """同値類（代表元と同値判定）"""

    representative: CentralExtension

    @property
    def base(self) -> FiniteGroup:
        return self.representative.base

    @property
    def modulus(self) -> int:
        return self.representative.modulus

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExtensionClass):
            return NotImplemented
        return are_equivalent(self.representative, other.representative) is not None

    __hash__ = object.__hash__


def from_cocycle(c: Cochain2) -> CentralExtension:
    """(a,σ)*(b,τ) = (a + b + c(σ,τ), στ)"""
    if not is_2cocycle(c):
        raise PreconditionError("2-コサイクルではありません")
    g, m = c.group, c.modulus
    n = g.order
    idx = np.arange(n * m, dtype=np.int64)
    sig, a = idx // m, idx % m
    prod_sig = g.table[sig[:, None], sig[None, :]]
    prod_a = (a[:, None] + a[None, :] + c.values[sig[:, None], sig[None, :]]) % m
    table = prod_sig * m + prod_a
    gens = tuple(int(x) * m for x in g.generators) + ((1,) if m > 1 else ())
    labels = tuple(f"({ai},{g.label(int(si))})" for si, ai in zip(sig, a))
    middle = FiniteGroup(table, gens, labels, None)
    inject = GroupHom(cyclic_group(m), middle, np.arange(m, dtype=np.int64))
    project = GroupHom(middle, g, sig)
    return CentralExtension(m, middle, inject, project)


def inject_inverse(w: CentralExtension) -> np.ndarray:
    inv = np.full(w.middle.order, -1, dtype=np.int64)
    inv[w.inject.images] = np.arange(w.modulus, dtype=np.int64)
    return inv


def to_cocycle(w: CentralExtension) -> Cochain2:
    """α(x, y) = s(x)s(y)s(xy)⁻¹（s は各ファイバーの最小添字）"""
    w.check_exact()
    b, base = w.middle, w.base
    s = coset_section(w.project)
    t = b.table
    prod = t[t[s[:, None], s[None, :]], b.inverse[s[base.table]]]
    return Cochain2(base, w.modulus, inject_inverse(w)[prod])


def _check_same_shape(w1: CentralExtension, w2: CentralExtension) -> None:
    if w1.modulus != w2.modulus:
        raise PreconditionError(f"法が一致しません: {w1.modulus} と {w2.modulus}")
    if not same_group(w1.base, w2.base):
        raise PreconditionError("底の群が一致しません")


def are_equivalent(w1: CentralExtension, w2: CentralExtension) -> GroupHom | None:
    """h∘inject = inject′ かつ project′∘h = project となる同型 h を探す"""
    _check_same_shape(w1, w2)
    b1, b2 = w1.middle, w2.middle
    if b1.order != b2.order or b1.fingerprint != b2.fingerprint:
        return None
    inj_inv = inject_inverse(w1)
    cands = []
    for x in b1.generators:
        if inj_inv[x] >= 0:
            cands.append(np.array([w2.inject(int(inj_inv[x]))]))
        else:
            base_x = w1.project(x)
            cands.append(np.flatnonzero(w2.project.images == base_x))
    for block in hom_image_blocks(b1, b2, cands):
        ok = (block[:, w1.inject.images] == w2.inject.images).all(axis=1)
        ok &= (w2.project.images[block] == w1.project.images).all(axis=1)
        hits = np.flatnonzero(ok)
        if hits.size:
            return GroupHom(b1, b2, block[hits[0]])
    return None


def _fibered_product(b1: FiniteGroup, pi1: GroupHom, b2: FiniteGroup, pi2: GroupHom,
                     gen_pairs: list[tuple[int, int]]):
    """B₁ ×_Ḡ B₂ を (x, y) の符号 x·|B₂| + y の昇順で並べた群"""
    n2 = b2.order
    codes = []
    for z in range(pi1.codomain.order):
        f1 = np.flatnonzero(pi1.images == z)
        f2 = np.flatnonzero(pi2.images == z)
        codes.append((f1[:, None] * n2 + f2[None, :]).ravel())
    codes = np.sort(np.concatenate(codes))
    pos = np.full(b1.order * n2, -1, dtype=np.int64)
    pos[codes] = np.arange(len(codes))
    x, y = codes // n2, codes % n2
    table = pos[b1.table[x[:, None], x[None, :]] * n2 + b2.table[y[:, None], y[None, :]]]
    gens = tuple(int(pos[a * n2 + b]) for a, b in gen_pairs)
    return FiniteGroup(table, gens, None, None), pos, x, y


def baer_sum(w1: CentralExtension, w2: CentralExtension) -> CentralExtension:
    """(B₁ ×_Ḡ B₂)/{(f₁(a), f₂(a)⁻¹)}"""
    _check_same_shape(w1, w2)
    m, base = w1.modulus, w1.base
    s1, s2 = coset_section(w1.project), coset_section(w2.project)
    pairs = [(int(s1[g]), int(s2[g])) for g in base.generators]
    if m > 1:
        pairs += [(w1.kernel_element(1), 0), (0, w2.kernel_element(1))]
    p, pos, x, _ = _fibered_product(w1.middle, w1.project, w2.middle, w2.project, pairs)
    n2 = w2.middle.order
    anti = [int(pos[w1.kernel_element(a) * n2 + w2.kernel_element(-a)]) for a in range(m)]
    middle, qproj = quotient(p, Subgroup.of(p, anti))
    inject = GroupHom(cyclic_group(m), middle,
                      qproj.images[[int(pos[w1.kernel_element(a) * n2]) for a in range(m)]])
    proj_images = np.zeros(middle.order, dtype=np.int64)
    proj_images[qproj.images] = w1.project.images[x]
    w = CentralExtension(m, middle, inject, GroupHom(middle, base, proj_images))
    logger.debug("baer_sum: |B| = %d", middle.order)
    return w


def twist(w: CentralExtension, theta: GroupHom) -> CentralExtension:
    """θ: Ḡ′ → Ḡ に対し射影を θ⁻¹∘g に取り替える"""
    if not same_group(theta.codomain, w.base):
        raise PreconditionError("θ の終域が拡大の底と一致しません")
    if not theta.is_bijective():
        raise PreconditionError("θ が同型ではありません")
    project = theta.inverse().compose(w.project)
    return CentralExtension(w.modulus, w.middle, w.inject, project, w.name)


def inflate_ext(w: CentralExtension, epi: GroupHom) -> CentralExtension:
    """全射 Ḡ → G̃ に沿って B ×_G̃ Ḡ を作る"""
    if not same_group(epi.codomain, w.base):
        raise PreconditionError("全射の終域が拡大の底と一致しません")
    if not epi.is_surjective():
        raise PreconditionError("全射ではありません")
    g = epi.domain
    s = coset_section(w.project)
    pairs = [(int(s[epi(x)]), x) for x in g.generators]
    if w.modulus > 1:
        pairs.append((w.kernel_element(1), 0))
    middle, pos, _, y = _fibered_product(w.middle, w.project, g, epi, pairs)
    n = g.order
    inject = GroupHom(cyclic_group(w.modulus), middle,
                      np.array([pos[w.kernel_element(a) * n] for a in range(w.modulus)]))
    return CentralExtension(w.modulus, middle, inject, GroupHom(middle, g, y))


def direct_product_ext(w: CentralExtension, other: FiniteGroup) -> CentralExtension:
    """0 → A → B × G̃′ → G̃ × G̃′ → 1"""
    n = other.order
    middle = direct_product(w.middle, other)
    base = direct_product(w.base, other)
    idx = np.arange(middle.order, dtype=np.int64)
    project = GroupHom(middle, base, w.project.images[idx // n] * n + idx % n)
    inject = GroupHom(cyclic_group(w.modulus), middle, w.inject.images * n)
    return CentralExtension(w.modulus, middle, inject, project)


def _factors(g: FiniteGroup) -> tuple[FiniteGroup, FiniteGroup]:
    spec = parse_group_spec(g.name) if g.name else None
    if spec is not None and spec.kind == "direct":
        return make_group(spec.args[0].canonical()), make_group(spec.args[1].canonical())
    if spec is not None and spec.kind == "elementary" and spec.args[1] >= 1:
        p, k = spec.args
        left = f"cyclic:{p}" if k == 2 else f"elementary:{p}:{k - 1}"
        return make_group(left), make_group(f"cyclic:{p}")
    raise PreconditionError(f"直積として構成された群ではありません: {g.name}")


def projection(g: FiniteGroup, factor: int) -> GroupHom:
    """直積 G = A × B の第 factor 成分への射影（factor は 1 か 2）"""
    left, right = _factors(g)
    idx = np.arange(g.order, dtype=np.int64)
    if factor == 1:
        return GroupHom(g, left, idx // right.order)
    return GroupHom(g, right, idx % right.order)


# --- ω₀..ω₆ --------------------------------------------------------------------

def omega_catalog(i: int, p: int) -> CentralExtension:
    """ω₀..ω₆（ω₃ は p = 2、ω₄ と ω₅ は p ≠ 2 のみ）"""
    if i == 3 and p != 2:
        raise PreconditionError("ω₃ は p = 2 のみ")
    if i in (4, 5) and p == 2:
        raise PreconditionError(f"ω{i} は p ≠ 2 のみ")
    zp = cyclic_group(p)
    plane = make_group(f"elementary:{p}:2")
    a = np.arange(p, dtype=np.int64)
    if i == 0:
        middle = zp
        inject = GroupHom(zp, middle, a)
        project = GroupHom(middle, cyclic_group(1), np.zeros(p, dtype=np.int64))
    elif i == 1:
        middle = plane
        inject = GroupHom(zp, middle, a * p)
        project = GroupHom(middle, zp, np.arange(p * p) % p)
    elif i == 2:
        middle = cyclic_group(p * p)
        inject = GroupHom(zp, middle, a * p)
        project = GroupHom(middle, zp, np.arange(p * p) % p)
    elif i == 3:
        middle = make_group("dihedral:8")
        r, s = middle.generators
        inject = GroupHom(zp, middle, np.array([0, middle.power(r, 2)]))
        # θ: r ↦ (1,1), s ↦ (0,1)
        project = hom_from_images(middle, plane, [3, 1])
    elif i == 4:
        middle = make_group(f"heisenberg:{p}")
        # t = (0,0,1) は添字 1
        inject = GroupHom(zp, middle, a)
        project = hom_from_images(middle, plane, [p, 1])
    elif i == 5:
        middle = make_group(f"modular:{p}")
        r, _ = middle.generators
        inject = GroupHom(zp, middle, np.array([middle.power(r, p * x) for x in range(p)]))
        project = hom_from_images(middle, plane, [p, 1])
    elif i == 6:
        middle = make_group(f"direct:cyclic:{p * p},cyclic:{p}")
        inject = GroupHom(zp, middle, a * p * p)
        idx = np.arange(p ** 3)
        project = GroupHom(middle, plane, (idx // p) % p * p + idx % p)
    else:
        raise PreconditionError(f"ω の添字は 0..6: {i}")
    w = CentralExtension(p, middle, inject, project, f"omega{i}")
    w.check_exact()
    return w


def omega_indices(p: int) -> tuple[int, ...]:
    """p で定義される ω の添字"""
    return (0, 1, 2, 3, 6) if p == 2 else (0, 1, 2, 4, 5, 6)


# --- 中間群の同定 ------------------------------------------------------------

def abelian_name(invariants: tuple[int, ...]) -> str:
    """不変因子から Z/9×Z/3, (Z/2)^2 のような名前を作る"""
    if not invariants:
        return "1"
    parts = []
    for n in sorted(set(invariants), reverse=True):
        k = invariants.count(n)
        parts.append(f"Z/{n}" if k == 1 else f"(Z/{n})^{k}")
    return "×".join(parts)


def classify_middle(b: FiniteGroup) -> str:
    """位数 p³ 以下の群の同型類名（それ以外は不変量の文字列）"""
    if b.is_abelian:
        return abelian_name(abelian_invariants(b))
    parts = prime_power_parts(b.order)
    if len(parts) == 1 and parts[0][1] == 3:
        p = parts[0][0]
        if p == 2:
            return "Q8" if int((b.element_orders == 2).sum()) == 1 else "D4"
        return f"H_{p ** 3}" if b.exponent == p else f"M_{p ** 3}"
    order, exponent, _, zorder, dorder, ab = b.fingerprint
    return f"order{order}:exp{exponent}:Z{zorder}:D{dorder}:ab[{abelian_name(ab)}]"


# --- 単純型元の拡大表 --------------------------------------------------------

@dataclass(frozen=True)
class ExtensionCase:
    base: str
    kind: str
    psi: tuple[int, ...]
    psi2: tuple[int, ...]
    case: str
    omega: int
    middle: str
    equivalent: bool


def _as_hom(psi: Cochain1, target: FiniteGroup) -> GroupHom:
    return GroupHom(psi.group, target, psi.values)


def expected_extension(kind: str, psi: Cochain1, psi2: Cochain1) -> tuple[str, int, GroupHom]:
    """Λ 類が対応するはずの ω_i と捩り θ を返す"""
    g, p = psi.group, psi.modulus
    zero, zero2 = psi.is_zero(), psi2.is_zero()
    if g.order == 1:
        return "a", 0, GroupHom(g, cyclic_group(1), np.zeros(1, dtype=np.int64))
    if g.order == p:
        nonzero = psi2 if zero else psi
        theta = _as_hom(nonzero, cyclic_group(p))
        if kind == "bockstein":
            return "bockstein", 2, theta
        if kind == "cup":
            if zero or zero2:
                return "b", 1, theta
            if p == 2:
                return "c", 2, theta
            return "d", 1, theta
        if zero:
            return "b", 1, theta
        return "dependent", 2, theta
    plane = make_group(f"elementary:{p}:2")
    theta = GroupHom(g, plane, psi.values * p + psi2.values)
    if kind == "cup":
        return ("e", 3, theta) if p == 2 else ("f", 4, theta)
    return "independent", 5, theta


def case_cocycle(kind: str, psi: Cochain1, psi2: Cochain1) -> Cochain2:
    if kind == "bockstein":
        return bockstein(psi)
    c = cup(psi, psi2)
    if kind == "lambda" and psi.modulus != 2:
        c = c + bockstein(psi)
    return c


def _trivial_kernel(psi: Cochain1, psi2: Cochain1) -> bool:
    return not bool(((psi.values == 0) & (psi2.values == 0))[1:].any())


def extension_table(p: int) -> list[ExtensionCase]:
    """底 1, Z/p, (Z/p)² 上の核自明な全ての (ψ̄, ψ̄′) について Λ 類の拡大を同定する"""
    kinds = ("cup", "bockstein") if p == 2 else ("cup", "lambda", "bockstein")
    rows = []
    for spec in ("cyclic:1", f"cyclic:{p}", f"elementary:{p}:2"):
        g = make_group(spec)
        chars = h1(g, p)
        for kind in kinds:
            for psi, psi2 in product(chars, repeat=2):
                if not _trivial_kernel(psi, psi2):
                    continue
                if kind == "bockstein" and (g.order != p or psi.is_zero() or not psi2.is_zero()):
                    continue
                case, i, theta = expected_extension(kind, psi, psi2)
                built = from_cocycle(case_cocycle(kind, psi, psi2))
                target = twist(omega_catalog(i, p), theta)
                rows.append(ExtensionCase(spec, kind, psi.key(), psi2.key(), case, i,
                                          classify_middle(built.middle),
                                          are_equivalent(built, target) is not None))
    return rows
