"""Z/m 係数（自明な作用）の正規化コチェインと H¹, H²

H² は群の Schreier 表示から計算する。Cayley グラフの BFS 全域木を固定すると、
木の辺で 0 となるよう正規化した 2-コサイクルは非木辺上の値ベクトル E と
1 対 1 に対応し、コサイクル条件は E に関する線形条件 K·E = 0、
コバウンダリは B の像になる。H² = ker K / im B を Z/p^k ごとに Smith 標準形で求める。
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

from .errors import OrderCapError, PreconditionError
from .groups import FiniteGroup, GroupHom, Subgroup, coset_section, quotient, same_group
from .linalg import (
    crt_combine,
    crt_idempotents,
    kernel_mod,
    prime_power_parts,
    snf_local,
    solve_local,
    solve_mod,
)
from .settings import ENUMERATION_CAP, H2_MATRIX_CAP, H2_ORDER_CAP

logger = logging.getLogger(__name__)


def _check_modulus(m: int) -> None:
    if m < 1:
        raise PreconditionError(f"法は正の整数: {m}")


@dataclass(frozen=True, eq=False)
class Cochain1:
    """1-コチェイン G → Z/m"""

    group: FiniteGroup
    modulus: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        _check_modulus(self.modulus)
        values = np.asarray(self.values, dtype=np.int64) % self.modulus
        if values.shape != (self.group.order,):
            raise PreconditionError(f"1-コチェインの形が不正: {values.shape}")
        if values[0]:
            raise PreconditionError("1-コチェインは単位元で 0")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @staticmethod
    def zero(group: FiniteGroup, m: int) -> "Cochain1":
        return Cochain1(group, m, np.zeros(group.order, dtype=np.int64))

    def _compatible(self, other: "Cochain1") -> None:
        if self.modulus != other.modulus or not same_group(self.group, other.group):
            raise PreconditionError("群または法が一致しません")

    def __add__(self, other: "Cochain1") -> "Cochain1":
        self._compatible(other)
        return Cochain1(self.group, self.modulus, self.values + other.values)

    def __sub__(self, other: "Cochain1") -> "Cochain1":
        self._compatible(other)
        return Cochain1(self.group, self.modulus, self.values - other.values)

    def __neg__(self) -> "Cochain1":
        return Cochain1(self.group, self.modulus, -self.values)

    def __rmul__(self, k: int) -> "Cochain1":
        return Cochain1(self.group, self.modulus, int(k) * self.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain1):
            return NotImplemented
        return (self.modulus == other.modulus and same_group(self.group, other.group)
                and bool(np.array_equal(self.values, other.values)))

    __hash__ = object.__hash__

    def __call__(self, x: int) -> int:
        return int(self.values[x])

    def is_zero(self) -> bool:
        return not self.values.any()

    def is_homomorphism(self) -> bool:
        return d1(self).is_zero()

    def kernel(self) -> Subgroup:
        if not self.is_homomorphism():
            raise PreconditionError("準同型ではありません")
        return Subgroup(self.group, tuple(int(x) for x in np.flatnonzero(self.values == 0)))

    def key(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.values)

    def to_dict(self) -> dict:
        return {"group_spec": self.group.name, "modulus": self.modulus,
                "values": [int(v) for v in self.values]}


@dataclass(frozen=True, eq=False)
class Cochain2:
    """正規化 2-コチェイン G × G → Z/m"""

    group: FiniteGroup
    modulus: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        _check_modulus(self.modulus)
        values = np.asarray(self.values, dtype=np.int64) % self.modulus
        n = self.group.order
        if values.shape != (n, n):
            raise PreconditionError(f"2-コチェインの形が不正: {values.shape}")
        if values[0].any() or values[:, 0].any():
            raise PreconditionError("2-コチェインが正規化されていません")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @staticmethod
    def zero(group: FiniteGroup, m: int) -> "Cochain2":
        return Cochain2(group, m, np.zeros((group.order, group.order), dtype=np.int64))

    def _compatible(self, other: "Cochain2") -> None:
        if self.modulus != other.modulus or not same_group(self.group, other.group):
            raise PreconditionError("群または法が一致しません")

    def __add__(self, other: "Cochain2") -> "Cochain2":
        self._compatible(other)
        return Cochain2(self.group, self.modulus, self.values + other.values)

    def __sub__(self, other: "Cochain2") -> "Cochain2":
        self._compatible(other)
        return Cochain2(self.group, self.modulus, self.values - other.values)

    def __neg__(self) -> "Cochain2":
        return Cochain2(self.group, self.modulus, -self.values)

    def __rmul__(self, k: int) -> "Cochain2":
        return Cochain2(self.group, self.modulus, int(k) * self.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain2):
            return NotImplemented
        return (self.modulus == other.modulus and same_group(self.group, other.group)
                and bool(np.array_equal(self.values, other.values)))

    __hash__ = object.__hash__

    def __call__(self, x: int, y: int) -> int:
        return int(self.values[x, y])

    def is_zero(self) -> bool:
        return not self.values.any()

    def to_dict(self) -> dict:
        return {"group_spec": self.group.name, "modulus": self.modulus,
                "values": self.values.tolist()}


def d1(f: Cochain1) -> Cochain2:
    """(df)(σ,τ) = f(σ) + f(τ) − f(στ)"""
    v = f.values
    return Cochain2(f.group, f.modulus, v[:, None] + v[None, :] - v[f.group.table])


def is_2cocycle(c: Cochain2) -> bool:
    """c(τ,υ) − c(στ,υ) + c(σ,τυ) − c(σ,τ) = 0 を全ての三つ組で調べる"""
    t, v, m = c.group.table, c.values, c.modulus
    for s in range(1, c.group.order):
        defect = v - v[t[s]] + v[s][t] - v[s][:, None]
        if (defect % m).any():
            return False
    return True


def cup(psi: Cochain1, psi2: Cochain1) -> Cochain2:
    """(σ,τ) ↦ ψ(σ)·ψ′(τ)"""
    psi._compatible(psi2)
    return Cochain2(psi.group, psi.modulus, np.outer(psi.values, psi2.values))


def bockstein(psi: Cochain1, n: int | None = None, *, lift: Cochain1 | None = None) -> Cochain2:
    """0 → Z/n → Z/mn → Z/m → 0 の連結準同型。既定は n = m（β_G）"""
    m = psi.modulus
    n = m if n is None else n
    _check_modulus(n)
    if lift is None:
        hat = psi.values
    else:
        if lift.modulus != m * n or not same_group(lift.group, psi.group):
            raise PreconditionError("持ち上げの法が m·n ではありません")
        if ((lift.values - psi.values) % m).any():
            raise PreconditionError("持ち上げが ψ に一致しません")
        hat = lift.values
    chi = (hat[:, None] + hat[None, :] - hat[psi.group.table]) % (m * n)
    if (chi % m).any():
        raise PreconditionError("ψ が準同型ではありません")
    return Cochain2(psi.group, n, chi // m)


# --- Schreier 表示上の線形代数 ----------------------------------------------

def potential(c: Cochain2) -> np.ndarray:
    """全域木に沿った P(子) = P(親) + c(親, 生成元)"""
    g = c.group
    pres = g.presentation
    gens = np.asarray(g.generators, dtype=np.int64)
    pot = np.zeros(g.order, dtype=np.int64)
    for node in pres.bfs_order[1:]:
        par = pres.parent[node]
        pot[node] = (pot[par] + c.values[par, gens[pres.letter[node]]]) % c.modulus
    return pot


def edge_vector(c: Cochain2, pot: np.ndarray | None = None) -> np.ndarray:
    """非木辺 e = (σ, y) 上の値 P(σ) + c(σ, g_y) − P(σ g_y)"""
    pres = c.group.presentation
    if pot is None:
        pot = potential(c)
    gens = np.asarray(c.group.generators, dtype=np.int64)
    if not pres.num_edges:
        return np.zeros(0, dtype=np.int64)
    vals = c.values[pres.edge_src, gens[pres.edge_gen]]
    return (pot[pres.edge_src] + vals - pot[pres.edge_dst]) % c.modulus


def cocycle_from_edges(g: FiniteGroup, edges: np.ndarray, m: int) -> Cochain2:
    """木の辺で 0、非木辺で edges となる 2-コサイクルを再構成する"""
    pres = g.presentation
    d = len(g.generators)
    n = g.order
    table = np.zeros((n, d), dtype=np.int64)
    if pres.num_edges:
        table[pres.edge_src, pres.edge_gen] = np.asarray(edges, dtype=np.int64) % m
    c = np.zeros((n, n), dtype=np.int64)
    for node in pres.bfs_order[1:]:
        par, y = pres.parent[node], pres.letter[node]
        c[:, node] = (c[:, par] + table[g.table[:, par], y] - table[par, y]) % m
    return Cochain2(g, m, c)


def cocycle_conditions(g: FiniteGroup) -> np.ndarray:
    """K·E = 0 ⇔ E が 2-コサイクルから来る（生成元による共役の不変性）"""
    pres = g.presentation
    n, ne = g.order, pres.num_edges
    eidx = pres.edge_index
    blocks = []
    for gx in g.generators:
        walk = np.zeros((n, ne), dtype=np.int64)
        for node in pres.bfs_order[1:]:
            par, y = pres.parent[node], pres.letter[node]
            walk[node] = walk[par]
            j = eidx[g.table[gx, par], y]
            if j >= 0:
                walk[node, j] += 1
        rows = walk[pres.edge_src] - walk[pres.edge_dst]
        j = eidx[g.table[gx, pres.edge_src], pres.edge_gen]
        hit = np.flatnonzero(j >= 0)
        rows[hit, j[hit]] += 1
        rows[np.arange(ne), np.arange(ne)] -= 1
        blocks.append(rows)
    if not blocks:
        return np.zeros((0, ne), dtype=np.int64)
    return np.vstack(blocks)


def coboundary_witness(c: Cochain2) -> Cochain1 | None:
    """c = d1(f) となる f を返す（c がコバウンダリでなければ None）"""
    g = c.group
    pres = g.presentation
    pot = potential(c)
    u = solve_mod(pres.relation_matrix, edge_vector(c, pot), c.modulus)
    if u is None:
        return None
    return Cochain1(g, c.modulus, pres.words @ u - pot)


# --- H¹ ----------------------------------------------------------------------

def _combinations(gens: list[tuple[np.ndarray, int]], m: int, dim: int) -> np.ndarray:
    total = 1
    for _, order in gens:
        total *= order
    if total > ENUMERATION_CAP:
        raise OrderCapError(f"列挙数 {total} が上限 {ENUMERATION_CAP} を超えています")
    if not gens:
        return np.zeros((1, dim), dtype=np.int64)
    vecs = np.array([v for v, _ in gens], dtype=np.int64)
    coeffs = np.array(list(itertools.product(*(range(o) for _, o in gens))), dtype=np.int64)
    return coeffs @ vecs % m


def h1_basis(g: FiniteGroup, m: int) -> list[tuple[Cochain1, int]]:
    """Hom(G, Z/m) の巡回分解 [(生成元, 位数), ...]"""
    _check_modulus(m)
    pres = g.presentation
    gens = kernel_mod(pres.relation_matrix, m) if len(g.generators) else []
    return [(Cochain1(g, m, pres.words @ u), order) for u, order in gens]


def h1(g: FiniteGroup, m: int) -> list[Cochain1]:
    """Hom(G, Z/m) の全ての元（値の辞書式順、先頭は 0）"""
    _check_modulus(m)
    pres = g.presentation
    d = len(g.generators)
    gens = kernel_mod(pres.relation_matrix, m) if d else []
    images = _combinations(gens, m, d)
    table = pres.words @ images.T % m
    homs = sorted({tuple(int(x) for x in col) for col in table.T})
    return [Cochain1(g, m, np.array(v, dtype=np.int64)) for v in homs]


def h1_order(g: FiniteGroup, m: int) -> int:
    total = 1
    for _, order in h1_basis(g, m):
        total *= order
    return total


def _local(n: Subgroup, x) -> np.ndarray:
    return np.searchsorted(n.array, x)


def invariants_h1(n: Subgroup, m: int) -> list[Cochain1]:
    """H¹(N)^G: φ(g⁻¹ n g) = φ(n) を満たす N → Z/m の全体"""
    _check_modulus(m)
    if not n.is_normal():
        raise PreconditionError("N は正規部分群ではありません")
    g = n.parent
    k, emb = n.as_group
    pres = k.presentation
    rows = [pres.relation_matrix]
    for x in g.generators:
        for y in k.generators:
            conj = g.table[g.table[g.inverse[x], emb(y)], x]
            rows.append((pres.words[_local(n, conj)] - pres.words[y])[None, :])
    d = len(k.generators)
    if not d:
        return [Cochain1.zero(k, m)]
    gens = kernel_mod(np.vstack(rows), m)
    images = _combinations(gens, m, d)
    table = pres.words @ images.T % m
    homs = sorted({tuple(int(v) for v in col) for col in table.T})
    return [Cochain1(k, m, np.array(v, dtype=np.int64)) for v in homs]


# --- 制限・インフレーション・トランスグレッション -----------------------------

def restrict(c: Cochain1 | Cochain2, h: Subgroup) -> Cochain1 | Cochain2:
    """部分群への制限（部分群は as_group の添字で表す）"""
    if not same_group(h.parent, c.group):
        raise PreconditionError("部分群の親群がコチェインの群と一致しません")
    k, emb = h.as_group
    idx = emb.images
    if isinstance(c, Cochain1):
        return Cochain1(k, c.modulus, c.values[idx])
    return Cochain2(k, c.modulus, c.values[np.ix_(idx, idx)])


def inflate(c: Cochain1 | Cochain2, proj: GroupHom) -> Cochain1 | Cochain2:
    """射影 G → G/N に沿った引き戻し"""
    if not same_group(proj.codomain, c.group):
        raise PreconditionError("射影の終域がコチェインの群と一致しません")
    idx = proj.images
    if isinstance(c, Cochain1):
        return Cochain1(proj.domain, c.modulus, c.values[idx])
    return Cochain2(proj.domain, c.modulus, c.values[np.ix_(idx, idx)])


def transgression(m_sub: Subgroup, phi: Cochain1) -> tuple[Cochain2, GroupHom]:
    """trg(φ)(x, y) = φ(s(x)s(y)s(xy)⁻¹) を G/M 上の 2-コサイクルとして返す"""
    g = m_sub.parent
    k, emb = m_sub.as_group
    if not same_group(phi.group, k):
        raise PreconditionError("φ は M 上のコチェインではありません")
    if not phi.is_homomorphism():
        raise PreconditionError("φ が準同型ではありません")
    for x in g.generators:
        conj = g.table[g.table[g.inverse[x], emb.images], x]
        if not np.array_equal(phi.values[_local(m_sub, conj)], phi.values):
            raise PreconditionError("φ が G 不変ではありません")
    qg, proj = quotient(g, m_sub)
    s = coset_section(proj)
    t = g.table
    prod = t[t[s[:, None], s[None, :]], g.inverse[s[qg.table]]]
    if not m_sub.mask[prod].all():
        raise PreconditionError("切断の積が M に入りません")
    c = Cochain2(qg, phi.modulus, phi.values[_local(m_sub, prod)])
    if not is_2cocycle(c):
        raise PreconditionError("切断公式がコサイクル条件を満たしません")
    return c, proj


# --- H² ----------------------------------------------------------------------

@dataclass(frozen=True)
class _LocalH2:
    prime: int
    exponent: int
    idempotent: int
    shifts: np.ndarray
    kernel_right_inv: np.ndarray
    relation_left: np.ndarray
    orders: tuple[int, ...]
    keep: tuple[int, ...]

    @property
    def modulus(self) -> int:
        return self.prime ** self.exponent

    def coordinates(self, edges: np.ndarray) -> np.ndarray:
        q = self.modulus
        y = self.kernel_right_inv @ (edges % q) % q
        x = y // self.prime ** self.shifts
        a = self.relation_left @ x % q
        return np.array([a[j] % self.orders[j] for j in self.keep], dtype=np.int64)


def _local_h2(kmat: np.ndarray, bmat: np.ndarray, p: int, k: int, e: int):
    q = p ** k
    ne = kmat.shape[1]
    ksnf = snf_local(kmat % q, p, k, track_right=True)
    vals = np.array([ksnf.column_valuation(i) for i in range(ne)], dtype=np.int64)
    live = np.flatnonzero(vals > 0)
    shifts = k - vals[live]
    zgen = ksnf.right[:, live] * p ** shifts % q
    vinv = ksnf.right_inv[live]
    if bmat.size:
        y = vinv @ (bmat % q) % q
        if (y % p ** shifts[:, None]).any():
            raise PreconditionError("コバウンダリがコサイクル空間に入りません")
        ycoords = y // p ** shifts[:, None]
    else:
        ycoords = np.zeros((len(live), 0), dtype=np.int64)
    rel = np.hstack([np.diag(p ** vals[live]), ycoords]) % q
    rsnf = snf_local(rel, p, k, track_left=True)
    s = len(live)
    orders = tuple(p ** rsnf.row_valuation(j) for j in range(s))
    keep = tuple(j for j in range(s) if orders[j] > 1)
    basis_edges = [zgen @ rsnf.left_inv[:, j] % q for j in keep]
    solver = _LocalH2(p, k, e, shifts, vinv, rsnf.left if s else np.zeros((0, 0), np.int64),
                      orders, keep)
    return basis_edges, [orders[j] for j in keep], solver


@dataclass(frozen=True, eq=False)
class H2Structure:
    """H²(G, Z/m) の巡回分解と分解ソルバー"""

    group: FiniteGroup
    modulus: int
    basis: tuple[Cochain2, ...]
    invariant_factors: tuple[int, ...]
    _solvers: tuple[_LocalH2, ...] = field(repr=False)

    @property
    def order(self) -> int:
        total = 1
        for f in self.invariant_factors:
            total *= f
        return total

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def _basis_edges(self) -> np.ndarray:
        ne = self.group.presentation.num_edges
        if not self.basis:
            return np.zeros((0, ne), dtype=np.int64)
        return np.array([edge_vector(b) for b in self.basis], dtype=np.int64)

    def _check(self, c: Cochain2) -> None:
        if c.modulus != self.modulus or not same_group(c.group, self.group):
            raise PreconditionError("群または法が一致しません")

    def coordinates(self, c: Cochain2) -> tuple[int, ...]:
        """コホモロジー類の座標（基底の各位数を法として）"""
        self._check(c)
        edges = edge_vector(c)
        coords: list[int] = []
        for solver in self._solvers:
            coords.extend(int(x) for x in solver.coordinates(edges))
        return tuple(coords)

    def decompose(self, c: Cochain2) -> tuple[tuple[int, ...], Cochain1]:
        """c = Σ coords_i·basis_i + d1(witness)"""
        self._check(c)
        if not is_2cocycle(c):
            raise PreconditionError("2-コサイクルではありません")
        coords = self.coordinates(c)
        pres = self.group.presentation
        pot = potential(c)
        residual = edge_vector(c, pot)
        if coords:
            residual = (residual - np.asarray(coords) @ self._basis_edges) % self.modulus
        parts = []
        for solver in self._solvers:
            u = solve_local(pres.relation_matrix, residual, solver.prime, solver.exponent)
            if u is None:
                raise PreconditionError("分解の残差がコバウンダリになりません")
            parts.append(u)
        d = len(self.group.generators)
        u = crt_combine(parts, self.modulus) if parts else np.zeros(d, dtype=np.int64)
        witness = Cochain1(self.group, self.modulus, pres.words @ u - pot)
        return coords, witness

    def cocycle(self, coords) -> Cochain2:
        total = Cochain2.zero(self.group, self.modulus)
        for a, b in zip(coords, self.basis):
            if a:
                total = total + int(a) * b
        return total

    def is_zero_class(self, c: Cochain2) -> bool:
        return not any(self.coordinates(c))

    def same_class(self, a: Cochain2, b: Cochain2) -> bool:
        return self.is_zero_class(a - b)


@lru_cache(maxsize=128)
def h2(g: FiniteGroup, m: int) -> H2Structure:
    """H²(G, Z/m) = ker K / im B"""
    _check_modulus(m)
    if g.order > H2_ORDER_CAP:
        raise OrderCapError(f"h2: 位数 {g.order} が上限 {H2_ORDER_CAP} を超えています")
    pres = g.presentation
    ne = pres.num_edges
    if len(g.generators) * ne * ne > H2_MATRIX_CAP:
        raise OrderCapError(f"h2: コサイクル条件行列が上限 {H2_MATRIX_CAP} を超えます")
    kmat = cocycle_conditions(g)
    bmat = pres.relation_matrix
    basis: list[Cochain2] = []
    factors: list[int] = []
    solvers = []
    parts = prime_power_parts(m)
    for e, (p, k, _) in zip(crt_idempotents(m) if parts else (), parts):
        edges, orders, solver = _local_h2(kmat, bmat, p, k, e)
        for vec, order in zip(edges, orders):
            basis.append(cocycle_from_edges(g, vec * e % m, m))
            factors.append(order)
        solvers.append(solver)
    logger.debug("h2(%s, %d): 不変因子 %s", g.name, m, factors)
    return H2Structure(g, m, tuple(basis), tuple(factors), tuple(solvers))


# --- 交代形式と対称部分 ------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SkewForm:
    """a(σ,τ) = c(σ,τ) − c(τ,σ)"""

    group: FiniteGroup
    modulus: int
    values: np.ndarray = field(repr=False)

    def is_zero(self) -> bool:
        return not (self.values % self.modulus).any()

    def is_alternating_bilinear(self) -> bool:
        t, v, m = self.group.table, self.values, self.modulus
        left = (v[t] - v[:, None, :] - v[None, :, :]) % m
        right = (v[:, t] - v[:, :, None] - v[:, None, :]) % m
        return not (left.any() or right.any() or (np.diagonal(v) % m).any())


def skew_of(c: Cochain2) -> SkewForm:
    v = c.values
    return SkewForm(c.group, c.modulus, (v - v.T) % c.modulus)


@dataclass(frozen=True, eq=False)
class SkewBasis:
    """Skew(G, Z/m) ≅ ⊕_{i<j} Z/gcd(o_i, o_j, m) の座標系"""

    group: FiniteGroup
    modulus: int
    coordinates: np.ndarray = field(repr=False)
    cyclic_orders: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]
    orders: tuple[int, ...]

    @property
    def order(self) -> int:
        total = 1
        for o in self.orders:
            total *= o
        return total

    @cached_property
    def units(self) -> tuple[int, ...]:
        """座標が単位ベクトルとなる元"""
        found = []
        for i in range(len(self.cyclic_orders)):
            target = np.zeros(len(self.cyclic_orders), dtype=np.int64)
            target[i] = 1
            found.append(int(np.flatnonzero((self.coordinates == target).all(axis=1))[0]))
        return tuple(found)

    def coordinates_of(self, form: SkewForm) -> tuple[int, ...]:
        m = self.modulus
        out = []
        for (i, j), order in zip(self.pairs, self.orders):
            val = int(form.values[self.units[i], self.units[j]]) % m
            out.append(val // (m // order) % order)
        return tuple(out)

    def bilinear_cocycle(self, k: int) -> Cochain2:
        """Ψ の切断: k 番目の生成元に写る双線形コサイクル"""
        i, j = self.pairs[k]
        scale = self.modulus // self.orders[k]
        return Cochain2(self.group, self.modulus,
                        scale * np.outer(self.coordinates[:, i], self.coordinates[:, j]))


def abelian_coordinates(g: FiniteGroup) -> tuple[np.ndarray, tuple[int, ...]]:
    """可換群の座標関数 G ≅ ⊕ Z/o_i（双対群の巡回分解から作る）"""
    if not g.is_abelian:
        raise PreconditionError("可換群ではありません")
    if g.order == 1:
        return np.zeros((1, 0), dtype=np.int64), ()
    n = g.exponent
    chars = h1_basis(g, n)
    coords = np.stack([c.values // (n // o) for c, o in chars], axis=1)
    return coords, tuple(o for _, o in chars)


def skew_basis(g: FiniteGroup, m: int) -> SkewBasis:
    coords, orders = abelian_coordinates(g)
    pairs, skew_orders = [], []
    for i, j in itertools.combinations(range(len(orders)), 2):
        order = int(np.gcd.reduce([orders[i], orders[j], m]))
        if order > 1:
            pairs.append((i, j))
            skew_orders.append(order)
    return SkewBasis(g, m, coords, orders, tuple(pairs), tuple(skew_orders))


@dataclass(frozen=True, eq=False)
class SymSkewDecomposition:
    """Ψ: H² → Skew(G, Z/m) とその切断。H²_sym = ker Ψ"""

    h2: H2Structure
    skew: SkewBasis
    psi_matrix: np.ndarray = field(repr=False)
    sym_generators: tuple[tuple[int, ...], ...]
    section: tuple[Cochain2, ...]

    @property
    def sym_order(self) -> int:
        return span_size(self.sym_generators, self.h2.invariant_factors)

    def psi(self, c: Cochain2) -> tuple[int, ...]:
        return self.skew.coordinates_of(skew_of(c))


def sym_sk_decompose(h: H2Structure) -> SymSkewDecomposition:
    """可換群 G について H² = H²_sym ⊕ Skew(G, Z/m) を具体的に与える"""
    g, m = h.group, h.modulus
    if not g.is_abelian:
        raise PreconditionError("sym_sk_decompose は可換群のみ")
    skew = skew_basis(g, m)
    npairs = len(skew.pairs)
    psi = np.array([skew.coordinates_of(skew_of(b)) for b in h.basis],
                   dtype=np.int64).reshape(h.rank, npairs).T
    # Ψ を Z/m 値の行列に揃えてから核を取る
    scale = np.array([m // o for o in skew.orders], dtype=np.int64).reshape(npairs, 1)
    gens = kernel_mod(psi * scale % m, m) if h.rank else []
    factors = np.array(h.invariant_factors, dtype=np.int64)
    sym = sorted({tuple(int(x) for x in vec % factors) for vec, _ in gens} - {(0,) * h.rank})
    section = tuple(skew.bilinear_cocycle(k) for k in range(npairs))
    return SymSkewDecomposition(h, skew, psi, tuple(sym), section)


def span_size(vectors, orders: tuple[int, ...]) -> int:
    """⊕ Z/orders の中で vectors が生成する部分群の位数"""
    radix = np.cumprod((1,) + tuple(orders[:-1]), dtype=np.int64) if orders else np.zeros(0, np.int64)
    total = int(np.prod(orders, dtype=np.int64)) if orders else 1
    if total > ENUMERATION_CAP * 10:
        raise OrderCapError(f"部分群の列挙 {total} が上限を超えています")
    mods = np.array(orders, dtype=np.int64)
    gens = [np.asarray(v, dtype=np.int64) % mods for v in vectors if np.asarray(v).any()]
    seen = np.zeros(total, dtype=bool)
    seen[0] = True
    frontier = np.zeros((1, len(orders)), dtype=np.int64)
    while frontier.size and gens:
        new = np.concatenate([(frontier + v) % mods for v in gens])
        codes = new @ radix
        fresh, first = np.unique(codes, return_index=True)
        mask = ~seen[fresh]
        seen[fresh[mask]] = True
        frontier = new[first[mask]]
    return int(seen.sum())
