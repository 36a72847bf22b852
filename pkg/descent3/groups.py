"""有限群エンジン

群は乗積表（添字 0 が単位元）として持つ。部分群・商群・準同型の列挙・
同型判定はすべてこの表の上で numpy により計算する。
"""

import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd, lcm

import galois
import numpy as np

from .errors import GroupSpecError, OrderCapError, PreconditionError
from .settings import HOM_CANDIDATE_CAP, HOM_CHUNK, order_cap

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SchreierPresentation:
    """Cayley グラフの BFS 全域木と非木辺（Schreier 生成元）"""

    bfs_order: np.ndarray
    parent: np.ndarray
    letter: np.ndarray
    words: np.ndarray
    edge_src: np.ndarray
    edge_gen: np.ndarray
    edge_dst: np.ndarray
    edge_index: np.ndarray

    @property
    def num_edges(self) -> int:
        return len(self.edge_src)

    @cached_property
    def relation_matrix(self) -> np.ndarray:
        """行 e = (σ, y) が L(σ) + e_y − L(σy) の整数行列"""
        d = self.words.shape[1]
        rows = self.words[self.edge_src] - self.words[self.edge_dst]
        rows[np.arange(self.num_edges), self.edge_gen] += 1
        return rows.reshape(self.num_edges, d)


@dataclass(frozen=True)
class _PrefixLevel:
    nodes: np.ndarray
    parent: np.ndarray
    letter: np.ndarray
    edge_src: np.ndarray
    edge_gen: np.ndarray
    edge_dst: np.ndarray


def _spanning_tree(table: np.ndarray, gens: tuple[int, ...]):
    n = table.shape[0]
    parent = np.full(n, -1, dtype=np.int64)
    letter = np.full(n, -1, dtype=np.int64)
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    order = [0]
    head = 0
    while head < len(order):
        node = order[head]
        head += 1
        for y, g in enumerate(gens):
            child = int(table[node, g])
            if not seen[child]:
                seen[child] = True
                parent[child] = node
                letter[child] = y
                order.append(child)
    nodes = np.array(order, dtype=np.int64)
    src, gen, dst = [], [], []
    for node in order:
        for y, g in enumerate(gens):
            child = int(table[node, g])
            if parent[child] == node and letter[child] == y:
                continue
            src.append(node)
            gen.append(y)
            dst.append(child)
    return nodes, parent, letter, np.array(src, dtype=np.int64), \
        np.array(gen, dtype=np.int64), np.array(dst, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """乗積表で与えられた有限群"""

    table: np.ndarray = field(repr=False)
    generators: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, repr=False)
    name: str | None = None

    def __post_init__(self):
        table = np.ascontiguousarray(self.table, dtype=np.int64)
        table.setflags(write=False)
        object.__setattr__(self, "table", table)
        # 生成元は重複なし・単位元なし
        gens = tuple(dict.fromkeys(int(g) for g in self.generators if int(g) != 0))
        object.__setattr__(self, "generators", gens)

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def __len__(self) -> int:
        return self.order

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    @cached_property
    def inverse(self) -> np.ndarray:
        inv = np.argmax(self.table == 0, axis=1).astype(np.int64)
        inv.setflags(write=False)
        return inv

    def power(self, x: int, e: int) -> int:
        return int(self.power_map(e)[x])

    def power_map(self, e: int) -> np.ndarray:
        """x ↦ x^e を全元について返す"""
        n = self.order
        if e < 0:
            return self.power_map(-e)[self.inverse]
        result = np.zeros(n, dtype=np.int64)
        base = np.arange(n, dtype=np.int64)
        while e:
            if e & 1:
                result = self.table[result, base]
            base = self.table[base, base]
            e >>= 1
        return result

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        idx = np.arange(n, dtype=np.int64)
        orders = np.zeros(n, dtype=np.int64)
        orders[0] = 1
        cur = idx.copy()
        k = 1
        while not orders.all():
            cur = self.table[cur, idx]
            k += 1
            orders[(cur == 0) & (orders == 0)] = k
        orders.setflags(write=False)
        return orders

    @cached_property
    def exponent(self) -> int:
        return int(lcm(*(int(o) for o in set(self.element_orders.tolist()))))

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def presentation(self) -> SchreierPresentation:
        nodes, parent, letter, src, gen, dst = _spanning_tree(self.table, self.generators)
        d = len(self.generators)
        words = np.zeros((self.order, d), dtype=np.int64)
        for node in nodes[1:]:
            words[node] = words[parent[node]]
            words[node, letter[node]] += 1
        edge_index = np.full((self.order, d), -1, dtype=np.int64)
        edge_index[src, gen] = np.arange(len(src))
        return SchreierPresentation(nodes, parent, letter, words, src, gen, dst, edge_index)

    @cached_property
    def prefix_levels(self) -> tuple[_PrefixLevel, ...]:
        """⟨g_1..g_k⟩ ごとの全域木（準同型列挙の枝刈り用）"""
        levels = []
        for k in range(1, len(self.generators) + 1):
            gens = self.generators[:k]
            nodes, parent, letter, src, gen, dst = _spanning_tree(self.table, gens)
            levels.append(_PrefixLevel(nodes, parent, letter, src, gen, dst))
        return tuple(levels)

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        n = self.order
        seen = np.zeros(n, dtype=bool)
        classes = []
        for x in range(n):
            if seen[x]:
                continue
            orbit = {x}
            frontier = [x]
            while frontier:
                nxt = []
                for y in frontier:
                    for g in self.generators:
                        z = int(self.table[self.table[self.inverse[g], y], g])
                        if z not in orbit:
                            orbit.add(z)
                            nxt.append(z)
                frontier = nxt
            members = tuple(sorted(orbit))
            seen[list(members)] = True
            classes.append(members)
        return tuple(classes)

    @cached_property
    def fingerprint(self) -> tuple:
        """同型不変量の組（位数, 冪数, 元の位数分布, |Z|, |[G,G]|, 可換化の不変因子）"""
        whole = Subgroup.whole(self)
        derived = commutator_subgroup(whole, self)
        ab, _ = quotient(self, derived)
        return (
            self.order,
            self.exponent,
            tuple(sorted(Counter(self.element_orders.tolist()).items())),
            center(self).order,
            derived.order,
            abelian_invariants(ab),
        )

    def verify(self) -> None:
        """群の公理と生成元の条件を全表で検査する"""
        n = self.order
        t = self.table
        idx = np.arange(n)
        if t.shape != (n, n) or t.min() < 0 or t.max() >= n:
            raise PreconditionError("乗積表の形が不正です")
        if not (np.array_equal(t[0], idx) and np.array_equal(t[:, 0], idx)):
            raise PreconditionError("添字 0 が単位元ではありません")
        if not (np.sort(t, axis=1) == idx).all() or not (np.sort(t, axis=0) == idx[:, None]).all():
            raise PreconditionError("逆元が存在しない元があります")
        # 生成元ごとの結合律で全体の結合律が従う
        for g in self.generators:
            col = t[:, g]
            if not np.array_equal(col[t], t[:, col]):
                raise PreconditionError("結合律が成り立ちません")
        if closure(self, self.generators).order != n:
            raise PreconditionError("生成元が群全体を生成しません")


@dataclass(frozen=True)
class Subgroup:
    """親群の元の添字集合としての部分群"""

    parent: FiniteGroup = field(repr=False)
    members: tuple[int, ...]

    @staticmethod
    def of(parent: FiniteGroup, members) -> "Subgroup":
        return Subgroup(parent, tuple(sorted({int(x) for x in members})))

    @staticmethod
    def trivial(parent: FiniteGroup) -> "Subgroup":
        return Subgroup(parent, (0,))

    @staticmethod
    def whole(parent: FiniteGroup) -> "Subgroup":
        return Subgroup(parent, tuple(range(parent.order)))

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.members, dtype=np.int64)
        arr.setflags(write=False)
        return arr

    @cached_property
    def mask(self) -> np.ndarray:
        mask = np.zeros(self.parent.order, dtype=bool)
        mask[list(self.members)] = True
        mask.setflags(write=False)
        return mask

    def __contains__(self, x: int) -> bool:
        return bool(self.mask[x])

    def __le__(self, other: "Subgroup") -> bool:
        return other.parent is self.parent and bool(other.mask[self.array].all())

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self.order < other.order

    def sort_key(self) -> tuple:
        return (self.order, self.members)

    def is_normal(self) -> bool:
        g = self.parent
        arr = self.array
        for x in g.generators:
            conj = g.table[g.table[g.inverse[x], arr], x]
            if not self.mask[conj].all():
                return False
        return True

    def intersect(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, tuple(int(x) for x in self.array[other.mask[self.array]]))

    @cached_property
    def as_group(self) -> tuple[FiniteGroup, "GroupHom"]:
        """部分群を独立した群として取り出し、包含写像と組にする"""
        if self.order == self.parent.order:
            g = self.parent
            return g, GroupHom(g, g, np.arange(g.order, dtype=np.int64))
        arr = self.array
        position = np.full(self.parent.order, -1, dtype=np.int64)
        position[arr] = np.arange(self.order)
        table = position[self.parent.table[np.ix_(arr, arr)]]
        gens = _small_generating_set(self)
        local_gens = tuple(int(position[x]) for x in gens)
        labels = tuple(self.parent.label(int(x)) for x in arr) if self.parent.labels else None
        sub = FiniteGroup(table, local_gens, labels, None)
        return sub, GroupHom(sub, self.parent, arr.copy())

    @cached_property
    def _quotient(self) -> tuple[FiniteGroup, "GroupHom"]:
        return _build_quotient(self.parent, self)


@dataclass(frozen=True, eq=False)
class GroupHom:
    """全元の像の表で与えた群準同型"""

    domain: FiniteGroup
    codomain: FiniteGroup
    images: np.ndarray = field(repr=False)

    def __post_init__(self):
        images = np.ascontiguousarray(self.images, dtype=np.int64)
        images.setflags(write=False)
        object.__setattr__(self, "images", images)

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    def is_homomorphism(self) -> bool:
        im = self.images
        if im.shape != (self.domain.order,) or im[0] != 0:
            return False
        lhs = im[self.domain.table]
        rhs = self.codomain.table[im[:, None], im[None, :]]
        return bool(np.array_equal(lhs, rhs))

    def kernel(self) -> Subgroup:
        return Subgroup(self.domain, tuple(int(x) for x in np.flatnonzero(self.images == 0)))

    def image(self) -> Subgroup:
        return Subgroup.of(self.codomain, np.unique(self.images))

    def is_injective(self) -> bool:
        return len(np.unique(self.images)) == self.domain.order

    def is_surjective(self) -> bool:
        return len(np.unique(self.images)) == self.codomain.order

    def is_bijective(self) -> bool:
        return self.domain.order == self.codomain.order and self.is_injective()

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """self ∘ inner"""
        if not same_group(inner.codomain, self.domain):
            raise PreconditionError("合成できない準同型です")
        return GroupHom(inner.domain, self.codomain, self.images[inner.images])

    def inverse(self) -> "GroupHom":
        if not self.is_bijective():
            raise PreconditionError("全単射ではありません")
        inv = np.empty(self.domain.order, dtype=np.int64)
        inv[self.images] = np.arange(self.domain.order)
        return GroupHom(self.codomain, self.domain, inv)


# --- 部分群 ------------------------------------------------------------------

def closure(g: FiniteGroup, gens) -> Subgroup:
    """gens で生成される部分群"""
    gens_arr = np.unique(np.asarray(list(gens), dtype=np.int64))
    gens_arr = gens_arr[gens_arr != 0]
    mask = np.zeros(g.order, dtype=bool)
    mask[0] = True
    frontier = np.array([0], dtype=np.int64)
    while frontier.size and gens_arr.size:
        new = np.unique(g.table[np.ix_(frontier, gens_arr)].ravel())
        new = new[~mask[new]]
        mask[new] = True
        frontier = new
    return Subgroup(g, tuple(int(x) for x in np.flatnonzero(mask)))


def _small_generating_set(h: Subgroup) -> tuple[int, ...]:
    """部分群の生成元を貪欲に選ぶ（位数の大きい元から）"""
    g = h.parent
    orders = g.element_orders[h.array]
    candidates = h.array[np.argsort(-orders, kind="stable")]
    gens: list[int] = []
    current = Subgroup.trivial(g)
    for x in candidates:
        if current.order == h.order:
            break
        if int(x) in current:
            continue
        gens.append(int(x))
        current = closure(g, gens)
    return tuple(gens)


def join(a: Subgroup, b: Subgroup) -> Subgroup:
    """⟨A ∪ B⟩"""
    return closure(a.parent, a.members + b.members)


def normal_join(a: Subgroup, b: Subgroup) -> Subgroup:
    """正規部分群どうしの積 AB（積集合がそのまま部分群）"""
    t = a.parent.table
    return Subgroup(a.parent, tuple(int(x) for x in np.unique(t[np.ix_(a.array, b.array)])))


def center(g: FiniteGroup) -> Subgroup:
    mask = (g.table == g.table.T).all(axis=1)
    return Subgroup(g, tuple(int(x) for x in np.flatnonzero(mask)))


def commutator_subgroup(h: Subgroup, g: FiniteGroup) -> Subgroup:
    """[H, G] = ⟨h⁻¹g⁻¹hg⟩"""
    if h.parent is not g:
        raise PreconditionError("H は G の部分群ではありません")
    t, inv = g.table, g.inverse
    hs = h.array[:, None]
    gs = np.arange(g.order, dtype=np.int64)[None, :]
    comms = t[t[t[inv[hs], inv[gs]], hs], gs]
    return closure(g, np.unique(comms))


def power_subgroup(h: Subgroup, q: int) -> Subgroup:
    """⟨h^q : h ∈ H⟩"""
    g = h.parent
    powers = g.power_map(q)[h.array]
    return closure(g, np.unique(powers))


def all_subgroups(g: FiniteGroup) -> list[Subgroup]:
    """巡回部分群の和の閉包を反復して全部分群を求める"""
    cyclic = {closure(g, [x]).members for x in range(g.order)}
    cyclic_list = [Subgroup(g, m) for m in sorted(cyclic, key=lambda m: (len(m), m))]
    found = {m: Subgroup(g, m) for m in cyclic}
    frontier = list(found.values())
    while frontier:
        nxt = []
        for a in frontier:
            for c in cyclic_list:
                if c <= a:
                    continue
                j = join(a, c)
                if j.members not in found:
                    found[j.members] = j
                    nxt.append(j)
        frontier = nxt
    return sorted(found.values(), key=Subgroup.sort_key)


def normal_subgroups(g: FiniteGroup, cap: int | None = None) -> list[Subgroup]:
    """全正規部分群（位数, 元の集合）順"""
    limit = order_cap(cap)
    if g.order > limit:
        raise OrderCapError(f"位数 {g.order} が上限 {limit} を超えています")
    minimal = {}
    for cls in g.conjugacy_classes:
        n = closure(g, cls)
        minimal.setdefault(n.members, n)
    blocks = sorted(minimal.values(), key=Subgroup.sort_key)
    found = {s.members: s for s in blocks}
    found.setdefault((0,), Subgroup.trivial(g))
    frontier = list(blocks)
    while frontier:
        nxt = []
        for a in frontier:
            for b in blocks:
                if b <= a:
                    continue
                j = normal_join(a, b)
                if j.members not in found:
                    found[j.members] = j
                    nxt.append(j)
        frontier = nxt
    result = sorted(found.values(), key=Subgroup.sort_key)
    logger.debug("normal_subgroups(%s): %d 個", g.name, len(result))
    return result


# --- 商群 --------------------------------------------------------------------

def _build_quotient(g: FiniteGroup, n: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    t = g.table
    reps_of = t[:, n.array].min(axis=1)
    reps = np.unique(reps_of)
    coset = np.searchsorted(reps, reps_of)
    qtable = coset[t[np.ix_(reps, reps)]]
    gens = tuple(int(coset[x]) for x in g.generators)
    labels = None
    if g.labels:
        labels = tuple(g.labels[r] + "N" if r else "1" for r in reps)
    name = f"{g.name}/N{n.order}" if g.name else None
    q = FiniteGroup(qtable, gens, labels, name)
    return q, GroupHom(g, q, coset)


def coset_section(proj: GroupHom) -> np.ndarray:
    """各ファイバーの最小添字の元（s(1) = 1）"""
    section = np.full(proj.codomain.order, proj.domain.order, dtype=np.int64)
    np.minimum.at(section, proj.images, np.arange(proj.domain.order, dtype=np.int64))
    if (section >= proj.domain.order).any():
        raise PreconditionError("全射ではありません")
    return section


def same_group(a: FiniteGroup, b: FiniteGroup) -> bool:
    return a is b or (a.order == b.order and a.generators == b.generators
                      and bool(np.array_equal(a.table, b.table)))


def quotient(g: FiniteGroup, n: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """剰余群 G/N と射影"""
    if n.parent is not g:
        raise PreconditionError("N は G の部分群ではありません")
    if not n.is_normal():
        raise PreconditionError("N は正規部分群ではありません")
    return n._quotient


# --- 可換群の不変量 ---------------------------------------------------------

def abelian_invariants(g: FiniteGroup) -> tuple[int, ...]:
    """可換群の準素因子分解 Z/p^e の p^e を昇順に返す"""
    if not g.is_abelian:
        raise PreconditionError("可換群ではありません")
    if g.order == 1:
        return ()
    orders = g.element_orders
    invariants: list[int] = []
    primes, multiplicities = galois.factors(g.order)
    for p, k in zip((int(x) for x in primes), (int(x) for x in multiplicities)):
        # |{x : x^(p^j) = 1}| = p^(Σ min(e_i, j))
        logs = [0]
        while logs[-1] < k:
            j = len(logs)
            count = int((p ** j % orders == 0).sum())
            logs.append(_exact_log(count, p))
        at_least = [logs[j] - logs[j - 1] for j in range(1, len(logs))] + [0]
        for e in range(1, len(at_least)):
            invariants.extend([p ** e] * (at_least[e - 1] - at_least[e]))
    return tuple(sorted(invariants))


def _exact_log(n: int, p: int) -> int:
    e = 0
    while n > 1:
        n //= p
        e += 1
    return e


# --- 準同型 ------------------------------------------------------------------

def _propagate(level: _PrefixLevel, cands: np.ndarray, target: FiniteGroup, n: int) -> np.ndarray:
    img = np.full((len(cands), n), -1, dtype=np.int64)
    img[:, 0] = 0
    t = target.table
    for node in level.nodes[1:]:
        img[:, node] = t[img[:, level.parent[node]], cands[:, level.letter[node]]]
    return img


def _consistent(level: _PrefixLevel, cands: np.ndarray, img: np.ndarray, target: FiniteGroup) -> np.ndarray:
    if level.edge_src.size == 0:
        return np.ones(len(cands), dtype=bool)
    lhs = target.table[img[:, level.edge_src], cands[:, level.edge_gen]]
    return (lhs == img[:, level.edge_dst]).all(axis=1)


def hom_image_blocks(g: FiniteGroup, h: FiniteGroup, candidates=None):
    """全準同型の像の配列をチャンクごとに生成する（生成元の像の辞書式順）"""
    d = len(g.generators)
    if d == 0:
        yield np.zeros((1, g.order), dtype=np.int64)
        return
    choices = [np.arange(h.order, dtype=np.int64) if candidates is None
               else np.asarray(candidates[i], dtype=np.int64) for i in range(d)]
    cands = np.zeros((1, 0), dtype=np.int64)
    for k, level in enumerate(g.prefix_levels):
        opts = choices[k]
        total = len(cands) * len(opts)
        if total > HOM_CANDIDATE_CAP:
            raise OrderCapError(f"準同型の候補数 {total} が上限 {HOM_CANDIDATE_CAP} を超えています")
        cands = np.hstack([np.repeat(cands, len(opts), axis=0),
                           np.tile(opts, len(cands))[:, None]])
        last = k == d - 1
        kept = []
        step = max(1, min(HOM_CHUNK, (1 << 22) // g.order))
        for start in range(0, len(cands), step):
            chunk = cands[start:start + step]
            img = _propagate(level, chunk, h, g.order)
            ok = _consistent(level, chunk, img, h)
            if last:
                if ok.any():
                    yield img[ok]
            else:
                kept.append(chunk[ok])
        if last:
            return
        cands = np.concatenate(kept) if kept else np.zeros((0, k + 1), dtype=np.int64)
        if not len(cands):
            return


def homs(g: FiniteGroup, h: FiniteGroup, epi_only: bool = False, *,
         candidates=None) -> list[GroupHom]:
    """G → H の準同型（epi_only なら全射のみ）を列挙する"""
    result = []
    for block in hom_image_blocks(g, h, candidates):
        if epi_only:
            srt = np.sort(block, axis=1)
            distinct = 1 + (np.diff(srt, axis=1) != 0).sum(axis=1)
            block = block[distinct == h.order]
        result.extend(GroupHom(g, h, row) for row in block)
    return result


def hom_from_images(g: FiniteGroup, h: FiniteGroup, gen_images) -> GroupHom:
    """生成元の像から準同型を組み立てる（関係を満たさなければ例外）"""
    gen_images = [int(x) for x in gen_images]
    if len(gen_images) != len(g.generators):
        raise PreconditionError("生成元の像の個数が一致しません")
    cands = [np.array([x]) for x in gen_images]
    for block in hom_image_blocks(g, h, cands):
        return GroupHom(g, h, block[0])
    raise PreconditionError("生成元の像が関係式を満たしません")


def is_isomorphic(a: FiniteGroup, b: FiniteGroup) -> GroupHom | None:
    """同型写像を一つ返す（存在しなければ None）"""
    if a.order != b.order:
        return None
    if a.fingerprint != b.fingerprint:
        return None
    orders_b = b.element_orders
    cands = [np.flatnonzero(orders_b == a.element_orders[x]) for x in a.generators]
    for block in hom_image_blocks(a, b, cands):
        srt = np.sort(block, axis=1)
        hits = np.flatnonzero((np.diff(srt, axis=1) != 0).all(axis=1))
        if hits.size:
            return GroupHom(a, b, block[hits[0]])
    return None


# --- 群指定ミニ言語 ----------------------------------------------------------

_TOKEN = re.compile(r"[a-z]+|\d+|[:,]")
_KINDS = ("cyclic", "elementary", "dihedral", "quaternion", "heisenberg", "modular", "direct", "semidirect")


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    args: tuple

    def canonical(self) -> str:
        if self.kind == "direct":
            return f"direct:{self.args[0].canonical()},{self.args[1].canonical()}"
        if self.kind == "semidirect":
            return "semidirect:" + ",".join(str(x) for x in self.args)
        return self.kind + ":" + ":".join(str(x) for x in self.args)

    def order(self) -> int:
        k, a = self.kind, self.args
        if k == "cyclic":
            return a[0]
        if k == "elementary":
            return a[0] ** a[1]
        if k == "dihedral":
            return a[0]
        if k == "quaternion":
            return 8
        if k in ("heisenberg", "modular"):
            return a[0] ** 3
        if k == "direct":
            return a[0].order() * a[1].order()
        return a[0] * a[1]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        stripped = text.replace(" ", "")
        self.tokens = _TOKEN.findall(stripped)
        if "".join(self.tokens) != stripped:
            raise GroupSpecError(f"不正な群指定: {text!r}")
        self.pos = 0

    def _next(self) -> str:
        if self.pos >= len(self.tokens):
            raise GroupSpecError(f"群指定が途中で終わっています: {self.text!r}")
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _expect(self, tok: str) -> None:
        got = self._next()
        if got != tok:
            raise GroupSpecError(f"{tok!r} が必要な位置に {got!r}: {self.text!r}")

    def _int(self) -> int:
        tok = self._next()
        if not tok.isdigit():
            raise GroupSpecError(f"整数が必要な位置に {tok!r}: {self.text!r}")
        return int(tok)

    def spec(self) -> GroupSpec:
        kind = self._next()
        if kind not in _KINDS:
            raise GroupSpecError(f"不明な群の種類: {kind!r}")
        self._expect(":")
        if kind == "direct":
            left = self.spec()
            self._expect(",")
            return GroupSpec(kind, (left, self.spec()))
        if kind == "semidirect":
            m = self._int()
            self._expect(",")
            n = self._int()
            self._expect(",")
            return GroupSpec(kind, (m, n, self._int()))
        if kind == "elementary":
            p = self._int()
            self._expect(":")
            return GroupSpec(kind, (p, self._int()))
        return GroupSpec(kind, (self._int(),))

    def parse(self) -> GroupSpec:
        spec = self.spec()
        if self.pos != len(self.tokens):
            raise GroupSpecError(f"群指定の末尾に余分な文字: {self.text!r}")
        _validate(spec)
        return spec


def _validate(spec: GroupSpec) -> None:
    k, a = spec.kind, spec.args
    if k == "cyclic" and a[0] < 1:
        raise GroupSpecError("cyclic:<n> は n ≥ 1")
    if k in ("elementary", "heisenberg", "modular") and not galois.is_prime(a[0]):
        raise GroupSpecError(f"{k} の p は素数: {a[0]}")
    if k == "elementary" and a[1] < 0:
        raise GroupSpecError("elementary:<p>:<n> は n ≥ 0")
    if k == "dihedral" and (a[0] < 2 or a[0] % 2):
        raise GroupSpecError(f"dihedral:<2n> は正の偶数: {a[0]}")
    if k == "quaternion" and a[0] != 8:
        raise GroupSpecError("quaternion は位数 8 のみ対応")
    if k == "direct":
        _validate(a[0])
        _validate(a[1])
    if k == "semidirect":
        m, n, r = a
        if m < 1 or n < 1:
            raise GroupSpecError("semidirect:<m>,<n>,<k> は m, n ≥ 1")
        if gcd(r, m) != 1 or pow(r, n, m) != 1 % m:
            raise GroupSpecError(f"作用の条件 k^n ≡ 1 (mod m) を満たしません: {r}^{n} mod {m}")


def parse_group_spec(text: str) -> GroupSpec:
    return _Parser(text).parse()


def _cyclic(n: int, name: str) -> FiniteGroup:
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    labels = tuple("1" if i == 0 else ("g" if i == 1 else f"g^{i}") for i in range(n))
    return FiniteGroup(table, (1,) if n > 1 else (), labels, name)


def direct_product(a: FiniteGroup, b: FiniteGroup, name: str | None = None) -> FiniteGroup:
    na, nb = a.order, b.order
    idx = np.arange(na * nb)
    ia, ib = idx // nb, idx % nb
    table = a.table[ia[:, None], ia[None, :]] * nb + b.table[ib[:, None], ib[None, :]]
    gens = tuple(g * nb for g in a.generators) + tuple(b.generators)
    labels = tuple(f"({a.label(i)},{b.label(j)})" for i, j in zip(ia, ib))
    if name is None and a.name and b.name:
        name = f"direct:{a.name},{b.name}"
    return FiniteGroup(table, gens, labels, name)


def _word_label(parts: list[tuple[str, int]]) -> str:
    out = []
    for sym, e in parts:
        if e == 0:
            continue
        out.append(sym if e == 1 else f"{sym}^{e}")
    return " ".join(out) or "1"


def _semidirect(m: int, n: int, k: int, name: str) -> FiniteGroup:
    """元 s^i r^j、s⁻¹ r s = r^k"""
    idx = np.arange(n * m)
    i, j = idx // m, idx % m
    kpow = np.array([pow(k, e, m) for e in range(n)], dtype=np.int64)
    ni = (i[:, None] + i[None, :]) % n
    nj = (j[:, None] * kpow[i[None, :]] + j[None, :]) % m
    table = ni * m + nj
    gens = tuple(x for x in (1 % (n * m) if m > 1 else 0, m if n > 1 else 0))
    labels = tuple(_word_label([("s", int(a)), ("r", int(b))]) for a, b in zip(i, j))
    return FiniteGroup(table, gens, labels, name)


def _quaternion(name: str) -> FiniteGroup:
    """元 s^i r^j（i < 2, j < 4）、s² = r²、s⁻¹ r s = r⁻¹"""
    idx = np.arange(8)
    i, j = idx // 4, idx % 4
    sign = np.where(i == 1, -1, 1)
    ni = (i[:, None] + i[None, :]) % 2
    extra = np.where((i[:, None] == 1) & (i[None, :] == 1), 2, 0)
    nj = (j[:, None] * sign[None, :] + j[None, :] + extra) % 4
    table = ni * 4 + nj
    labels = tuple(_word_label([("s", int(a)), ("r", int(b))]) for a, b in zip(i, j))
    return FiniteGroup(table, (1, 4), labels, name)


def _heisenberg(p: int, name: str) -> FiniteGroup:
    """上三角ユニポテント行列 (a, b, c)、[r, s] = t"""
    idx = np.arange(p ** 3)
    a, b, c = idx // (p * p), (idx // p) % p, idx % p
    na = (a[:, None] + a[None, :]) % p
    nb = (b[:, None] + b[None, :]) % p
    nc = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % p
    table = na * p * p + nb * p + nc
    labels = tuple(f"({x},{y},{z})" for x, y, z in zip(a, b, c))
    labels = ("1",) + labels[1:]
    return FiniteGroup(table, (p * p, p), labels, name)


def _build(spec: GroupSpec) -> FiniteGroup:
    name = spec.canonical()
    k, a = spec.kind, spec.args
    if k == "cyclic":
        return _cyclic(a[0], name)
    if k == "elementary":
        p, n = a
        g = _cyclic(p if n else 1, name)
        for _ in range(n - 1):
            g = direct_product(g, _cyclic(p, f"cyclic:{p}"), name)
        return g
    if k == "direct":
        return direct_product(_build(a[0]), _build(a[1]), name)
    if k == "dihedral":
        half = a[0] // 2
        return _semidirect(half, 2, (-1) % half if half > 1 else 0, name)
    if k == "quaternion":
        return _quaternion(name)
    if k == "heisenberg":
        return _heisenberg(a[0], name)
    if k == "modular":
        p = a[0]
        return _semidirect(p * p, p, 1 + p, name)
    m, n, r = a
    return _semidirect(m, n, r % m if m > 1 else 0, name)


@lru_cache(maxsize=256)
def _make_cached(canonical: str) -> FiniteGroup:
    g = _build(parse_group_spec(canonical))
    g.verify()
    return g


def make_group(spec: str, cap: int | None = None) -> FiniteGroup:
    """群指定文字列から群を構成する"""
    parsed = parse_group_spec(spec)
    limit = order_cap(cap)
    if parsed.order() > limit:
        raise OrderCapError(f"{spec}: 位数 {parsed.order()} が上限 {limit} を超えています")
    return _make_cached(parsed.canonical())
