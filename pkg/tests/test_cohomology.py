import itertools
from math import gcd

import numpy as np
import pytest

from descent3.cohomology import (
    Cochain1,
    Cochain2,
    bockstein,
    coboundary_witness,
    cup,
    d1,
    h1,
    h1_order,
    h2,
    inflate,
    invariants_h1,
    is_2cocycle,
    restrict,
    skew_of,
    span_size,
    sym_sk_decompose,
    transgression,
)
from descent3.errors import PreconditionError
from descent3.groups import Subgroup, make_group, quotient


def _brute_h2_order(spec: str, m: int) -> int:
    """全ての正規化 2-コチェインを並べて |Z²| / |B²| を数える"""
    g = make_group(spec)
    n = g.order
    cocycles = 0
    for entries in itertools.product(range(m), repeat=(n - 1) ** 2):
        values = np.zeros((n, n), dtype=np.int64)
        values[1:, 1:] = np.array(entries, dtype=np.int64).reshape(n - 1, n - 1)
        cocycles += is_2cocycle(Cochain2(g, m, values))
    homs = 0
    for entries in itertools.product(range(m), repeat=n - 1):
        homs += Cochain1(g, m, np.array((0,) + entries)).is_homomorphism()
    coboundaries = m ** (n - 1) // homs
    return cocycles // coboundaries


@pytest.mark.parametrize("spec, m", [
    ("cyclic:2", 2),
    ("cyclic:2", 3),
    ("cyclic:3", 3),
    ("cyclic:4", 2),
    ("elementary:2:2", 2),
])
def test_h2_order_matches_brute_force(spec, m):
    assert h2(make_group(spec), m).order == _brute_h2_order(spec, m)


@pytest.mark.parametrize("n, m", [(2, 2), (4, 2), (6, 4), (9, 3), (8, 12), (5, 5), (7, 3)])
def test_h2_of_cyclic_group(n, m):
    assert h2(make_group(f"cyclic:{n}"), m).order == gcd(n, m)


@pytest.mark.parametrize("spec, m, factors", [
    ("elementary:2:2", 2, (2, 2, 2)),
    ("elementary:3:2", 3, (3, 3, 3)),
    ("quaternion:8", 2, (2, 2)),
    ("dihedral:8", 2, (2, 2, 2)),
])
def test_h2_invariant_factors(spec, m, factors):
    assert tuple(sorted(h2(make_group(spec), m).invariant_factors)) == factors


def test_h1():
    g = make_group("cyclic:6")
    chars = h1(g, 4)
    assert len(chars) == 2 == h1_order(g, 4)
    assert chars[0].is_zero()
    assert all(c.is_homomorphism() for c in chars)
    assert h1_order(make_group("quaternion:8"), 2) == 4
    assert h1_order(make_group("heisenberg:3"), 3) == 9


@pytest.mark.parametrize("spec", ["cyclic:4", "dihedral:8", "heisenberg:3"])
def test_coboundaries_are_cocycles_and_trivial(spec):
    g = make_group(spec)
    rng = np.random.default_rng(1)
    h = h2(g, 4)
    for _ in range(10):
        values = rng.integers(0, 4, size=g.order)
        values[0] = 0
        f = Cochain1(g, 4, values)
        assert is_2cocycle(d1(f))
        assert h.is_zero_class(d1(f))
        witness = coboundary_witness(d1(f))
        assert witness is not None and d1(witness) == d1(f)


def test_coboundary_witness_rejects_nontrivial_class():
    g = make_group("cyclic:2")
    psi = h1(g, 2)[1]
    assert coboundary_witness(bockstein(psi)) is None


def test_cochain_validation():
    g = make_group("cyclic:3")
    with pytest.raises(PreconditionError):
        Cochain1(g, 3, np.array([1, 0, 0]))
    values = np.zeros((3, 3), dtype=np.int64)
    values[0, 1] = 1
    with pytest.raises(PreconditionError):
        Cochain2(g, 3, values)
    with pytest.raises(PreconditionError):
        Cochain1.zero(g, 3) + Cochain1.zero(g, 9)
    with pytest.raises(PreconditionError):
        Cochain1.zero(g, 0)


def test_bockstein():
    z2, z4 = make_group("cyclic:2"), make_group("cyclic:4")
    psi = h1(z2, 2)[1]
    assert not h2(z2, 2).is_zero_class(bockstein(psi))
    assert h2(z2, 2).same_class(bockstein(psi), cup(psi, psi))
    # Z/4 → Z/2 は Z/4 → Z/4 に持ち上がる
    assert h2(z4, 2).is_zero_class(bockstein(h1(z4, 2)[1]))
    not_hom = Cochain1(z4, 2, np.array([0, 1, 1, 0]))
    with pytest.raises(PreconditionError):
        bockstein(not_hom)


def test_bockstein_with_explicit_lift():
    g = make_group("cyclic:3")
    psi = h1(g, 3)[1]
    lift = Cochain1(g, 9, psi.values)
    assert bockstein(psi, lift=lift) == bockstein(psi)
    with pytest.raises(PreconditionError):
        bockstein(psi, lift=Cochain1(g, 9, psi.values + np.array([0, 1, 0])))


def test_cup_is_antisymmetric_up_to_coboundary():
    g = make_group("elementary:3:2")
    h = h2(g, 3)
    chars = h1(g, 3)
    for a, b in itertools.product(chars, repeat=2):
        c = cup(a, b)
        assert is_2cocycle(c)
        assert h.same_class(c, -cup(b, a))
        assert skew_of(c).is_alternating_bilinear()


@pytest.mark.parametrize("spec, m", [
    ("dihedral:8", 2),
    ("heisenberg:3", 3),
    ("direct:cyclic:4,cyclic:2", 4),
])
def test_decompose_round_trip(spec, m):
    g = make_group(spec)
    h = h2(g, m)
    rng = np.random.default_rng(7)
    for _ in range(5):
        coords = tuple(int(rng.integers(0, f)) for f in h.invariant_factors)
        values = rng.integers(0, m, size=g.order)
        values[0] = 0
        c = h.cocycle(coords) + d1(Cochain1(g, m, values))
        got, witness = h.decompose(c)
        assert got == coords
        assert h.cocycle(got) + d1(witness) == c


def test_decompose_rejects_non_cocycle():
    g = make_group("cyclic:4")
    values = np.zeros((4, 4), dtype=np.int64)
    values[1, 1] = 1
    with pytest.raises(PreconditionError):
        h2(g, 2).decompose(Cochain2(g, 2, values))


@pytest.mark.parametrize("spec, m, total, sym, skew", [
    ("elementary:2:2", 2, 8, 4, 2),
    ("elementary:3:2", 3, 27, 9, 3),
    ("direct:cyclic:4,cyclic:2", 4, 16, 8, 2),
])
def test_sym_skew_decomposition(spec, m, total, sym, skew):
    h = h2(make_group(spec), m)
    dec = sym_sk_decompose(h)
    assert h.order == total
    assert dec.sym_order == sym
    assert dec.skew.order == skew
    for k, c in enumerate(dec.section):
        expected = [0] * len(dec.skew.orders)
        expected[k] = 1
        assert list(dec.psi(c)) == expected


def test_sym_skew_requires_abelian_group():
    with pytest.raises(PreconditionError):
        sym_sk_decompose(h2(make_group("dihedral:8"), 2))


def test_span_size():
    assert span_size([(1, 0)], (2, 2)) == 2
    assert span_size([(1, 1), (1, 0)], (2, 2)) == 4
    assert span_size([(2,)], (4,)) == 2
    assert span_size([], (3,)) == 1


def test_transgression_detects_non_split_extension():
    g = make_group("cyclic:4")
    m_sub = Subgroup.of(g, [0, 2])
    phi = invariants_h1(m_sub, 2)[1]
    c, proj = transgression(m_sub, phi)
    assert proj.codomain.order == 2
    assert not h2(proj.codomain, 2).is_zero_class(c)

    split = make_group("elementary:2:2")
    n = Subgroup.of(split, [0, 1])
    c, proj = transgression(n, invariants_h1(n, 2)[1])
    assert h2(proj.codomain, 2).is_zero_class(c)


def test_transgression_requires_invariant_homomorphism():
    g = make_group("dihedral:8")
    rotations = Subgroup.of(g, [0, 1, 2, 3])
    k, _ = rotations.as_group
    with pytest.raises(PreconditionError):
        transgression(rotations, Cochain1(k, 4, np.arange(4)))
    assert len(invariants_h1(rotations, 4)) == 2
    assert len(invariants_h1(rotations, 2)) == 2


def test_restrict_and_inflate():
    g = make_group("cyclic:8")
    sub = Subgroup.of(g, [0, 2, 4, 6])
    psi = h1(g, 4)[1]
    res = restrict(psi, sub)
    assert res.group.order == 4 and res.is_homomorphism()
    qg, proj = quotient(g, sub)
    chi = h1(qg, 2)[1]
    inflated = inflate(chi, proj)
    assert inflated.group is g
    assert inflated.values.tolist() == [0, 1, 0, 1, 0, 1, 0, 1]
    with pytest.raises(PreconditionError):
        inflate(psi, proj)
