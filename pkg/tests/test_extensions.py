import numpy as np
import pytest

from descent3.cohomology import Cochain2, bockstein, h1, h2, inflate
from descent3.errors import PreconditionError
from descent3.extensions import (
    CentralExtension,
    ExtensionClass,
    are_equivalent,
    baer_sum,
    classify_middle,
    direct_product_ext,
    extension_table,
    from_cocycle,
    inflate_ext,
    omega_catalog,
    omega_indices,
    projection,
    to_cocycle,
    twist,
)
from descent3.groups import GroupHom, is_isomorphic, make_group

MIDDLE_NAMES = {
    2: {0: "Z/2", 1: "(Z/2)^2", 2: "Z/4", 3: "D4", 6: "Z/4×Z/2"},
    3: {0: "Z/3", 1: "(Z/3)^2", 2: "Z/9", 4: "H_27", 5: "M_27", 6: "Z/9×Z/3"},
}


@pytest.mark.parametrize("p", [2, 3, 5])
def test_omega_catalog_is_exact(p):
    for i in omega_indices(p):
        w = omega_catalog(i, p)
        assert w.is_exact(), i
        assert w.modulus == p
        assert w.middle.order == p * w.base.order


@pytest.mark.parametrize("p", [2, 3])
def test_omega_middle_groups(p):
    for i, name in MIDDLE_NAMES[p].items():
        assert classify_middle(omega_catalog(i, p).middle) == name


@pytest.mark.parametrize("i, p", [(3, 3), (4, 2), (5, 2), (7, 3)])
def test_omega_catalog_rejects_undefined_index(i, p):
    with pytest.raises(PreconditionError):
        omega_catalog(i, p)


@pytest.mark.parametrize("spec, name", [
    ("quaternion:8", "Q8"),
    ("dihedral:8", "D4"),
    ("heisenberg:3", "H_27"),
    ("modular:3", "M_27"),
    ("cyclic:1", "1"),
    ("elementary:2:3", "(Z/2)^3"),
])
def test_classify_middle(spec, name):
    assert classify_middle(make_group(spec)) == name


def test_from_cocycle_and_back():
    g = make_group("cyclic:3")
    psi = h1(g, 3)[1]
    w = from_cocycle(bockstein(psi))
    assert w.is_exact()
    assert classify_middle(w.middle) == "Z/9"
    assert h2(g, 3).same_class(to_cocycle(w), bockstein(psi))
    split = from_cocycle(Cochain2.zero(g, 3))
    assert classify_middle(split.middle) == "(Z/3)^2"


def test_from_cocycle_rejects_non_cocycle():
    g = make_group("cyclic:4")
    values = np.zeros((4, 4), dtype=np.int64)
    values[1, 1] = 1
    with pytest.raises(PreconditionError):
        from_cocycle(Cochain2(g, 2, values))


@pytest.mark.parametrize("p", [3, 5])
def test_baer_sum_of_heisenberg_and_abelian_is_modular(p):
    total = baer_sum(omega_catalog(4, p), omega_catalog(6, p))
    assert total.is_exact()
    assert classify_middle(total.middle) == f"M_{p ** 3}"
    assert are_equivalent(total, omega_catalog(5, p)) is not None


@pytest.mark.parametrize("p", [2, 3])
def test_baer_sum_adds_classes(p):
    left, right = omega_catalog(1, p), omega_catalog(2, p)
    assert are_equivalent(baer_sum(left, right), right) is not None
    h = h2(right.base, p)
    for a in omega_indices(p):
        for b in omega_indices(p):
            wa, wb = omega_catalog(a, p), omega_catalog(b, p)
            if wa.base is not wb.base or wa.base.order == 1:
                continue
            ha = h2(wa.base, p)
            total = ha.coordinates(to_cocycle(baer_sum(wa, wb)))
            expected = tuple((x + y) % f for x, y, f in zip(
                ha.coordinates(to_cocycle(wa)), ha.coordinates(to_cocycle(wb)), ha.invariant_factors))
            assert total == expected, (a, b)
    if p == 2:
        doubled = baer_sum(right, right)
        assert are_equivalent(doubled, left) is not None
        assert h.is_zero_class(to_cocycle(doubled))


def test_baer_sum_rejects_mismatched_extensions():
    with pytest.raises(PreconditionError):
        baer_sum(omega_catalog(2, 2), omega_catalog(2, 3))
    with pytest.raises(PreconditionError):
        baer_sum(omega_catalog(2, 3), omega_catalog(6, 3))


def test_non_equivalent_extensions():
    assert are_equivalent(omega_catalog(4, 3), omega_catalog(5, 3)) is None
    assert ExtensionClass(omega_catalog(6, 3)) != ExtensionClass(omega_catalog(4, 3))
    assert ExtensionClass(omega_catalog(5, 3)) == ExtensionClass(
        baer_sum(omega_catalog(4, 3), omega_catalog(6, 3)))


def test_inflate_ext_matches_cocycle_inflation():
    w = omega_catalog(2, 3)
    g = make_group("direct:cyclic:3,cyclic:3")
    epi = projection(g, 1)
    pulled = inflate_ext(w, epi)
    assert pulled.is_exact() and pulled.base is g
    h = h2(g, 3)
    assert h.same_class(to_cocycle(pulled), inflate(to_cocycle(w), epi))
    assert not h.is_zero_class(to_cocycle(pulled))


def test_direct_product_ext_matches_inflation():
    w = omega_catalog(2, 3)
    dp = direct_product_ext(w, make_group("cyclic:3"))
    assert dp.is_exact()
    inflated = inflate_ext(w, projection(dp.base, 1))
    assert are_equivalent(dp, inflated) is not None


def test_twist_requires_isomorphism():
    w = omega_catalog(2, 3)
    zero = GroupHom(w.base, w.base, np.zeros(3, dtype=np.int64))
    with pytest.raises(PreconditionError):
        twist(w, zero)
    theta = is_isomorphic(w.base, w.base)
    assert twist(w, theta).is_exact()


def test_exactness_problems_are_reported():
    p = 3
    w = omega_catalog(1, p)
    broken = CentralExtension(p, w.middle, w.inject,
                              GroupHom(w.middle, w.base, np.zeros(p * p, dtype=np.int64)))
    assert not broken.is_exact()
    with pytest.raises(PreconditionError):
        broken.check_exact()
    with pytest.raises(PreconditionError):
        to_cocycle(broken)


def test_extension_to_dict():
    data = omega_catalog(5, 3).to_dict()
    assert data["base_spec"] == "elementary:3:2"
    assert data["modulus"] == 3
    assert len(data["middle_table_digest"]) == 64
    assert len(data["project"]) == 27


@pytest.mark.parametrize("p, cases", [
    (2, {"a", "b", "c", "e", "bockstein"}),
    (3, {"a", "b", "d", "f", "dependent", "independent", "bockstein"}),
])
def test_extension_table_matches_omega_catalog(p, cases):
    rows = extension_table(p)
    assert {r.case for r in rows} == cases
    assert all(r.equivalent for r in rows)
