import numpy as np
import pytest

from descent3.catalog import catalog_specs
from descent3.errors import ConfigError, GroupSpecError, OrderCapError, PreconditionError
from descent3.groups import (
    Subgroup,
    abelian_invariants,
    all_subgroups,
    center,
    closure,
    commutator_subgroup,
    hom_from_images,
    homs,
    is_isomorphic,
    make_group,
    normal_subgroups,
    parse_group_spec,
    power_subgroup,
    quotient,
)


@pytest.mark.parametrize("spec", catalog_specs(2, 32) + catalog_specs(3, 81))
def test_catalog_groups_have_declared_order(spec):
    g = make_group(spec)
    assert g.order == parse_group_spec(spec).order()
    assert np.array_equal(g.table[0], np.arange(g.order))
    assert closure(g, g.generators).order == g.order


def test_make_group_caches_on_canonical_spec():
    assert make_group("direct: cyclic:4 , cyclic:2") is make_group("direct:cyclic:4,cyclic:2")
    assert parse_group_spec("direct: cyclic:4 , cyclic:2").canonical() == "direct:cyclic:4,cyclic:2"


@pytest.mark.parametrize("spec", [
    "",
    "cyclic",
    "cyclic:0",
    "cyclic:-3",
    "cyclic:3,",
    "elementary:4:2",
    "dihedral:7",
    "quaternion:16",
    "semidirect:9,3,2",
    "torus:3",
])
def test_bad_specs_raise(spec):
    with pytest.raises(GroupSpecError):
        make_group(spec)


def test_order_cap_argument_and_environment(monkeypatch):
    with pytest.raises(OrderCapError):
        make_group("cyclic:100", cap=50)
    monkeypatch.setenv("DESCENT3_ORDER_CAP", "10")
    with pytest.raises(OrderCapError):
        make_group("cyclic:16")
    monkeypatch.setenv("DESCENT3_ORDER_CAP", "abc")
    with pytest.raises(ConfigError):
        make_group("cyclic:2")


@pytest.mark.parametrize("spec, order", [
    ("quaternion:8", 2),
    ("dihedral:8", 2),
    ("heisenberg:3", 3),
    ("modular:3", 3),
    ("direct:cyclic:4,cyclic:2", 8),
])
def test_center_order(spec, order):
    assert center(make_group(spec)).order == order


@pytest.mark.parametrize("spec", ["dihedral:8", "quaternion:8", "heisenberg:3"])
def test_commutator_subgroup_is_center_for_extraspecial(spec):
    g = make_group(spec)
    assert commutator_subgroup(Subgroup.whole(g), g).members == center(g).members


def test_power_subgroup():
    g = make_group("cyclic:9")
    assert power_subgroup(Subgroup.whole(g), 3).members == (0, 3, 6)


@pytest.mark.parametrize("spec, normal, total", [
    ("dihedral:8", 6, 10),
    ("quaternion:8", 6, 6),
    ("elementary:2:2", 5, 5),
    ("cyclic:8", 4, 4),
])
def test_subgroup_counts(spec, normal, total):
    g = make_group(spec)
    assert len(normal_subgroups(g)) == normal
    assert len(all_subgroups(g)) == total
    assert all(n.is_normal() for n in normal_subgroups(g))


def test_quotient_and_invariants():
    g = make_group("dihedral:8")
    qg, proj = quotient(g, center(g))
    assert abelian_invariants(qg) == (2, 2)
    assert proj.is_homomorphism() and proj.is_surjective()
    assert proj.kernel().members == center(g).members
    assert abelian_invariants(make_group("direct:cyclic:9,cyclic:3")) == (3, 9)
    assert abelian_invariants(make_group("cyclic:1")) == ()


def test_quotient_by_non_normal_subgroup_raises():
    g = make_group("dihedral:8")
    # ⟨s⟩
    with pytest.raises(PreconditionError):
        quotient(g, closure(g, [4]))
    with pytest.raises(PreconditionError):
        abelian_invariants(g)


@pytest.mark.parametrize("src, dst, count, epis", [
    ("cyclic:4", "cyclic:2", 2, 1),
    ("elementary:2:2", "cyclic:2", 4, 3),
    ("quaternion:8", "cyclic:2", 4, 3),
    ("cyclic:3", "cyclic:2", 1, 0),
])
def test_hom_enumeration(src, dst, count, epis):
    g, h = make_group(src), make_group(dst)
    found = homs(g, h)
    assert len(found) == count
    assert all(f.is_homomorphism() for f in found)
    assert len(homs(g, h, epi_only=True)) == epis


def test_hom_from_images():
    f = hom_from_images(make_group("cyclic:4"), make_group("cyclic:2"), [1])
    assert f.images.tolist() == [0, 1, 0, 1]
    with pytest.raises(PreconditionError):
        hom_from_images(make_group("cyclic:3"), make_group("cyclic:2"), [1])
    with pytest.raises(PreconditionError):
        hom_from_images(make_group("cyclic:3"), make_group("cyclic:3"), [1, 1])


def test_isomorphism_testing():
    iso = is_isomorphic(make_group("dihedral:8"), make_group("semidirect:4,2,3"))
    assert iso is not None and iso.is_bijective() and iso.is_homomorphism()
    assert iso.inverse().compose(iso).images.tolist() == list(range(8))
    assert is_isomorphic(make_group("modular:3"), make_group("semidirect:9,3,4")) is not None
    assert is_isomorphic(make_group("dihedral:8"), make_group("quaternion:8")) is None
    assert is_isomorphic(make_group("modular:3"), make_group("heisenberg:3")) is None
    assert is_isomorphic(make_group("cyclic:4"), make_group("cyclic:8")) is None


@pytest.mark.parametrize("spec, exponent", [
    ("quaternion:8", 4),
    ("heisenberg:3", 3),
    ("modular:3", 9),
    ("dihedral:16", 8),
])
def test_exponent(spec, exponent):
    assert make_group(spec).exponent == exponent
