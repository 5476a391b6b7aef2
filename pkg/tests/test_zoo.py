import pytest

from autostack import zoo
from autostack.stacking import RespectingStructure
from autostack.verify import run_all
from autostack.words import word

NAMES = list(zoo.zoo())


@pytest.mark.parametrize("name", NAMES)
def test_bundle_verifies_at_its_radii(name):
    b = zoo.get(name)
    s, o = b.structure, b.oracle
    assert set(o.alphabet.letters) == set(s.alphabet.letters)
    if b.subgroup_member is not None:
        assert isinstance(s, RespectingStructure)
    report = run_all(s, o, b.radius, b.nf_length, b.subgroup_member, name=name)
    assert report.ok, report.to_text()


def test_catalog_contents():
    expected = {"Z2", "Z3", "F2", "Z_resp_2Z", "klein_rws", "klein_hnn", "Z2*Z3", "ZZ", "trefoil",
                "heisenberg", "sol", "dihedral", "F2_resp_a", "composite"}
    assert expected <= set(NAMES)
    for b in zoo.zoo().values():
        assert b.description


def test_unknown_name():
    with pytest.raises(KeyError):
        zoo.get("no_such_group")


def test_bundles_are_cached():
    b = zoo.get("Z2")
    assert b.structure is b.structure
    assert b.oracle is b.oracle


def test_z_mod_structure_convention():
    s = zoo.z_mod_structure(3)
    assert s.normal_form(word("a a a a")) == word("X a")
    assert s.normal_form(word("a^-1")) == word("X^-1 a a")
    assert s.enumerate_normal_forms(1) == [(), ("a",), ("X",), ("X^-1",)]


def test_composite_contains_both_factors():
    s = zoo.get("composite").structure
    assert s.is_trivial(word("x x y^-1 y^-1 y^-1"))
    assert s.is_trivial(word("e a e^-1 a"))
    assert not s.is_trivial(word("x e x^-1 e^-1"))
