import random

import pytest
from helpers import random_word, solver_mismatches

from autostack import automata as fa
from autostack import oracles as orc
from autostack import zoo
from autostack.automata import Fsa
from autostack.constructions.gog import (GraphOfGroupsSpec, GogModel, compile_gog_graph, gog_compose,
                                         gog_normal_forms)
from autostack.errors import SpecInvariantViolation, UnknownVertex
from autostack.stacking import AutostackableStructure, RespectingStructure, StateTable, cross_check
from autostack.verify import run_all
from autostack.words import Alphabet, word


@pytest.fixture(scope="module")
def lam1():
    spec = zoo.free_product_zz()
    return spec, GogModel(spec)


def test_lambda1_path_functions(lam1):
    spec, m = lam1
    assert spec.pt("u", "v") == ("f",)
    assert spec.pt("u", "u") == ()
    assert m.infl(word("x y")) == word("x f y")
    assert m.defl(word("x f y")) == word("x y")
    assert m.epair((), "x") == 0
    assert m.epair(("x",), "y") == "f"
    assert m.suf("v", word("x y y")) == word("y y")
    assert m.trim(word("x f")) == ("x",)
    assert m.edgeonly(word("x f y f^-1 x")) == word("f f^-1")
    with pytest.raises(UnknownVertex):
        spec.pt("u", "w")


def test_deflation_inverts_inflation(lam1):
    _, m = lam1
    rng = random.Random(3)
    for _ in range(200):
        w = random_word(rng, m.alphabet.letters, 10)
        assert m.defl(m.infl(w)) == w


def test_free_product_normal_forms_and_solver():
    s = gog_compose(zoo.free_product_zz())
    tilde, nf = gog_normal_forms(zoo.free_product_zz())
    assert fa.equivalent(nf, s.nf)
    base_nf = zoo.free_structure(["x"]).nf.over(s.alphabet.letters)
    assert fa.equivalent(fa.intersection(s.nf, base_nf), base_nf)  # the k = 0 stratum
    o = orc.free_oracle(["x", "y"], s.alphabet)
    rng = random.Random(4)
    assert not solver_mismatches(s, o, [random_word(rng, s.alphabet.letters, 20) for _ in range(300)])
    assert run_all(s, o, 4, 6).ok


def _trivial_structure():
    A = Alphabet([])
    return AutostackableStructure(A, Fsa.epsilon(()), StateTable({}), 1, name="trivial")


def test_hnn_of_the_trivial_group_is_z():
    triv = RespectingStructure(_trivial_structure(), [])
    spec = GraphOfGroupsSpec(["v"], "v", [("e", "v", "v", False)], _trivial_structure(),
                             {"e": triv, "e^-1": triv}, {"e": {}, "e^-1": {}})
    s = gog_compose(spec)
    assert s.alphabet.letters == ("e", "e^-1")
    assert fa.equivalent(s.nf, zoo.free_structure(["e"]).nf)
    assert s.normal_form(word("e e e^-1")) == ("e",)


def test_klein_hnn_relator():
    s = zoo.get("klein_hnn").structure
    assert s.is_trivial(word("e a e^-1 a"))
    assert not s.is_trivial(word("e a e^-1 a^-1"))
    assert run_all(s, zoo.get("klein_hnn").oracle, 4, 6).ok


def test_trefoil_relator_and_bound():
    s = gog_compose(zoo.torus_knot_spec(2, 3))
    assert s.normal_form(word("x x y^-1 y^-1 y^-1")) == ()
    assert s.is_trivial(word("x x X^-1"))
    assert not s.is_trivial(word("x y"))
    assert s.bound == 2 + max(c.bound for c in s.gog_model.structures.values())


def test_compiled_graph_matches_direct_evaluation():
    s = gog_compose(zoo.free_product_zz(), compile_graph=True)
    assert s.graph_phi is not None
    assert cross_check(s, 4).ok
    g = compile_gog_graph(gog_compose(zoo.free_product_zz()))
    assert g.accepts(fa.pad([("x",), ("y",), ("y",)]))


def test_spec_validation():
    x = zoo.free_structure(["x"], "Zx")
    y = zoo.free_structure(["y"], "Zy")
    rx, ry = RespectingStructure(x, []), RespectingStructure(y, [])
    with pytest.raises(UnknownVertex):
        GraphOfGroupsSpec(["u", "v"], "w", [("f", "u", "v", True)], x, {"f": ry, "f^-1": rx}, {})
    with pytest.raises(SpecInvariantViolation):
        GraphOfGroupsSpec(["u", "v"], "u", [("f", "u", "v", False)], x, {"f": ry, "f^-1": rx}, {})
    with pytest.raises(SpecInvariantViolation):
        GraphOfGroupsSpec(["u", "v"], "u", [("f", "u", "v", True)], x, {"f": ry}, {})
    with pytest.raises(SpecInvariantViolation):
        GraphOfGroupsSpec(["u"], "u", [], x, {}, {})


def test_edge_maps_must_be_mutually_inverse():
    xs = zoo.z_mod_structure(2, "x", "X")
    ys = zoo.z_mod_structure(3, "y", "Y")
    hats = {"f": {"Y": ("X",)}, "f^-1": {"X": ("Y^-1",)}}
    spec = GraphOfGroupsSpec(["u", "v"], "u", [("f", "u", "v", True)], xs.base,
                             {"f": ys, "f^-1": xs}, hats)
    with pytest.raises(SpecInvariantViolation):
        gog_compose(spec)


def test_letters_shared_between_vertices_rejected():
    x = zoo.free_structure(["x"])
    rx = RespectingStructure(x, [])
    spec = GraphOfGroupsSpec(["u", "v"], "u", [("f", "u", "v", True)], x, {"f": rx, "f^-1": rx}, {})
    with pytest.raises(SpecInvariantViolation):
        gog_compose(spec)
