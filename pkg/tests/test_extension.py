import random

import pytest
from helpers import random_word, solver_mismatches

from autostack import automata as fa
from autostack import zoo
from autostack.constructions.extension import ExtensionSpec, extension_compose
from autostack.errors import KRewriterFailure, SpecInvariantViolation
from autostack.verify import run_all
from autostack.words import word


@pytest.fixture(scope="module")
def heis():
    return zoo.get("heisenberg")


def test_heisenberg_flow_values(heis):
    s, o = heis.structure, heis.oracle
    assert s.phi(word("a"), "b") == ("b",)
    u = s.phi(word("b"), "a")
    # b·a = c^e·a·b with the sign e read from the oracle
    assert o.eval(word("b") + u) == o.eval(word("b a"))
    assert u[1:] == word("b^-1 a b") and u[0] in ("c", "c^-1")


def test_heisenberg_commutator_is_central(heis):
    s, o = heis.structure, heis.oracle
    nf = s.normal_form(word("a b a^-1 b^-1"))
    assert set(nf) <= {"c", "c^-1"} and len(nf) == 1
    assert o.eval(nf) == o.eval(word("a b a^-1 b^-1"))


def test_normal_forms_are_kernel_then_lifted_quotient(heis):
    s = heis.structure
    k_nf = zoo.free_structure(["c"]).nf.over(s.alphabet.letters)
    q_nf = fa.hom_image(zoo.zn_structure(2, ["A", "B"]).nf,
                        {"A": ("a",), "A^-1": ("a^-1",), "B": ("b",), "B^-1": ("b^-1",)}, s.alphabet.letters)
    assert fa.equivalent(s.nf, fa.concat(k_nf, q_nf))
    assert fa.is_prefix_closed(s.nf)


def test_heisenberg_and_sol_solver_against_oracle():
    rng = random.Random(7)
    for name in ("heisenberg", "sol"):
        b = zoo.get(name)
        words = [random_word(rng, b.structure.alphabet.letters, 12) for _ in range(150)]
        assert not solver_mismatches(b.structure, b.oracle, words), name
        assert run_all(b.structure, b.oracle, 3, 5, b.subgroup_member).ok, name


def test_broken_rewriter_is_reported(heis):
    base = zoo.heisenberg_spec()
    spec = ExtensionSpec(base.k_structure, base.q_structure, base.lifts, lambda w: ("c", "c^-1"))
    with pytest.raises(KRewriterFailure):
        extension_compose(spec)
    spec = ExtensionSpec(base.k_structure, base.q_structure, base.lifts, lambda w: ("c", "c^-1"), bound=8)
    s = extension_compose(spec)
    with pytest.raises(KRewriterFailure):
        s.normal_form(word("b a"))


def test_rewriter_rejects_non_kernel_words():
    base = zoo.heisenberg_spec()
    with pytest.raises(KRewriterFailure):
        base.k_rewriter(word("a"))
    with pytest.raises(KRewriterFailure):
        base.k_rewriter(word("z"))


def test_lift_validation():
    base = zoo.heisenberg_spec()
    missing = {k: v for k, v in base.lifts.items() if k != "B^-1"}
    with pytest.raises(SpecInvariantViolation):
        extension_compose(ExtensionSpec(base.k_structure, base.q_structure, missing, base.k_rewriter))
    clash = dict(base.lifts, A="c", **{"A^-1": "c^-1"})
    with pytest.raises(SpecInvariantViolation):
        extension_compose(ExtensionSpec(base.k_structure, base.q_structure, clash, base.k_rewriter))
    dup = dict(base.lifts, B="a")
    with pytest.raises(SpecInvariantViolation):
        extension_compose(ExtensionSpec(base.k_structure, base.q_structure, dup, base.k_rewriter))
    with pytest.raises(SpecInvariantViolation):
        extension_compose(ExtensionSpec(base.k_structure, base.q_structure.base, base.lifts, base.k_rewriter))


def test_subgroup_is_preimage_of_respected_subgroup():
    s = zoo.get("sol").structure
    # Q = Z respects the trivial subgroup, so the respected subgroup of G is K
    assert set(s.subgroup_alphabet.letters) == {"x", "x^-1", "y", "y^-1"}
    h = zoo.get("heisenberg").structure
    assert set(h.subgroup_alphabet.letters) == set(h.alphabet.letters)
