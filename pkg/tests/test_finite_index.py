import random

import pytest
from helpers import random_word, solver_mismatches

from autostack import automata as fa
from autostack import oracles as orc
from autostack import zoo
from autostack.constructions.finite_index import finite_index_compose
from autostack.errors import InconsistentCosetTable, NonPrefixClosedTransversal
from autostack.stacking import RespectingStructure
from autostack.verify import run_all
from autostack.words import Alphabet, word

A = Alphabet(["a", "a^-1", "X", "X^-1"])
ORACLE = orc.vector_oracle(A, {"a": (1,), "a^-1": (-1,), "X": (2,), "X^-1": (-2,)})
# Z = <a> with H = <X>, X = a², transversal {ε, a}
ACTION = {
    (0, "a"): ((), 1), (0, "a^-1"): (("X^-1",), 1),
    (0, "X"): (("X",), 0), (0, "X^-1"): (("X^-1",), 0),
    (1, "a"): (("X",), 0), (1, "a^-1"): ((), 0),
    (1, "X"): (("X",), 1), (1, "X^-1"): (("X^-1",), 1),
}


@pytest.fixture(scope="module")
def index_two():
    return finite_index_compose(zoo.free_structure(["X"]), [(), ("a",)], ACTION, A, oracle=ORACLE)


def test_index_two_flow_values(index_two):
    s = index_two
    assert isinstance(s, RespectingStructure)
    assert s.subgroup_alphabet.letters == ("X", "X^-1")
    assert s.phi(word("X a"), "a") == word("a^-1 X")
    assert s.phi(word("X"), "a") == ("a",)
    assert s.phi(word("X"), "X") == ("X",)
    assert s.phi(word("a"), "a^-1") == ("a^-1",)


def test_index_two_normal_forms(index_two):
    s = index_two
    expected = fa.concat(zoo.free_structure(["X"]).nf.over(A.letters), fa.Fsa.finite(A.letters, [(), ("a",)]))
    assert fa.equivalent(s.nf, expected)
    rng = random.Random(1)
    assert not solver_mismatches(s, ORACLE, [random_word(rng, A.letters, 15) for _ in range(300)])
    assert s.normal_form(word("a a a")) == word("X a")
    assert run_all(s, ORACLE, 4, 6, lambda v: v[0] % 2 == 0).ok


def test_index_one_is_the_subgroup():
    h = zoo.zn_structure(2, ["x", "y"])
    action = {(0, a): ((a,), 0) for a in h.alphabet}
    s = finite_index_compose(h, [()], action)
    assert fa.equivalent(s.nf, h.nf)
    for y in s.enumerate_normal_forms(3):
        for a in h.alphabet:
            assert s.phi(y, a) == h.phi(y, a)


def test_dihedral():
    b = zoo.get("dihedral")
    s, o = b.structure, b.oracle
    assert s.phi((), "b") == ("b",)
    assert s.phi(("b",), "a") == word("b^-1 a^-1 b")
    assert s.is_trivial(word("b a b a"))
    assert s.is_trivial(word("b b"))
    rng = random.Random(2)
    assert not solver_mismatches(s, o, [random_word(rng, s.alphabet.letters, 15) for _ in range(300)])


def test_transversal_validation():
    h = zoo.free_structure(["X"])
    with pytest.raises(NonPrefixClosedTransversal):
        finite_index_compose(h, [("a",), ()], ACTION, A)
    with pytest.raises(NonPrefixClosedTransversal):
        finite_index_compose(h, [(), ("a",), ("a",)], ACTION, A)
    with pytest.raises(NonPrefixClosedTransversal):
        finite_index_compose(h, [(), ("a", "a")], ACTION, A)
    with pytest.raises(NonPrefixClosedTransversal):
        finite_index_compose(h, [(), ("X",)], ACTION, A)


def test_coset_table_validation():
    h = zoo.free_structure(["X"])
    missing = {k: v for k, v in ACTION.items() if k != (1, "X^-1")}
    with pytest.raises(InconsistentCosetTable):
        finite_index_compose(h, [(), ("a",)], missing, A)
    with pytest.raises(InconsistentCosetTable):
        finite_index_compose(h, [(), ("a",)], {**ACTION, (0, "a"): ((), 0)}, A)
    with pytest.raises(InconsistentCosetTable):
        finite_index_compose(h, [(), ("a",)], {**ACTION, (1, "a"): (("X",), 5)}, A)
    with pytest.raises(InconsistentCosetTable):
        finite_index_compose(h, [(), ("a",)], {**ACTION, (1, "a"): (("X", "X"), 0)}, A, oracle=ORACLE)
    with pytest.raises(InconsistentCosetTable):
        finite_index_compose(h, [(), ("a",)], ACTION, Alphabet(["a", "a^-1"]))
