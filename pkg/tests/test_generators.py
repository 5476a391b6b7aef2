import random

import pytest
from helpers import random_word, solver_mismatches

from autostack import automata as fa
from autostack import oracles as orc
from autostack import zoo
from autostack.constructions.generators import extend_generators, split_respecting
from autostack.errors import BadRepresentative, FactorizationMismatch
from autostack.stacking import RespectingStructure
from autostack.verify import check_respecting, run_all
from autostack.words import word


def test_extend_z_by_a_square():
    z = zoo.free_structure(["a"])
    s = extend_generators(z, [("X", word("a a"))])
    assert s.alphabet.letters[-2:] == ("X", "X^-1")
    for y in z.enumerate_normal_forms(3):
        assert s.phi(y, "X") == word("a a")
        assert s.phi(y, "X^-1") == word("a^-1 a^-1")
        assert s.phi(y, "a") == z.phi(y, "a")
    assert fa.equivalent(s.nf, z.nf.over(s.alphabet.letters))
    A = s.alphabet
    o = orc.vector_oracle(A, {"a": (1,), "a^-1": (-1,), "X": (2,), "X^-1": (-2,)})
    assert run_all(s, o, 4, 6).ok
    rng = random.Random(1)
    assert not solver_mismatches(s, o, [random_word(rng, A.letters, 12) for _ in range(100)])


def test_identity_and_bad_representatives_rejected():
    z = zoo.free_structure(["a"])
    with pytest.raises(BadRepresentative):
        extend_generators(z, [("E", ())])
    with pytest.raises(BadRepresentative):
        extend_generators(z, [("X", word("a a^-1"))])
    with pytest.raises(BadRepresentative):
        extend_generators(z, [("a", ("a",))])


def test_extending_by_a_subgroup_letter_keeps_subgroup_closure():
    r = zoo.z_mod_structure(2)
    s = extend_generators(r, [("Y", word("X X"))])
    assert isinstance(s, RespectingStructure)
    assert "Y" in s.subgroup_alphabet and "Y^-1" in s.subgroup_alphabet
    A = s.alphabet
    o = orc.vector_oracle(A, {"a": (1,), "a^-1": (-1,), "X": (2,), "X^-1": (-2,), "Y": (4,), "Y^-1": (-4,)})
    assert check_respecting(s, o, lambda k: k[0] % 2 == 0, 4).passed


def test_split_examples():
    r = zoo.z_mod_structure(2)
    nf_h, nf_tr = split_respecting(r)
    assert set(fa.enumerate_upto(nf_tr, 3)) == {(), ("a",)}
    whole = RespectingStructure(zoo.free_structure(["a"]), ["a", "a^-1"])
    nf_h, nf_tr = split_respecting(whole)
    assert fa.equivalent(nf_h, whole.nf) and set(fa.enumerate_upto(nf_tr, 4)) == {()}
    trivial = RespectingStructure(zoo.free_structure(["a"]), [])
    nf_h, nf_tr = split_respecting(trivial)
    assert set(fa.enumerate_upto(nf_h, 4)) == {()} and fa.equivalent(nf_tr, trivial.nf)


def test_factorisation_mismatch_detected():
    f2 = zoo.free_structure(["a", "b"])
    # ⟨a⟩-words followed by anything: the suffix "b a" puts a subgroup letter after a
    # transversal letter, which is fine, but declaring a wrong Nf_H must be caught
    wrong_h = fa.Fsa.finite(f2.alphabet.letters, [()])
    with pytest.raises(FactorizationMismatch):
        RespectingStructure(f2, ["a", "a^-1"], nf_h=wrong_h)
