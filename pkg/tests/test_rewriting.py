import pytest

from autostack import zoo
from autostack.constructions.rewriting import (RewritingSystem, check_local_confluence, critical_pairs,
                                               from_rewriting_system, irreducible_acceptor)
from autostack.errors import NoApplicableRule, NotLocallyConfluent
from autostack.verify import run_all
from autostack.words import Alphabet, word
from autostack import oracles as orc


def test_free_rank_one():
    A = Alphabet.from_generators(["a"])
    s = from_rewriting_system(RewritingSystem(A, [(word("a a^-1"), ()), (word("a^-1 a"), ())]))
    assert s.nf.accepts(word("a a a")) and s.nf.accepts(word("a^-1 a^-1"))
    assert not s.nf.accepts(word("a a^-1"))
    for y in s.enumerate_normal_forms(4):
        for a in A:
            if not (y and y[-1] == A.inverse(a)):
                assert s.phi(y, a) == (a,)


def test_z2z3_example():
    s = zoo.z2z3_structure()
    assert s.phi(("b",), "b") == word("b^-1 b^-1")
    assert s.normal_form(word("b b b")) == ()
    assert s.normal_form(word("a a^-1 a")) == ("a",)
    assert s.normal_form(word("a^-1")) == ("a",)


def test_klein_example():
    s = zoo.klein_rws_structure()
    assert s.phi(("b",), "a") == word("b^-1 a^-1 b")
    assert s.normal_form(word("b a b^-1 a")) == ()


def test_shortest_rule_wins_when_several_left_sides_end_at_the_letter():
    A = Alphabet.from_generators(["a", "b", "c"])
    rs = RewritingSystem(A, [(word("c b a"), ("a",)), (word("b a"), word("a b"))]).with_inverse_rules()
    s = from_rewriting_system(rs, check_confluence=False)
    # both "c b a" and "b a" end at the new letter; the shorter one is used
    assert s.phi(word("c b"), "a") == word("b^-1 a b")


def test_rewrite_engine_and_irreducibles():
    rs = zoo.z2z3_rws()
    assert rs.reduce(word("b b a a b")) == ()
    assert rs.reduce(word("b b b")) == ()
    m = irreducible_acceptor(rs)
    assert m.accepts(word("a b a b^-1")) and not m.accepts(word("a a"))


def test_critical_pairs_and_confluence():
    rs = zoo.z2z3_rws().with_inverse_rules()
    assert list(critical_pairs(rs))
    check_local_confluence(rs)
    A = Alphabet.from_generators(["a", "b"])
    bad = RewritingSystem(A, [(word("a b"), word("b")), (word("b a"), word("a"))]).with_inverse_rules()
    with pytest.raises(NotLocallyConfluent):
        check_local_confluence(bad)
    with pytest.raises(NotLocallyConfluent):
        from_rewriting_system(bad)


def test_malformed_systems():
    A = Alphabet.from_generators(["a"])
    with pytest.raises(NoApplicableRule):
        RewritingSystem(A, [((), ("a",))])


def test_json_round_trip():
    rs = zoo.z2z3_rws()
    assert RewritingSystem.from_json(rs.to_json()).rules == rs.rules


def test_verifier_passes_on_rewriting_structures():
    for s, o in [(zoo.z2z3_structure(), zoo.z2z3_oracle()),
                 (zoo.klein_rws_structure(), orc.klein_oracle())]:
        report = run_all(s, o, 4, 6)
        assert report.ok, report.to_text()
