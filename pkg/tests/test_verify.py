import json

from autostack import automata as fa
from autostack import oracles as orc
from autostack import zoo
from autostack.stacking import AutostackableStructure, RespectingStructure, StateTable
from autostack.verify import (check_f1, check_f3_acyclic, check_prefix_closed, check_respecting, check_uniqueness,
                              run_all)


def _z2():
    return zoo.zn_structure(2), orc.zn_oracle(2)


def test_report_text_and_json():
    s, o = _z2()
    report = run_all(s, o, 3, 4, name="Z2")
    assert report.ok
    names = [c.name for c in report.checks]
    assert len(names) == 5 and names[0] == "normal forms prefix-closed"
    text = report.to_text()
    assert text.splitlines()[0] == "verification of Z2: PASS"
    assert "[PASS] F1 bounded paths with correct endpoints (radius=3, edges=100)" in text
    data = json.loads(json.dumps(report.to_json()))
    assert data["ok"] and data["structure"] == "Z2"


def test_coverage_note():
    s, o = _z2()
    u = check_uniqueness(s, o, 3, 4)
    assert u.passed and not u.notes["coverage_condition_met"]
    assert u.notes["ball_elements_beyond_length"] == 0
    full = check_uniqueness(s, o, 2, 2 * s.bound)
    assert full.notes["coverage_condition_met"]


def test_wrong_oracle_fails_with_counterexamples():
    s = zoo.zn_structure(2)
    o = orc.free_oracle(["a", "b"])
    report = run_all(s, o, 2, 3)
    assert not report.ok
    f1 = report.checks[1]
    assert not f1.passed and f1.counterexamples[0]["reason"] == "wrong endpoint"
    assert "FAIL" in report.to_text() and "counterexample" in report.to_text()


def test_prefix_closure_failure():
    s, _ = _z2()
    nf = fa.Fsa.finite(s.alphabet.letters, [(), ("a", "b")])
    bad = AutostackableStructure(s.alphabet, nf, StateTable({}), 3, check=False)
    res = check_prefix_closed(bad)
    assert not res.passed
    assert res.counterexamples[0]["reason"] == "a live state is not accepting"


def test_identity_stacking_map_has_flow_loops():
    s, o = _z2()
    # an empty table fixes every edge, so each non-tree edge flows to itself
    empty = AutostackableStructure(s.alphabet, s.nf, StateTable({}), s.bound)
    assert check_f1(empty, o, 2).passed
    res = check_f3_acyclic(empty, o, 2)
    assert not res.passed and len(res.counterexamples[0]["cycle"]) == 1


def test_respecting_failure():
    s, o = _z2()
    ok = check_respecting(RespectingStructure(s, ["a", "a^-1"]), o, lambda k: k[1] == 0, 3)
    assert ok.passed
    b = zoo.get("Z_resp_2Z")
    # a membership test for the wrong subgroup: 3Z has elements outside the X-words
    res = check_respecting(b.structure, b.oracle, lambda k: k[0] % 3 == 0, 4)
    assert not res.passed
    assert res.counterexamples[0]["reason"] == "subgroup element normal form leaves B*"


def test_zoo_bundle_with_subgroup_check():
    b = zoo.get("Z_resp_2Z")
    report = run_all(b.structure, b.oracle, 4, 6, b.subgroup_member)
    assert report.ok and report.checks[-1].name == "respecting subgroup"
