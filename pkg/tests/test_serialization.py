import json
import random

import pytest
from helpers import random_word

from autostack import automata as fa
from autostack import oracles as orc
from autostack import zoo
from autostack.serialization import (SchemaError, build_from_spec, coset_data_to_json, load_structure,
                                     read_json, save_structure, structure_from_json, structure_to_json,
                                     write_json)
from autostack.stacking import RespectingStructure


def _same_solver(s, t, oracle, n=200, seed=0):
    rng = random.Random(seed)
    assert fa.equivalent(s.nf, t.nf)
    assert s.bound == t.bound
    for _ in range(n):
        w = random_word(rng, s.alphabet.letters, 12)
        assert s.normal_form(w) == t.normal_form(w)
        assert oracle.equal(w, t.normal_form(w))


@pytest.mark.parametrize("name", ["Z2", "F2", "Z_resp_2Z", "klein_rws", "Z2*Z3"])
def test_plain_structures_round_trip(name, tmp_path):
    b = zoo.get(name)
    s = b.structure
    data = structure_to_json(s)
    if "rebuild" in data:
        del data["rebuild"]
    t = structure_from_json(json.loads(json.dumps(data)))
    assert type(t) is type(s)
    if isinstance(s, RespectingStructure):
        assert t.subgroup_alphabet.letters == s.subgroup_alphabet.letters
    _same_solver(s, t, b.oracle)
    path = str(tmp_path / "s.json")
    write_json(data, path)
    _same_solver(s, load_structure(path), b.oracle, 20)


def test_composed_structures_save_their_provenance(tmp_path):
    s = load_structure("zoo:heisenberg")
    path = str(tmp_path / "h.json")
    save_structure(s, path)
    assert read_json(path)["rebuild"] == {"zoo": "heisenberg"}
    _same_solver(s, load_structure(path), orc.heisenberg_oracle(), 50)


def test_composed_structure_without_provenance_is_refused():
    s = zoo.dihedral_structure()
    with pytest.raises(SchemaError):
        structure_to_json(s)


@pytest.fixture()
def files(tmp_path):
    for name, s in {"Zx": zoo.free_structure(["x"]), "Zy": zoo.free_structure(["y"]),
                    "Za": zoo.free_structure(["a"]), "Zc": zoo.free_structure(["c"]),
                    "Z2q": zoo.zn_structure(2, ["A", "B"]), "ZH": zoo.free_structure(["H.a"])}.items():
        save_structure(s, str(tmp_path / f"{name}.json"))
    return tmp_path


def _write(path, spec):
    write_json(spec, str(path))
    return str(path)


def test_rws_spec(files):
    spec = {"type": "rws", "name": "Z2Z3",
            "alphabet": ["a", "a^-1", "b", "b^-1"],
            "rules": [[["a^-1"], ["a"]], [["a", "a"], []], [["b", "b"], ["b^-1"]], [["b^-1", "b^-1"], ["b"]],
                      [["b", "b^-1"], []], [["b^-1", "b"], []]]}
    s = load_structure(_write(files / "rws.json", spec))
    o = zoo.z2z3_oracle()
    _same_solver(s, zoo.z2z3_structure(), o, 100)
    assert s.provenance["spec"]["name"] == "Z2Z3"


def test_gog_spec(files):
    spec = {"type": "gog", "name": "ZZ", "vertices": ["u", "v"], "basepoint": "u",
            "edges": [["f", "u", "v", True]], "base": "Zx.json",
            "edge_structures": {"f": {"structure": "Zy.json", "subgroup": []},
                                "f^-1": {"structure": "Zx.json", "subgroup": []}},
            "hats": {"f": {}, "f^-1": {}}}
    s = load_structure(_write(files / "gog.json", spec))
    _same_solver(s, zoo.get("ZZ").structure, orc.free_oracle(["x", "y"], s.alphabet))


def test_extension_spec(files):
    base = zoo.heisenberg_spec()
    rw = base.k_rewriter
    spec = {"type": "extension", "name": "heis", "kernel": "Zc.json",
            "quotient": {"structure": "Z2q.json", "subgroup": ["A", "A^-1", "B", "B^-1"]},
            "lifts": base.lifts,
            "conjugation": {c: {x: list(w) for x, w in m.items()} for c, m in rw.conjugation.items()},
            "cocycles": [[c, list(u), list(k)] for (c, u), k in rw.cocycles.items()]}
    s = load_structure(_write(files / "ext.json", spec))
    assert isinstance(s, RespectingStructure)
    _same_solver(s, zoo.get("heisenberg").structure, orc.heisenberg_oracle())


def test_findex_spec(files):
    action = [[i, a, list(h), j] for (i, a), (h, j) in zoo.DIHEDRAL_ACTION.items()]
    spec = {"type": "findex", "subgroup": "Za.json", "alphabet": ["a", "a^-1", "b", "b^-1"],
            "transversal": [[], ["b"]], "coset_action": action}
    s = load_structure(_write(files / "fi.json", spec))
    _same_solver(s, zoo.dihedral_structure(), orc.dihedral_oracle())


def test_coset_spec_with_tabulated_data(files):
    data = coset_data_to_json(zoo.f2_coset_data())
    write_json(data, str(files / "data.json"))
    spec = {"type": "coset", "subgroup": "ZH.json", "data": "data.json", "mu": 2}
    s = load_structure(_write(files / "coset.json", spec))
    _same_solver(s, zoo.f2_coset_structure(2), zoo.f2_coset_oracle())
    # the saved structure rebuilds from its spec
    save_structure(s, str(files / "built.json"))
    again = load_structure(str(files / "built.json"))
    _same_solver(s, again, zoo.f2_coset_oracle(), 30)


def test_schema_errors(files, tmp_path):
    with pytest.raises(SchemaError):
        build_from_spec({"type": "nonsense"})
    with pytest.raises(SchemaError):
        build_from_spec({"type": "rws", "alphabet": ["a", "a^-1"]})
    with pytest.raises(SchemaError):
        load_structure("zoo:no_such_group")
    with pytest.raises(SchemaError):
        load_structure(42)
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(SchemaError):
        read_json(str(bad))
    with pytest.raises(SchemaError):
        structure_from_json({"rebuild": {"other": 1}})
    with pytest.raises(SchemaError):
        structure_from_json({"alphabet": ["a", "a^-1"], "nf": zoo.free_structure(["a"]).nf.to_json(),
                             "stacking": {"kind": "composed"}, "bound": 1})
    spec = {"type": "gog", "vertices": ["u", "v"], "basepoint": "u", "edges": [["f", "u", "v", True]],
            "base": "Zx.json", "edge_structures": {"f": "Zy.json", "f^-1": "Zx.json"}}
    with pytest.raises(SchemaError):
        build_from_spec(spec, str(files))
