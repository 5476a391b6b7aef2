"""JSON files for structures and for the composition specs the CLI builds.

Structure files hold the alphabet, the normal-form acceptor, the bound and
the stacking map.  State tables and rewriting systems are self-contained;
composed stacking maps cannot be stored as data, so their files carry a
``rebuild`` entry (a zoo name or the spec they were built from) and are
rebuilt on load.

Spec files have a ``type`` of ``rws``, ``gog``, ``extension``, ``findex``
or ``coset`` and refer to component structures either as ``"zoo:NAME"``,
as a path relative to the spec file, or inline.
"""

from __future__ import annotations

import json
import os
from typing import Any

from .automata import Fsa
from .constructions.coset import CosetAutomaticData, coset_compose
from .constructions.extension import ConjugationCocycleRewriter, ExtensionSpec, extension_compose
from .constructions.finite_index import finite_index_compose
from .constructions.gog import GraphOfGroupsSpec, gog_compose
from .constructions.rewriting import RewritingSystem, from_rewriting_system
from .errors import AutostackError
from .stacking import AutostackableStructure, RespectingStructure, RewritingDerived, StateTable
from .words import Alphabet, word


class SchemaError(AutostackError, ValueError):
    """A JSON document does not follow the expected layout."""


def _word(x) -> tuple:
    if isinstance(x, str):
        return word(x)
    if isinstance(x, list):
        return tuple(x)
    raise SchemaError(f"expected a word, got {x!r}")


def _need(data: dict, key: str, where: str):
    try:
        return data[key]
    except (KeyError, TypeError):
        raise SchemaError(f"{where}: missing field {key!r}") from None


def read_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from None


def write_json(data: Any, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=1, ensure_ascii=False)
        fh.write("\n")


# -- structures ----------------------------------------------------------------------

def structure_to_json(s) -> dict:
    data = s.to_json()
    rebuild = getattr(s, "provenance", None) or getattr(_base(s), "provenance", None)
    if rebuild is not None:
        data["rebuild"] = rebuild
    elif data["stacking"]["kind"] == "composed":
        raise SchemaError("a composed structure can only be saved together with its provenance")
    return data


def _base(s):
    return s.base if isinstance(s, RespectingStructure) else s


def structure_from_json(data: dict, base_dir: str = "."):
    if "rebuild" in data:
        rebuild = data["rebuild"]
        if "zoo" in rebuild:
            return load_structure("zoo:" + rebuild["zoo"])
        if "spec" in rebuild:
            return build_from_spec(rebuild["spec"], rebuild.get("base_dir", base_dir))
        raise SchemaError("unknown rebuild entry")
    alphabet = Alphabet.from_json(_need(data, "alphabet", "structure"))
    nf = Fsa.from_json(_need(data, "nf", "structure"))
    st = _need(data, "stacking", "structure")
    kind = st.get("kind")
    if kind == "state_table":
        stacking = StateTable({(q, a): _word(w) for q, a, w in st["table"]})
    elif kind == "rewriting":
        stacking = RewritingDerived(alphabet, [(_word(l), _word(r)) for l, r in st["rules"]])
    else:
        raise SchemaError(f"stacking kind {kind!r} cannot be loaded without a rebuild entry")
    graph = Fsa.from_json(data["graph_phi"]) if "graph_phi" in data else None
    s = AutostackableStructure(alphabet, nf, stacking, _need(data, "bound", "structure"), graph,
                               data.get("name", ""))
    if "subgroup" in data:
        return RespectingStructure(s, data["subgroup"])
    return s


def load_structure(ref, base_dir: str = "."):
    """``"zoo:NAME"``, a path to a structure or spec file, or an inline JSON object."""
    if isinstance(ref, dict):
        if "type" in ref:
            return build_from_spec(ref, base_dir)
        return structure_from_json(ref, base_dir)
    if not isinstance(ref, str):
        raise SchemaError(f"bad structure reference {ref!r}")
    if ref.startswith("zoo:"):
        from . import zoo
        name = ref[4:]
        try:
            bundle = zoo.get(name)
        except KeyError as exc:
            raise SchemaError(str(exc.args[0])) from None
        s = bundle.structure
        s.provenance = {"zoo": name}
        return s
    path = ref if os.path.isabs(ref) else os.path.join(base_dir, ref)
    data = read_json(path)
    here = os.path.dirname(os.path.abspath(path))
    if isinstance(data, dict) and "type" in data:
        return build_from_spec(data, here)
    return structure_from_json(data, here)


def save_structure(s, path: str) -> None:
    write_json(structure_to_json(s), path)


def _respecting(entry, base_dir, where):
    """``{"structure": ref, "subgroup": [letters]}`` or a bare ref of a respecting structure."""
    if isinstance(entry, dict) and "structure" in entry:
        s = load_structure(entry["structure"], base_dir)
        if "subgroup" in entry:
            return RespectingStructure(_base(s), entry["subgroup"])
        if isinstance(s, RespectingStructure):
            return s
        raise SchemaError(f"{where}: give the subgroup letters")
    s = load_structure(entry, base_dir)
    if not isinstance(s, RespectingStructure):
        raise SchemaError(f"{where}: a respecting structure is required")
    return s


def _alphabet(x):
    return Alphabet.from_json(x)


# -- specs ---------------------------------------------------------------------------

def build_from_spec(spec: dict, base_dir: str = "."):
    """Run the combinator named by ``spec["type"]``; the result records the spec for reloading."""
    kind = _need(spec, "type", "spec")
    builders = {"rws": _build_rws, "gog": _build_gog, "extension": _build_extension,
                "findex": _build_findex, "coset": _build_coset}
    if kind not in builders:
        raise SchemaError(f"unknown spec type {kind!r}")
    s = builders[kind](spec, base_dir)
    s.provenance = {"spec": spec, "base_dir": os.path.abspath(base_dir)}
    return s


def _build_rws(spec, base_dir):
    A = _alphabet(_need(spec, "alphabet", "rws"))
    rules = [(_word(l), _word(r)) for l, r in _need(spec, "rules", "rws")]
    return from_rewriting_system(RewritingSystem(A, rules),
                                 spec.get("check_confluence", True), spec.get("name", ""))


def _build_gog(spec, base_dir):
    edges = []
    for e in _need(spec, "edges", "gog"):
        edges.append(tuple(e))
    base = load_structure(_need(spec, "base", "gog"), base_dir)
    structures = {e: _respecting(v, base_dir, f"edge {e}")
                  for e, v in _need(spec, "edge_structures", "gog").items()}
    hats = {e: {b: _word(w) for b, w in m.items()} for e, m in spec.get("hats", {}).items()}
    translations = {k: {x: _word(w) for x, w in m.items()}
                    for k, m in spec.get("translations", {}).items()}
    g = GraphOfGroupsSpec(_need(spec, "vertices", "gog"), _need(spec, "basepoint", "gog"), edges,
                          _base(base), structures, hats, translations, spec.get("name", ""))
    return gog_compose(g, compile_graph=spec.get("compile_graph", False))


def _build_extension(spec, base_dir):
    k = load_structure(_need(spec, "kernel", "extension"), base_dir)
    q = _respecting(_need(spec, "quotient", "extension"), base_dir, "quotient")
    lifts = dict(_need(spec, "lifts", "extension"))
    conj = {lc: {x: _word(w) for x, w in m.items()}
            for lc, m in _need(spec, "conjugation", "extension").items()}
    cocycles = {(c, _word(u)): _word(kappa) for c, u, kappa in spec.get("cocycles", [])}
    rewriter = ConjugationCocycleRewriter(_base(k), q, lifts, conj, cocycles)
    return extension_compose(ExtensionSpec(_base(k), q, lifts, rewriter, spec.get("bound"),
                                           spec.get("name", "")))


def _build_findex(spec, base_dir):
    h = load_structure(_need(spec, "subgroup", "findex"), base_dir)
    A = _alphabet(spec["alphabet"]) if "alphabet" in spec else None
    T = [_word(t) for t in _need(spec, "transversal", "findex")]
    action = {}
    for i, a, hw, j in _need(spec, "coset_action", "findex"):
        action[(int(i), a)] = (_word(hw), int(j))
    return finite_index_compose(_base(h), T, action, A, name=spec.get("name", ""))


OUTSIDE = ("outside",)


def coset_data_to_json(data: CosetAutomaticData) -> dict:
    """Tabulate the ball arithmetic of ``data`` (ball ids, right multiplication by C)."""
    keys = list(data.ball)
    ids = {k: i for i, k in enumerate(keys)}
    mult = []
    for k in keys:
        for c in data.g_alphabet:
            r = data.multiply(k, c)
            mult.append([ids[k], c, ids.get(r)])
    return {
        "g_alphabet": data.g_alphabet.to_json(),
        "transversal": data.transversal.to_json(),
        "fellow_constant": data.fellow_constant,
        "elements": [[ids[k], list(data.ball[k])] for k in keys],
        "identity": ids[data.identity],
        "multiply": mult,
        "subgroup_words": [[ids[k], list(w)] for k, w in data.subgroup_words.items() if k in ids],
        "letter_keys": {b: ids[k] for b, k in data.letter_keys.items()
                        if k in ids and b not in data.g_alphabet},
        "name": data.name,
    }


def coset_data_from_json(d: dict) -> CosetAutomaticData:
    C = _alphabet(_need(d, "g_alphabet", "coset data"))
    ball = {int(i): _word(w) for i, w in _need(d, "elements", "coset data")}
    table = {}
    for i, c, j in _need(d, "multiply", "coset data"):
        table[(int(i), c)] = OUTSIDE if j is None else int(j)

    def multiply(k, c):
        if k == OUTSIDE:
            return OUTSIDE
        return table.get((k, c), OUTSIDE)

    return CosetAutomaticData(
        C, Fsa.from_json(_need(d, "transversal", "coset data")), int(_need(d, "fellow_constant", "coset data")),
        ball, int(_need(d, "identity", "coset data")), multiply,
        {int(i): _word(w) for i, w in d.get("subgroup_words", [])},
        {b: int(i) for b, i in d.get("letter_keys", {}).items()}, d.get("name", ""))


def _build_coset(spec, base_dir):
    h = load_structure(_need(spec, "subgroup", "coset"), base_dir)
    data_ref = _need(spec, "data", "coset")
    if isinstance(data_ref, str):
        path = data_ref if os.path.isabs(data_ref) else os.path.join(base_dir, data_ref)
        data_ref = read_json(path)
    data = coset_data_from_json(data_ref)
    return coset_compose(_base(h), data, spec.get("mu"), spec.get("name", ""))
