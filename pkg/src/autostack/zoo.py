"""Built-in example groups: structures, composition specs and matching oracles.

Each catalog entry is a :class:`Bundle` whose structure and oracle are built
on first use and cached.  Builders for the basic families (shortlex Zⁿ,
reduced words in free groups, Z respecting mZ) are public so other
constructions can reuse them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

from . import oracles as orc
from .automata import Fsa
from .constructions.coset import CosetAutomaticData, coset_compose
from .constructions.extension import ConjugationCocycleRewriter, ExtensionSpec, extension_compose
from .constructions.finite_index import finite_index_compose
from .constructions.gog import GraphOfGroupsSpec, gog_compose
from .constructions.rewriting import RewritingSystem, from_rewriting_system
from .stacking import AutostackableStructure, RespectingStructure, StateTable
from .words import Alphabet, Word


# -- basic families -----------------------------------------------------------------

def zn_structure(n: int, gens: Sequence[str] | None = None, name: str | None = None):
    """Zⁿ with shortlex normal forms g₁^k₁ ⋯ gₙ^kₙ and φ moving a letter left past one block."""
    gens = list(gens) if gens else [chr(ord("a") + i) for i in range(n)]
    A = Alphabet.from_generators(gens)
    signed = [(i, s) for i in range(n) for s in (0, 1)]
    state = {gs: k + 1 for k, gs in enumerate(signed)}
    letter = {(i, s): A.letters[2 * i + s] for i, s in signed}
    transitions = []
    for src in [None] + signed:
        for (j, t) in signed:
            if src is None or j > src[0] or (j, t) == src:
                transitions.append((0 if src is None else state[src], letter[(j, t)], state[(j, t)]))
    nf = Fsa.from_transitions(A.letters, 2 * n + 1, 0, range(2 * n + 1), transitions)
    table = {}
    for (i, s) in signed:
        last = letter[(i, s)]
        for (j, t) in signed:
            if j < i:
                q = nf.run((last,))
                table[(q, letter[(j, t)])] = (A.inverse(last), letter[(j, t)], last)
    return AutostackableStructure(A, nf, StateTable(table), 3 if n > 1 else 1,
                                  name=name or f"Z{n}")


def free_structure(gens: Sequence[str], name: str | None = None):
    """Free group on ``gens`` with freely reduced normal forms; every edge is a tree edge."""
    A = Alphabet.from_generators(gens)
    state = {a: k + 1 for k, a in enumerate(A.letters)}
    transitions = [(0, a, state[a]) for a in A]
    for b in A:
        transitions += [(state[b], a, state[a]) for a in A if a != A.inverse(b)]
    nf = Fsa.from_transitions(A.letters, len(A) + 1, 0, range(len(A) + 1), transitions)
    return AutostackableStructure(A, nf, StateTable({}), 1, name=name or f"F{len(gens)}")


def z_mod_structure(m: int, gen: str = "a", big: str = "X", name: str | None = None):
    """Z = ⟨a⟩ respecting mZ = ⟨X⟩ with X = aᵐ over {a±, X±}.

    Normal forms are X^k·a^i with 0 ≤ i < m.  φ sends a⁻¹ after X^k to
    X⁻¹·a^(m-1), the m-th a to (a⁻¹)^(m-1)·X, and commutes X± leftwards
    past a trailing a-block.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    A = Alphabet.from_generators([gen, big])
    a, ai, X, Xi = gen, A.inverse(gen), big, A.inverse(big)
    P, N = 1, 2
    T = {i: 2 + i for i in range(1, m)}
    transitions = [(0, X, P), (0, Xi, N), (P, X, P), (N, Xi, N)]
    for q in (0, P, N):
        transitions.append((q, a, T[1]))
    for i in range(1, m - 1):
        transitions.append((T[i], a, T[i + 1]))
    nf = Fsa.from_transitions(A.letters, m + 2, 0, range(m + 2), transitions)
    table = {}
    for w in [(), (X,), (Xi,)]:
        table[(nf.run(w), ai)] = (Xi,) + (a,) * (m - 1)
    for i in range(1, m):
        q = nf.run((a,) * i)
        table[(q, X)] = (ai,) * i + (X,) + (a,) * i
        table[(q, Xi)] = (ai,) * i + (Xi,) + (a,) * i
    table[(nf.run((a,) * (m - 1)), a)] = (ai,) * (m - 1) + (X,)
    s = AutostackableStructure(A, nf, StateTable(table), 2 * m - 1, name=name or f"Z_resp_{m}Z")
    return RespectingStructure(s, [X, Xi])


def z_mod_oracle(m: int, gen: str = "a", big: str = "X"):
    A = Alphabet.from_generators([gen, big])
    return orc.vector_oracle(A, {gen: (1,), A.inverse(gen): (-1,), big: (m,), A.inverse(big): (-m,)},
                             f"Z_resp_{m}Z")


# -- rewriting systems ----------------------------------------------------------------

def klein_rws_structure():
    A = Alphabet.from_generators(["a", "b"])
    a, A_, b, B = A.letters
    rules = [((b, a), (A_, b)), ((b, A_), (a, b)), ((B, a), (A_, B)), ((B, A_), (a, B))]
    return from_rewriting_system(RewritingSystem(A, rules), name="klein_rws")


def z2z3_rws():
    A = Alphabet.from_generators(["a", "b"])
    a, ai, b, bi = A.letters
    rules = [((ai,), (a,)), ((a, a), ()), ((b, b), (bi,)), ((bi, bi), (b,)),
             ((b, bi), ()), ((bi, b), ())]
    return RewritingSystem(A, rules)


def z2z3_structure():
    return from_rewriting_system(z2z3_rws(), name="Z2*Z3")


def z2z3_oracle():
    A = Alphabet.from_generators(["a", "b"])
    images = {"a": ("a", 1), "a^-1": ("a", -1), "b": ("b", 1), "b^-1": ("b", -1)}
    return orc.cyclic_product_oracle(A, images, {"a": 2, "b": 3}, "Z2*Z3")


# -- graphs of groups ----------------------------------------------------------------

def free_product_zz():
    x, y = free_structure(["x"], "Zx"), free_structure(["y"], "Zy")
    spec = GraphOfGroupsSpec(["u", "v"], "u", [("f", "u", "v", True)], x,
                             {"f": RespectingStructure(y, []), "f^-1": RespectingStructure(x, [])},
                             {"f": {}, "f^-1": {}}, name="ZZ")
    return spec


def klein_hnn_spec():
    za = free_structure(["a"], "Za")
    whole = RespectingStructure(za, list(za.alphabet.letters))
    flip = {"a": ("a^-1",), "a^-1": ("a",)}
    return GraphOfGroupsSpec(["v"], "v", [("e", "v", "v", False)], za,
                             {"e": whole, "e^-1": whole}, {"e": flip, "e^-1": flip},
                             name="klein_hnn")


def torus_knot_spec(p: int, q: int):
    """⟨x, y | x^p = y^q⟩ as the amalgam of ⟨x⟩ and ⟨y⟩ over X = x^p ↔ Y = y^q."""
    xs = z_mod_structure(p, "x", "X", f"Z_resp_{p}Z")
    ys = z_mod_structure(q, "y", "Y", f"Z_resp_{q}Z")
    hats = {"f": {"Y": ("X",), "Y^-1": ("X^-1",)}, "f^-1": {"X": ("Y",), "X^-1": ("Y^-1",)}}
    return GraphOfGroupsSpec(["u", "v"], "u", [("f", "u", "v", True)], xs.base,
                             {"f": ys, "f^-1": xs}, hats, name=f"torus({p},{q})")


def torus_oracle(p: int, q: int, alphabet: Alphabet):
    powers = {"X": ("x", p), "Y": ("y", q)}
    if (p, q) == (2, 3):
        return orc.trefoil_matrix_oracle(alphabet, powers)
    return orc.torus_knot_oracle(p, q, alphabet, powers)


def composite_spec(trefoil, klein):
    """Free product of the trefoil group and the Klein-bottle HNN group, each itself composed."""
    tr = RespectingStructure(trefoil, [])
    kl = RespectingStructure(klein, [])
    return GraphOfGroupsSpec(["p", "q"], "p", [("g", "p", "q", True)], trefoil,
                             {"g": kl, "g^-1": tr}, {"g": {}, "g^-1": {}}, name="composite")


# -- extensions ------------------------------------------------------------------------

def _extension_data(oracle, k_structure, q_structure, lifts, k_word):
    """Conjugation and cocycle data read off an oracle.

    ``k_word(key)`` turns a kernel element key into a word over the kernel
    letters (``None`` if the key is not in the kernel).
    """
    A = k_structure.alphabet
    conj = {}
    for c, lc in lifts.items():
        inv = q_structure.alphabet.inverse(c)
        conj[lc] = {x: k_word(oracle.eval((lifts[inv], x, lc))) for x in A}
    cocycles = {}
    stacking = q_structure.stacking
    table = stacking.table if isinstance(stacking, StateTable) else {}
    for (_, c), u in table.items():
        hu = tuple(lifts[x] for x in u)
        lift_inv = {lifts[x]: lifts[q_structure.alphabet.inverse(x)] for x in lifts}
        w = tuple(lift_inv[x] for x in reversed(hu)) + (lifts[c],)
        cocycles[(c, u)] = k_word(oracle.eval(w))
    return conj, cocycles


def _power_word(letter: str, inverse: str, k: int) -> Word:
    return (letter,) * k if k >= 0 else (inverse,) * (-k)


def heisenberg_spec():
    K = free_structure(["c"], "Zc")
    Q = zn_structure(2, ["A", "B"], "Z2q")
    Qr = RespectingStructure(Q, list(Q.alphabet.letters))
    lifts = {"A": "a", "A^-1": "a^-1", "B": "b", "B^-1": "b^-1"}
    oracle = orc.heisenberg_oracle()

    def k_word(m):
        if m[0][1] or m[1][2]:
            raise ValueError("not a central element")
        return _power_word("c", "c^-1", m[0][2])

    conj, cocycles = _extension_data(oracle, K, Qr, lifts, k_word)
    rewriter = ConjugationCocycleRewriter(K, Qr, lifts, conj, cocycles)
    return ExtensionSpec(K, Qr, lifts, rewriter, name="heisenberg")


def sol_spec():
    K = zn_structure(2, ["x", "y"], "Z2")
    Q = free_structure(["T"], "ZT")
    Qr = RespectingStructure(Q, [])
    lifts = {"T": "t", "T^-1": "t^-1"}
    oracle = orc.sol_oracle()

    def k_word(m):
        if m[0][:2] != (1, 0) or m[1][:2] != (0, 1):
            raise ValueError("not a translation")
        return _power_word("x", "x^-1", m[0][2]) + _power_word("y", "y^-1", m[1][2])

    conj, cocycles = _extension_data(oracle, K, Qr, lifts, k_word)
    rewriter = ConjugationCocycleRewriter(K, Qr, lifts, conj, cocycles)
    return ExtensionSpec(K, Qr, lifts, rewriter, name="sol")


# -- finite index and coset data ----------------------------------------------------------

DIHEDRAL_TRANSVERSAL = [(), ("b",)]
DIHEDRAL_ACTION = {
    (0, "a"): (("a",), 0), (0, "a^-1"): (("a^-1",), 0),
    (0, "b"): ((), 1), (0, "b^-1"): ((), 1),
    (1, "a"): (("a^-1",), 1), (1, "a^-1"): (("a",), 1),
    (1, "b"): ((), 0), (1, "b^-1"): ((), 0),
}


def dihedral_structure():
    H = free_structure(["a"], "Za")
    A = Alphabet(["a", "a^-1", "b", "b^-1"])
    return finite_index_compose(H, DIHEDRAL_TRANSVERSAL, DIHEDRAL_ACTION, A,
                                oracle=orc.dihedral_oracle(A), name="dihedral")


def f2_transversal(C: Alphabet) -> Fsa:
    """Freely reduced words over ⟨a, b⟩ not starting with a±."""
    state = {x: k + 1 for k, x in enumerate(C.letters)}
    transitions = [(0, x, state[x]) for x in ("b", "b^-1")]
    for y in C:
        transitions += [(state[y], x, state[x]) for x in C if x != C.inverse(y)]
    return Fsa.from_transitions(C.letters, len(C) + 1, 0, range(len(C) + 1), transitions)


def f2_coset_oracle():
    C = Alphabet.from_generators(["a", "b"])
    H = Alphabet.from_generators(["H.a"])
    A = H.union(C)
    return orc.free_oracle(["a", "b"]).relabel({"H.a": "a", "H.a^-1": "a^-1"}, A, "F2")


def f2_subgroup_word(key):
    """``H.a``-word for keys of powers of a (free-oracle syllable tuples), else ``None``."""
    if key == ():
        return ()
    if len(key) == 1 and key[0][0] == "a":
        return _power_word("H.a", "H.a^-1", key[0][1])
    return None


def f2_coset_data(fellow_constant: int = 2):
    C = Alphabet.from_generators(["a", "b"])
    return CosetAutomaticData.from_oracle(f2_coset_oracle(), C, f2_transversal(C), fellow_constant,
                                          f2_subgroup_word, name="F2_mod_a")


def f2_coset_structure(mu: int | None = None):
    H = free_structure(["H.a"], "Z_H")
    return coset_compose(H, f2_coset_data(), mu=mu, name="F2_resp_a")


# -- subgroup membership tests for respecting checks -----------------------------------------

def _h_membership_heisenberg(key):
    return True


def _h_membership_sol(m):
    return m[0][:2] == (1, 0) and m[1][:2] == (0, 1)


def _h_membership_dihedral(m):
    return m[0][0] == 1


def _h_membership_f2(key):
    return f2_subgroup_word(key) is not None


# -- the catalog --------------------------------------------------------------------------

@dataclass
class Bundle:
    """A named example: structure builder, oracle builder and recommended radii."""

    name: str
    description: str
    build: Callable[[], object]
    make_oracle: Callable[[object], object]
    radius: int = 4
    nf_length: int = 6
    subgroup_member: Callable[[object], bool] | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def structure(self):
        if "structure" not in self._cache:
            self._cache["structure"] = self.build()
        return self._cache["structure"]

    @property
    def oracle(self):
        if "oracle" not in self._cache:
            self._cache["oracle"] = self.make_oracle(self.structure)
        return self._cache["oracle"]


def _gog(spec_builder):
    return lambda: gog_compose(spec_builder())


@lru_cache(maxsize=None)
def zoo() -> dict[str, Bundle]:
    """Catalog of named example bundles (built lazily, cached)."""
    entries = [
        Bundle("Z2", "Z² with shortlex normal forms", lambda: zn_structure(2),
               lambda s: orc.zn_oracle(2), radius=6, nf_length=8),
        Bundle("Z3", "Z³ with shortlex normal forms", lambda: zn_structure(3),
               lambda s: orc.zn_oracle(3), radius=4, nf_length=6),
        Bundle("F2", "free group of rank 2, reduced words", lambda: free_structure(["a", "b"]),
               lambda s: orc.free_oracle(["a", "b"]), radius=5, nf_length=5),
        Bundle("Z_resp_2Z", "Z respecting 2Z over {a, X = a²}", lambda: z_mod_structure(2),
               lambda s: z_mod_oracle(2), radius=5, nf_length=8,
               subgroup_member=lambda k: k[0] % 2 == 0),
        Bundle("Z_resp_3Z", "Z respecting 3Z over {a, X = a³}", lambda: z_mod_structure(3),
               lambda s: z_mod_oracle(3), radius=5, nf_length=8,
               subgroup_member=lambda k: k[0] % 3 == 0),
        Bundle("klein_rws", "Klein bottle group from a convergent rewriting system",
               klein_rws_structure, lambda s: orc.klein_oracle(s.alphabet), radius=5, nf_length=6),
        Bundle("klein_hnn", "Klein bottle group as an HNN extension of Z",
               _gog(klein_hnn_spec), lambda s: orc.klein_oracle(s.alphabet, "a", "e"),
               radius=4, nf_length=6),
        Bundle("Z2*Z3", "Z/2 * Z/3 from a convergent rewriting system", z2z3_structure,
               lambda s: z2z3_oracle(), radius=5, nf_length=6),
        Bundle("ZZ", "free product Z * Z as a graph of groups", _gog(free_product_zz),
               lambda s: orc.free_oracle(["x", "y"], s.alphabet), radius=5, nf_length=6),
        Bundle("trefoil", "trefoil group ⟨x, y | x² = y³⟩ as an amalgam",
               _gog(lambda: torus_knot_spec(2, 3)), lambda s: torus_oracle(2, 3, s.alphabet),
               radius=4, nf_length=6),
        Bundle("torus(2,5)", "torus knot group ⟨x, y | x² = y⁵⟩ as an amalgam",
               _gog(lambda: torus_knot_spec(2, 5)), lambda s: torus_oracle(2, 5, s.alphabet),
               radius=4, nf_length=6),
        Bundle("heisenberg", "Heisenberg group as a central extension of Z² by Z",
               lambda: extension_compose(heisenberg_spec()), lambda s: orc.heisenberg_oracle(),
               radius=4, nf_length=6, subgroup_member=_h_membership_heisenberg),
        Bundle("sol", "Sol lattice Z² ⋊ Z with M = [[2, 1], [1, 1]]",
               lambda: extension_compose(sol_spec()), lambda s: orc.sol_oracle(),
               radius=4, nf_length=6, subgroup_member=_h_membership_sol),
        Bundle("dihedral", "infinite dihedral group over its index-2 subgroup ⟨a⟩",
               dihedral_structure, lambda s: orc.dihedral_oracle(s.alphabet), radius=5,
               nf_length=6, subgroup_member=_h_membership_dihedral),
        Bundle("F2_resp_a", "F₂ respecting ⟨a⟩ from coset automatic data",
               f2_coset_structure, lambda s: f2_coset_oracle(), radius=5, nf_length=6,
               subgroup_member=_h_membership_f2),
        Bundle("composite", "trefoil group free product Klein bottle HNN group",
               lambda: gog_compose(composite_spec(zoo()["trefoil"].structure,
                                                  zoo()["klein_hnn"].structure)),
               lambda s: orc.free_product_oracle([zoo()["trefoil"].oracle, zoo()["klein_hnn"].oracle]),
               radius=3, nf_length=5),
    ]
    return {b.name: b for b in entries}


def get(name: str) -> Bundle:
    catalog = zoo()
    if name not in catalog:
        raise KeyError(f"unknown zoo entry {name!r}; known: {', '.join(catalog)}")
    return catalog[name]
