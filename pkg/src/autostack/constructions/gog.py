"""Fundamental groups of graphs of groups.

Normal forms follow Higgins: a base-vertex normal form followed by
alternating edges and transversal normal forms, with tree edges then
deleted ("deflation").  The stacking map has three cases: non-tree edge
letters are fixed, a subgroup letter sitting right after an edge is pushed
across that edge, and everything else defers to the vertex structure
attached to the last edge crossed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

from .. import automata as fa
from ..automata import Fsa
from ..errors import (ComponentNotPrefixClosed, ConstructionError, DeflationNotInjective,
                      SpecInvariantViolation, UnknownLetter, UnknownVertex)
from ..stacking import (AutostackableStructure, Composed, RespectingStructure, StateTable,
                        compile_state_table_graph, split_languages, with_graph)
from ..words import Alphabet, Word, invert
from .generators import extend_generators

BASE = "base"


@dataclass(frozen=True)
class Edge:
    """A directed edge of Λ; ``inverse`` names the opposite orientation."""

    name: str
    src: str
    dst: str
    inverse: str
    tree: bool


class GraphOfGroupsSpec:
    """Graph Λ with spanning tree, vertex structures and edge-isomorphism data.

    ``edges`` lists each undirected edge once as ``(name, src, dst, in_tree)``
    or ``(name, src, dst, in_tree, inverse_name)``; both orientations become
    directed edges.  ``edge_structures[e]`` is a respecting structure for the
    group at the terminal vertex of ``e`` over the subgroup ``h_e(G_e)``.
    ``hats[e][b]`` is a word over the subgroup letters of ``ē`` equal to the
    image of ``b`` under the edge isomorphism.  ``translations[key][x]``
    expresses a letter ``x`` that structure ``key`` (an edge name or
    ``"base"``) lacks as a word in that structure's own letters; letters of
    equal name at one vertex denote one element.
    """

    def __init__(self, vertices: Sequence[str], basepoint: str, edges: Sequence,
                 base_structure, edge_structures: Mapping[str, RespectingStructure],
                 hats: Mapping[str, Mapping[str, Sequence[str]]],
                 translations: Mapping[str, Mapping[str, Sequence[str]]] | None = None,
                 name: str = ""):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise SpecInvariantViolation("duplicate vertex names")
        if basepoint not in self.vertices:
            raise UnknownVertex(basepoint)
        self.basepoint = basepoint
        self.name = name
        self.edges: dict[str, Edge] = {}
        for entry in edges:
            ename, src, dst, tree = entry[:4]
            inv = entry[4] if len(entry) > 4 else ename + "^-1"
            for v in (src, dst):
                if v not in self.vertices:
                    raise UnknownVertex(v)
            if ename in self.edges or inv in self.edges or ename == inv:
                raise SpecInvariantViolation(f"edge name clash at {ename!r}")
            self.edges[ename] = Edge(ename, src, dst, inv, bool(tree))
            self.edges[inv] = Edge(inv, dst, src, ename, bool(tree))
        if not self.edges:
            raise SpecInvariantViolation("the graph needs at least one edge")
        self._check_tree()
        self.base_structure = base_structure
        self.edge_structures = dict(edge_structures)
        missing = set(self.edges) - set(self.edge_structures)
        if missing:
            raise SpecInvariantViolation(f"no structure for edges {sorted(missing)}")
        extra = set(self.edge_structures) - set(self.edges)
        if extra:
            raise SpecInvariantViolation(f"structures given for unknown edges {sorted(extra)}")
        for e, r in self.edge_structures.items():
            if not isinstance(r, RespectingStructure):
                raise SpecInvariantViolation(f"edge {e!r} needs a respecting structure")
        self.hats = {e: {b: tuple(w) for b, w in m.items()} for e, m in hats.items()}
        self.translations = {k: {x: tuple(w) for x, w in m.items()}
                             for k, m in (translations or {}).items()}
        self._paths = self._tree_paths()

    # -- graph bookkeeping --------------------------------------------------

    def _check_tree(self):
        tree_edges = [e for e in self.edges.values() if e.tree]
        if len(tree_edges) != 2 * (len(self.vertices) - 1):
            raise SpecInvariantViolation("tree edges do not form a spanning tree")
        seen = {self.basepoint}
        todo = [self.basepoint]
        while todo:
            v = todo.pop()
            for e in tree_edges:
                if e.src == v and e.dst not in seen:
                    seen.add(e.dst)
                    todo.append(e.dst)
        if seen != set(self.vertices):
            raise SpecInvariantViolation("tree edges do not span the graph")

    def _tree_paths(self):
        paths = {}
        for u in self.vertices:
            prev = {u: ()}
            todo = deque([u])
            while todo:
                v = todo.popleft()
                for e in self.edges.values():
                    if e.tree and e.src == v and e.dst not in prev:
                        prev[e.dst] = prev[v] + (e.name,)
                        todo.append(e.dst)
            for v, p in prev.items():
                paths[(u, v)] = p
        return paths

    @property
    def non_tree_edges(self) -> tuple[str, ...]:
        return tuple(e for e, d in self.edges.items() if not d.tree)

    @property
    def tree_edge_names(self) -> tuple[str, ...]:
        return tuple(e for e, d in self.edges.items() if d.tree)

    def edges_into(self, v: str) -> list[str]:
        return [e for e, d in self.edges.items() if d.dst == v]

    def pt(self, u: str, v: str) -> Word:
        """Reduced path in the spanning tree from ``u`` to ``v``."""
        for x in (u, v):
            if x not in self.vertices:
                raise UnknownVertex(x)
        return self._paths[(u, v)]


# -- the combinator's internal model ---------------------------------------------

class GogModel:
    """Unified vertex alphabets and the word maps vst, vend, infl, defl, trim, edgeonly."""

    def __init__(self, spec: GraphOfGroupsSpec):
        self.spec = spec
        v0 = spec.basepoint
        owners: dict[str, list] = {v: [] for v in spec.vertices}
        owners[v0].append((BASE, spec.base_structure))
        for e, r in spec.edge_structures.items():
            owners[spec.edges[e].dst].append((e, r))
        # vertex alphabets: union of the structures' letters at each vertex
        self.vertex_of: dict[str, str] = {}
        vertex_alphabets: dict[str, Alphabet] = {}
        for v, items in owners.items():
            merged = None
            for _, s in items:
                merged = s.alphabet if merged is None else merged.union(s.alphabet)
            if merged is None:
                raise SpecInvariantViolation(f"vertex {v!r} carries no structure")
            vertex_alphabets[v] = merged
            for a in merged:
                if a in self.vertex_of:
                    raise SpecInvariantViolation(
                        f"letter {a!r} used at vertices {self.vertex_of[a]!r} and {v!r}")
                if a in spec.edges:
                    raise SpecInvariantViolation(f"letter {a!r} is also an edge name")
                self.vertex_of[a] = v
        self.vertex_alphabets = vertex_alphabets
        # unify every structure over its vertex alphabet
        self.structures: dict[str, RespectingStructure | AutostackableStructure] = {}
        for v, items in owners.items():
            target = vertex_alphabets[v]
            for key, s in items:
                missing = [a for a in target if a not in s.alphabet]
                if missing:
                    s = self._extend(key, s, missing, target)
                self.structures[key] = s
        edge_inverses = {e: d.inverse for e, d in spec.edges.items()}
        vertex_letters = []
        inv: dict[str, str] = {}
        for v in spec.vertices:
            for a in vertex_alphabets[v]:
                vertex_letters.append(a)
                inv[a] = vertex_alphabets[v].inverse(a)
        nontree = [e for e in spec.edges if not spec.edges[e].tree]
        tree = [e for e in spec.edges if spec.edges[e].tree]
        inv.update(edge_inverses)
        self.alphabet = Alphabet(vertex_letters + nontree, {a: inv[a] for a in vertex_letters + nontree})
        self.full_alphabet = Alphabet(vertex_letters + nontree + tree, inv)
        self.nontree = frozenset(nontree)
        self.tree = frozenset(tree)
        self.subgroups = {e: frozenset(r.subgroup_alphabet.letters)
                          for e, r in spec.edge_structures.items()}
        self.hats = self._normalise_hats()

    def _extend(self, key, s, missing, target: Alphabet):
        table = self.spec.translations.get(key, {})
        extra = []
        inverses = {}
        done = set()
        for a in missing:
            if a in done:
                continue
            partner = target.inverse(a)
            if a in table:
                w = table[a]
            elif partner in table:
                w = invert(table[partner], s.alphabet)
            else:
                raise SpecInvariantViolation(
                    f"structure {key!r} needs a translation for letter {a!r}")
            extra.append((a, s.normal_form(w)))
            inverses[a] = partner
            done.update((a, partner))
        return extend_generators(s, extra, inverses)

    def _normalise_hats(self):
        spec = self.spec
        hats: dict[str, dict[str, Word]] = {}
        for e, B in self.subgroups.items():
            ebar = spec.edges[e].inverse
            other = self.structures[ebar]
            B_bar = self.subgroups[ebar]
            given = spec.hats.get(e, {})
            out = {}
            for b in sorted(B, key=self.alphabet.index):
                if b in given:
                    w = given[b]
                elif self.alphabet.inverse(b) in given:
                    w = invert(given[self.alphabet.inverse(b)], other.alphabet)
                else:
                    raise SpecInvariantViolation(f"no edge-map image for {b!r} across {e!r}")
                w = other.normal_form(w)
                if not set(w) <= B_bar:
                    raise SpecInvariantViolation(
                        f"image of {b!r} across {e!r} leaves the subgroup alphabet")
                out[b] = w
            hats[e] = out
        # the two edge maps must be mutually inverse on subgroup elements
        for e, m in hats.items():
            ebar = spec.edges[e].inverse
            back = hats[ebar]
            here = self.structures[e]
            for b, w in m.items():
                round_trip = tuple(x for c in w for x in back[c])
                if here.normal_form(round_trip) != here.normal_form((b,)):
                    raise SpecInvariantViolation(
                        f"edge maps across {e!r} and {ebar!r} are not mutually inverse at {b!r}")
        return hats

    # -- vertex functions ----------------------------------------------------

    def vst(self, w: Sequence[str]) -> str:
        if not w:
            return self.spec.basepoint
        return self._vst_letter(w[0])

    def vend(self, w: Sequence[str]) -> str:
        if not w:
            return self.spec.basepoint
        return self._vend_letter(w[-1])

    def _vst_letter(self, a):
        if a in self.spec.edges:
            return self.spec.edges[a].src
        try:
            return self.vertex_of[a]
        except KeyError:
            raise UnknownLetter(a, "graph of groups") from None

    def _vend_letter(self, a):
        if a in self.spec.edges:
            return self.spec.edges[a].dst
        try:
            return self.vertex_of[a]
        except KeyError:
            raise UnknownLetter(a, "graph of groups") from None

    def infl(self, w: Sequence[str]) -> Word:
        out: list[str] = []
        here = self.spec.basepoint
        for a in w:
            out.extend(self.spec.pt(here, self._vst_letter(a)))
            out.append(a)
            here = self._vend_letter(a)
        return tuple(out)

    def defl(self, w: Sequence[str]) -> Word:
        return tuple(a for a in w if a not in self.tree)

    def trim(self, w: Sequence[str]) -> Word:
        k = len(w)
        while k and w[k - 1] in self.tree:
            k -= 1
        return tuple(w[:k])

    def edgeonly(self, w: Sequence[str]) -> Word:
        return tuple(a for a in w if a in self.spec.edges)

    def epair(self, w: Sequence[str], a: str):
        """Last edge on the Λ-path of ``infl(w·a)``, or ``0`` when that path is empty."""
        path = self.spec.pt(self.vend(w), self._vst_letter(a))
        if path:
            return path[-1]
        for i in range(len(w) - 1, -1, -1):
            c = w[i]
            if c in self.spec.edges:
                return c
            prev = self.vend(w[:i]) if i else self.spec.basepoint
            step = self.spec.pt(prev, self._vst_letter(c))
            if step:
                return step[-1]
        return 0

    def suf(self, u: str, w: Sequence[str]) -> Word:
        k = len(w)
        while k and self.vertex_of.get(w[k - 1]) == u:
            k -= 1
        return tuple(w[k:])

    # -- stacking map ----------------------------------------------------------

    def phi(self, y: Word, a: str) -> Word:
        if a in self.nontree:
            return (a,)
        u = self._vst_letter(a)
        f = self.epair(y, a)
        s = self.suf(u, y)
        if f == 0:
            return self.structures[BASE].phi(s, a)
        if not s and a in self.subgroups[f]:
            fbar = self.spec.edges[f].inverse
            return self.defl((fbar,) + self.hats[f][a] + (f,))
        return self.structures[f].phi(s, a)

    def bound(self) -> int:
        hat_max = max((len(w) for m in self.hats.values() for w in m.values()), default=0)
        comp = max(s.bound for s in self.structures.values())
        return 2 + max(hat_max, comp)

    # -- normal-form languages ---------------------------------------------------

    def transversal(self, e: str) -> Fsa:
        r = self.structures[e]
        _, nf_tr = split_languages(r.nf, r.subgroup_alphabet.letters)
        return nf_tr

    def nf_tilde(self) -> Fsa:
        spec = self.spec
        letters = self.full_alphabet.letters
        sigma = Fsa.universal(letters)
        base = self.structures[BASE]
        for key, s in self.structures.items():
            if not s.nf.is_prefix_closed():
                raise ComponentNotPrefixClosed(f"normal forms of {key!r} are not prefix-closed")
        nf0 = base.nf.over(letters)
        trans = {e: self.transversal(e).over(letters) for e in spec.edges}
        blocks = [fa.concat(Fsa.finite(letters, [(e,)]), trans[e]) for e in spec.edges]
        body = fa.concat(nf0, fa.star(fa.union(*blocks)))
        bad = []
        for e, d in spec.edges.items():
            bad.append(fa.concat_all(sigma, Fsa.finite(letters, [(e, d.inverse)]), sigma))
        for e, d in spec.edges.items():
            for e2, d2 in spec.edges.items():
                if d.dst != d2.src:
                    bad.append(fa.concat_all(sigma, Fsa.finite(letters, [(e,)]), trans[e],
                                             Fsa.finite(letters, [(e2,)]), sigma))
        for e, d in spec.edges.items():
            if d.src != spec.basepoint:
                bad.append(fa.concat_all(nf0, Fsa.finite(letters, [(e,)]), sigma))
        if self.tree:
            bad.append(fa.concat(sigma, Fsa.finite(letters, [(e,) for e in sorted(self.tree)])))
        return fa.difference(body, fa.union(*bad)).minimize()

    def deflate_language(self, m: Fsa) -> Fsa:
        phi = {a: (() if a in self.tree else (a,)) for a in m.alphabet}
        return fa.hom_image(m, phi, self.alphabet.letters)


def gog_normal_forms(spec: GraphOfGroupsSpec, check_length: int = 6,
                     model: GogModel | None = None) -> tuple[Fsa, Fsa]:
    """(Ñ over Ã, Nf = defl(Ñ) over A), with prefix closure and injectivity checked."""
    model = model or GogModel(spec)
    tilde = model.nf_tilde()
    nf = model.deflate_language(tilde)
    if not nf.is_prefix_closed():
        raise ComponentNotPrefixClosed("deflated normal forms are not prefix-closed")
    seen: dict[Word, Word] = {}
    for w in fa.enumerate_upto(tilde, check_length, model.full_alphabet.letters):
        d = model.defl(w)
        if d in seen:
            raise DeflationNotInjective(seen[d], w)
        seen[d] = w
    return tilde, nf


def gog_compose(spec: GraphOfGroupsSpec, compile_graph: bool = False,
                check_length: int = 6) -> AutostackableStructure:
    """Structure for π₁ of the graph of groups over A = (∪ A_v) ∪ E^not."""
    model = GogModel(spec)
    tilde, nf = gog_normal_forms(spec, check_length, model)
    recipe = {"combinator": "gog_compose", "spec": spec.name}

    def rule(y, a, state):
        return model.phi(y, a)

    stacking = Composed(rule, recipe, {"model": model})
    out = AutostackableStructure(model.alphabet, nf, stacking, model.bound(), name=spec.name)
    out.gog_model = model
    out.nf_tilde = tilde
    if compile_graph:
        out = with_graph(out, compile_gog_graph(out))
        out.gog_model = model
        out.nf_tilde = tilde
    return out


# -- Graph(Φ) -------------------------------------------------------------------

def structure_graph(s) -> Fsa:
    """Graph(Φ) of a component structure, when it can be compiled."""
    base = s.base if isinstance(s, RespectingStructure) else s
    if base.graph_phi is not None:
        return base.graph_phi
    if isinstance(base.stacking, StateTable):
        return compile_state_table_graph(base)
    recipe = getattr(base.stacking, "recipe", {})
    if recipe.get("combinator") == "extend_generators":
        inner = base.stacking.ingredients["base"]
        letters = base.alphabet.letters
        padded = fa.padded_alphabet([letters] * 3)
        pieces = [structure_graph(inner).over(padded)]
        nf = base.nf
        for a, w in recipe["extra"]:
            pieces.append(fa.product(nf, Fsa.finite(letters, [(a,)]), Fsa.finite(letters, [tuple(w)]),
                                     alphabets=[letters] * 3))
        return fa.union(*pieces).minimize()
    raise ConstructionError(f"cannot compile the stacking graph of {base!r}")


def compile_gog_graph(s: AutostackableStructure) -> Fsa:
    """Padded 3-tape acceptor of Graph(Φ) following the regular decomposition.

    Pieces: non-tree edge letters fixed; L_{f,a} = R_{f,a} ∩ S_a for the
    edge-crossing case; L'_{f,a,w} = R_{f,a} ∩ Q_{f,a,w} (minus S_a for
    subgroup letters) and L'_{0,a,w} = Nf₀ ∩ Q_{0,a,w} for deferred values.
    """
    model: GogModel = s.gog_model
    spec = model.spec
    A = model.alphabet.letters
    nf = s.nf
    sigma = Fsa.universal(A)
    v0 = spec.basepoint
    tapes = [A, A, A]

    def triple(lang, a, w):
        return fa.product(lang, Fsa.finite(A, [(a,)]), Fsa.finite(A, [tuple(w)]), alphabets=tapes)

    # words by terminal vertex
    ends_at = {}
    for u in spec.vertices:
        C = list(model.vertex_alphabets[u]) + [e for e in model.nontree if spec.edges[e].dst == u]
        lang = fa.intersection(nf, fa.concat(sigma, Fsa.finite(A, [(c,) for c in C])))
        if u == v0:
            lang = fa.union(lang, Fsa.epsilon(A))
        ends_at[u] = lang.minimize()
    # deflated words whose inflation ends with f followed by letters of t(f)
    tilde = s.nf_tilde
    full = model.full_alphabet.letters
    after_edge = {}
    for f, d in spec.edges.items():
        tail = fa.concat_all(Fsa.universal(full), Fsa.finite(full, [(f,)]),
                             Fsa.star_of_letters(full, model.vertex_alphabets[d.dst].letters))
        after_edge[f] = model.deflate_language(fa.intersection(tilde, tail))

    def R(f, a):
        target = model.vertex_of[a]
        parts = [ends_at[u] for u in spec.vertices
                 if spec.pt(u, target) and spec.pt(u, target)[-1] == f]
        if spec.edges[f].dst == target:
            parts.append(after_edge[f])
        return fa.union(Fsa.empty(A), *parts)

    S_cache = {}

    def S(a):
        u = model.vertex_of[a]
        if u not in S_cache:
            others = [c for c in A if model.vertex_of.get(c) != u]
            S_cache[u] = fa.union(Fsa.epsilon(A),
                                  fa.intersection(nf, fa.concat(sigma, Fsa.finite(A, [(c,) for c in others]))))
        return S_cache[u]

    graphs = {}

    def Q_pieces(key, a):
        """(w, Q_{key,a,w}) for every value w the component structure takes at letter a."""
        comp = model.structures[key]
        if key not in graphs:
            graphs[key] = structure_graph(comp)
        g = graphs[key]
        u = model.vertex_of[a]
        Au = model.vertex_alphabets[u].letters
        at_a = fa.intersection(g, fa.product(Fsa.universal(Au), Fsa.finite(Au, [(a,)]),
                                             Fsa.universal(Au), alphabets=[Au, Au, Au]).over(g.alphabet))
        values = fa.enumerate_upto(fa.projection(at_a, 2, Au), comp.bound)
        out = []
        for w in values:
            sel = fa.intersection(at_a, fa.product(Fsa.universal(Au), Fsa.finite(Au, [(a,)]),
                                                   Fsa.finite(Au, [w]), alphabets=[Au, Au, Au]).over(g.alphabet))
            suffixes = fa.projection(sel, 0, Au).over(A)
            out.append((w, fa.intersection(nf, fa.concat(S(a), suffixes))))
        return out

    pieces = []
    for a in sorted(model.nontree):
        pieces.append(triple(nf, a, (a,)))
    nf0 = model.structures[BASE].nf.over(A)
    for a in model.vertex_alphabets[v0]:
        for w, q in Q_pieces(BASE, a):
            pieces.append(triple(fa.intersection(nf0, q), a, w))
    for f, d in spec.edges.items():
        for a in model.vertex_alphabets[d.dst]:
            r = R(f, a)
            if r.is_empty():
                continue
            if a in model.subgroups[f]:
                value = model.defl((d.inverse,) + model.hats[f][a] + (f,))
                pieces.append(triple(fa.intersection(r, S(a)), a, value))
                r = fa.difference(r, S(a))
            for w, q in Q_pieces(f, a):
                lang = fa.intersection(r, q)
                if not lang.is_empty():
                    pieces.append(triple(lang, a, w))
    return fa.union(*pieces).minimize()
