"""Autostackable structures, the prefix-rewriting word-problem solver, and Graph(Φ)."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from . import automata as fa
from . import kernels
from .automata import Fsa
from .errors import (BoundViolation, FactorizationMismatch, InconsistentGraph,
                     NotANormalForm, StepLimitExceeded, StuckRewrite)
from .words import Alphabet, UnknownLetter, Word, check_letters, invert

DEFAULT_STEP_CAP = 10 ** 6


def step_cap() -> int:
    raw = os.environ.get("AUTOSTACK_STEP_LIMIT")
    return int(raw) if raw else DEFAULT_STEP_CAP


def default_step_limit(length: int, bound: int) -> int:
    cap = step_cap()
    if bound <= 1:
        return min(cap, 10 * (length + 1))
    # avoid building a huge integer just to compare it with the cap
    limit = 10 * (length + 1)
    for _ in range(length):
        limit *= bound
        if limit >= cap:
            return cap
    return min(limit, cap)


# -- stacking maps -------------------------------------------------------------

class StackingMap:
    """How φ(y, a) is obtained for a normal form ``y`` and letter ``a``."""

    kind = "abstract"

    def evaluate(self, structure: "AutostackableStructure", y: Word, state: int, a: str) -> Word:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


class StateTable(StackingMap):
    """φ read off a finite table indexed by (acceptor state, letter).

    Missing entries mean φ(y, a) = a.
    """

    kind = "state_table"

    def __init__(self, table: Mapping[tuple[int, str], Sequence[str]]):
        self.table = {(int(q), a): tuple(w) for (q, a), w in table.items()}

    def evaluate(self, structure, y, state, a):
        return self.table.get((state, a), (a,))

    def max_length(self) -> int:
        return max((len(w) for w in self.table.values()), default=1)

    def to_json(self):
        rows = [[q, a, list(w)] for (q, a), w in sorted(self.table.items())]
        return {"kind": self.kind, "table": rows}


class Composed(StackingMap):
    """φ computed by a rule produced by a construction combinator.

    ``rule(y, a, state)`` receives the normal form, the letter and the state
    the normal-form acceptor reaches on ``y``.
    """

    kind = "composed"

    def __init__(self, rule: Callable[[Word, str, int], Word], recipe: dict | None = None,
                 ingredients: Mapping | None = None):
        self.rule = rule
        self.recipe = recipe or {}
        self.ingredients = dict(ingredients or {})

    def evaluate(self, structure, y, state, a):
        return tuple(self.rule(y, a, state))

    def to_json(self):
        return {"kind": self.kind, **self.recipe}


class RewritingDerived(StackingMap):
    """φ computed on demand from a finite convergent rewriting system.

    For a non-tree edge ``(y, a)`` the word ``y·a`` has a redex that is a
    suffix ``s·a``; the shortest matching left side wins, ties going to the
    earlier rule, and φ(y, a) = s⁻¹·rhs.
    """

    kind = "rewriting"

    def __init__(self, alphabet: Alphabet, rules: Sequence[tuple[Sequence[str], Sequence[str]]]):
        self.alphabet = alphabet
        self.rules = [(tuple(l), tuple(r)) for l, r in rules]
        by_last: dict[str, list] = {}
        for order, (lhs, rhs) in enumerate(self.rules):
            by_last.setdefault(lhs[-1], []).append((len(lhs), order, lhs, rhs))
        for options in by_last.values():
            options.sort()
        self._by_last = by_last

    def matching_rule(self, y: Word, a: str):
        """Index of the rule used at ``(y, a)``, or ``None`` when no left side fits."""
        for _, order, lhs, _ in self._by_last.get(a, ()):
            k = len(lhs) - 1
            if k <= len(y) and tuple(y[len(y) - k:]) == lhs[:-1]:
                return order
        return None

    def evaluate(self, structure, y, state, a):
        if structure.nf.step(state, a) in structure.nf.accept:
            return (a,)
        if y and y[-1] == self.alphabet.inverse(a):
            return (a,)
        i = self.matching_rule(y, a)
        if i is None:
            return (a,)
        lhs, rhs = self.rules[i]
        return invert(lhs[:-1], self.alphabet) + rhs

    def max_length(self) -> int:
        return max((len(l) - 1 + len(r) for l, r in self.rules), default=1)

    def to_json(self):
        return {"kind": self.kind, "rules": [[list(l), list(r)] for l, r in self.rules]}


# -- structures ----------------------------------------------------------------

@dataclass(frozen=True)
class TraceEvent:
    """One step of the solver: a flow substitution or a free cancellation.

    ``position`` indexes the current word: a flow event replaces the letter at
    ``position`` (which follows the normal-form prefix ``y``) by
    ``replacement``; a cancel event deletes the letters at ``position`` and
    ``position + 1``.
    """

    kind: str
    position: int
    y: Word
    letter: str
    replacement: Word = ()

    def to_json(self):
        return {"kind": self.kind, "position": self.position, "y": list(self.y),
                "letter": self.letter, "replacement": list(self.replacement)}


class AutostackableStructure:
    """Alphabet, prefix-closed normal-form acceptor, stacking map and bound K."""

    def __init__(self, alphabet: Alphabet, nf: Fsa, stacking: StackingMap, bound: int,
                 graph_phi: Fsa | None = None, name: str = "", check: bool = True):
        self.alphabet = alphabet
        if set(nf.alphabet) != set(alphabet.letters):
            nf = nf.over(tuple(alphabet.letters) + tuple(a for a in nf.alphabet if a not in alphabet))
            if set(nf.alphabet) != set(alphabet.letters):
                raise ValueError("normal-form acceptor alphabet differs from structure alphabet")
        self.nf = nf
        self.stacking = stacking
        self.bound = int(bound)
        self.graph_phi = graph_phi
        self.name = name
        if self.bound < 1:
            raise ValueError("bound must be at least 1")
        if check:
            if not nf.accepts(()):
                raise ValueError("normal forms must contain the empty word")
            if not nf.is_prefix_closed():
                raise ValueError("normal-form language is not prefix-closed")
            if isinstance(stacking, StateTable):
                for (q, a), w in stacking.table.items():
                    if len(w) > self.bound:
                        raise BoundViolation((), a, w, self.bound)
                    check_letters(w, alphabet, "stacking table")
        self._dense = None

    # -- internal encodings --------------------------------------------------

    def _encoding(self):
        if self._dense is None:
            letters = self.alphabet.letters
            code = {a: i for i, a in enumerate(letters)}
            inv = [code[self.alphabet.inverse(a)] for a in letters]
            nf = self.nf
            table = [[nf.trans[q].get(a, nf.sink) for a in letters] for q in range(nf.n)]
            accepting = [q in nf.accept for q in range(nf.n)]
            self._dense = (code, inv, table, accepting)
        return self._dense

    # -- public API ----------------------------------------------------------

    def is_normal_form(self, y: Sequence[str]) -> bool:
        return self.nf.accepts(y)

    def phi(self, y: Sequence[str], a: str) -> Word:
        """Stacking value φ(y, a); ``y`` must be a normal form."""
        y = tuple(y)
        if a not in self.alphabet:
            raise UnknownLetter(a, "alphabet")
        state = self.nf.run(y)
        if state not in self.nf.accept:
            raise NotANormalForm(y)
        return self._phi(y, state, a)

    def _phi(self, y: Word, state: int, a: str) -> Word:
        value = self.stacking.evaluate(self, y, state, a)
        if len(value) > self.bound:
            raise BoundViolation(y, a, value, self.bound)
        return value

    def in_tree(self, y: Sequence[str], a: str) -> bool:
        y = tuple(y)
        state = self.nf.run(y)
        if state not in self.nf.accept:
            raise NotANormalForm(y)
        if self.nf.step(state, a) in self.nf.accept:
            return True
        return bool(y) and y[-1] == self.alphabet.inverse(a)

    def normal_form(self, w: Sequence[str], step_limit: int | None = None) -> Word:
        """The normal form of ``w``, by iterated prefix rewriting.

        Each round rewrites at the end of the longest normal-form prefix.
        """
        w = tuple(w)
        check_letters(w, self.alphabet)
        code, inv, table, accepting = self._encoding()
        letters = self.alphabet.letters
        limit = default_step_limit(len(w), self.bound) if step_limit is None else step_limit
        word = kernels.free_reduce([code[a] for a in w], inv)
        states = [self.nf.start]
        valid = 0
        steps = 0
        while True:
            i = kernels.scan(word, states, valid, table, accepting)
            if i == len(word):
                return tuple(map(letters.__getitem__, word))
            steps += 1
            if steps > limit:
                raise StepLimitExceeded(limit, tuple(letters[k] for k in word))
            y = tuple(map(letters.__getitem__, word[:i]))
            a = letters[word[i]]
            value = self._phi(y, states[i], a)
            if value == (a,):
                raise StuckRewrite(y, a)
            word, low = kernels.splice(word, i, [code[b] for b in value], inv)
            valid = min(low, i)

    def is_trivial(self, w: Sequence[str], step_limit: int | None = None) -> bool:
        return self.normal_form(w, step_limit) == ()

    def derivation_trace(self, w: Sequence[str], step_limit: int | None = None) -> tuple[Word, list[TraceEvent]]:
        """Normal form of ``w`` plus every flow and cancellation event, in order."""
        w = tuple(w)
        check_letters(w, self.alphabet)
        inv = self.alphabet.inverse
        limit = default_step_limit(len(w), self.bound) if step_limit is None else step_limit
        events: list[TraceEvent] = []

        def reduce_into(stack: list, rest: Sequence[str]):
            for k, b in enumerate(rest):
                if stack and stack[-1] == inv(b):
                    pos = len(stack) - 1
                    events.append(TraceEvent("cancel", pos, tuple(stack[:pos]), stack[-1]))
                    stack.pop()
                else:
                    stack.append(b)
            return stack

        word = reduce_into([], w)
        steps = 0
        while True:
            q = self.nf.start
            i = 0
            while i < len(word):
                r = self.nf.step(q, word[i])
                if r not in self.nf.accept:
                    break
                q = r
                i += 1
            if i == len(word):
                return tuple(word), events
            steps += 1
            if steps > limit:
                raise StepLimitExceeded(limit, tuple(word))
            y, a = tuple(word[:i]), word[i]
            value = self._phi(y, q, a)
            if value == (a,):
                raise StuckRewrite(y, a)
            events.append(TraceEvent("flow", i, y, a, value))
            word = reduce_into(list(y), value + tuple(word[i + 1:]))

    def enumerate_normal_forms(self, max_len: int) -> list[Word]:
        return fa.enumerate_upto(self.nf, max_len, self.alphabet.letters)

    # -- Graph(Φ) ------------------------------------------------------------

    def graph_membership(self, y: Sequence[str], a: str, u: Sequence[str]) -> bool:
        if self.graph_phi is None:
            raise ValueError("structure carries no compiled graph automaton")
        return self.graph_phi.accepts(fa.pad([tuple(y), (a,), tuple(u)]))

    def to_json(self) -> dict:
        data = {"name": self.name, "alphabet": self.alphabet.to_json(), "nf": self.nf.to_json(),
                "bound": self.bound, "stacking": self.stacking.to_json()}
        if self.graph_phi is not None:
            data["graph_phi"] = self.graph_phi.to_json()
        return data

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<AutostackableStructure{label} |A|={len(self.alphabet)} K={self.bound} {self.stacking.kind}>"


def replay_trace(w: Sequence[str], events: Sequence[TraceEvent], alphabet: Alphabet) -> Word:
    """Apply recorded events to ``w``, checking that each one matches."""
    word = list(w)
    for ev in events:
        if ev.kind == "cancel":
            p = ev.position
            if not (p + 1 < len(word) and word[p + 1] == alphabet.inverse(word[p])):
                raise ValueError(f"cancel event does not match at {p}")
            del word[p:p + 2]
        else:
            p = ev.position
            if tuple(word[:p]) != ev.y or word[p] != ev.letter:
                raise ValueError(f"flow event does not match at {p}")
            word[p:p + 1] = list(ev.replacement)
    return tuple(word)


# -- respecting structures ------------------------------------------------------

def split_languages(nf: Fsa, subgroup_letters) -> tuple[Fsa, Fsa]:
    """Subgroup and transversal normal forms recovered from a respecting ``nf``.

    ``nf_h = nf ∩ B*`` and ``nf_tr = {ε} ∪ (nf ∩ (A∖B)·A*)``.
    """
    B = set(subgroup_letters)
    alphabet = nf.alphabet
    nf_h = fa.restrict_to(nf, B)
    outside = Fsa.finite(alphabet, [(a,) for a in alphabet if a not in B])
    starts_outside = fa.concat(outside, Fsa.universal(alphabet))
    nf_tr = fa.union(Fsa.epsilon(alphabet), fa.intersection(nf, starts_outside))
    return nf_h, nf_tr


class RespectingStructure:
    """A structure whose normal forms factor as Nf_H · Nf_Tr over a subgroup alphabet B."""

    def __init__(self, base: AutostackableStructure, subgroup_letters, nf_h: Fsa | None = None,
                 nf_tr: Fsa | None = None, check: bool = True):
        self.base = base
        self.subgroup_alphabet = base.alphabet.sub(subgroup_letters) if subgroup_letters else Alphabet([])
        B = set(self.subgroup_alphabet.letters)
        if not B <= set(base.alphabet.letters):
            raise ValueError("subgroup letters must belong to the structure alphabet")
        computed_h, computed_tr = split_languages(base.nf, B)
        if nf_h is None:
            nf_h = computed_h
        if nf_tr is None:
            nf_tr = computed_tr
        self.nf_h = nf_h
        self.nf_tr = nf_tr
        if check:
            verify_split(self)

    # delegate the structure interface
    @property
    def alphabet(self):
        return self.base.alphabet

    @property
    def nf(self):
        return self.base.nf

    @property
    def bound(self):
        return self.base.bound

    @property
    def stacking(self):
        return self.base.stacking

    @property
    def name(self):
        return self.base.name

    @property
    def graph_phi(self):
        return self.base.graph_phi

    def phi(self, y, a):
        return self.base.phi(y, a)

    def _phi(self, y, state, a):
        return self.base._phi(y, state, a)

    def in_tree(self, y, a):
        return self.base.in_tree(y, a)

    def normal_form(self, w, step_limit=None):
        return self.base.normal_form(w, step_limit)

    def is_trivial(self, w, step_limit=None):
        return self.base.is_trivial(w, step_limit)

    def derivation_trace(self, w, step_limit=None):
        return self.base.derivation_trace(w, step_limit)

    def is_normal_form(self, y):
        return self.base.is_normal_form(y)

    def enumerate_normal_forms(self, max_len):
        return self.base.enumerate_normal_forms(max_len)

    def graph_membership(self, y, a, u):
        return self.base.graph_membership(y, a, u)

    def factor(self, y: Sequence[str]) -> tuple[Word, Word]:
        """Split a normal form as (subgroup part over B, transversal part)."""
        B = self.subgroup_alphabet
        k = 0
        while k < len(y) and y[k] in B:
            k += 1
        return tuple(y[:k]), tuple(y[k:])

    def to_json(self):
        data = self.base.to_json()
        data["subgroup"] = list(self.subgroup_alphabet.letters)
        return data

    def __repr__(self):
        return f"<RespectingStructure {self.base!r} B={list(self.subgroup_alphabet.letters)}>"


def verify_split(r: RespectingStructure) -> None:
    """Raise :class:`FactorizationMismatch` unless Nf = Nf_H·Nf_Tr with prefix-closed parts."""
    nf_h, nf_tr = split_languages(r.base.nf, r.subgroup_alphabet.letters)
    letters = r.base.nf.alphabet
    if not fa.equivalent(r.nf_h.over(letters) if set(r.nf_h.alphabet) <= set(letters) else r.nf_h, nf_h):
        raise FactorizationMismatch("declared subgroup normal forms differ from Nf ∩ B*")
    if not fa.equivalent(r.nf_tr.over(letters) if set(r.nf_tr.alphabet) <= set(letters) else r.nf_tr, nf_tr):
        raise FactorizationMismatch("declared transversal normal forms differ from the split formula")
    if not (nf_h.is_prefix_closed() and nf_tr.is_prefix_closed()):
        raise FactorizationMismatch("split languages are not prefix-closed")
    if not fa.equivalent(fa.concat(nf_h, nf_tr), r.base.nf):
        raise FactorizationMismatch("Nf is not the concatenation Nf_H · Nf_Tr")


# -- Graph(Φ) for state tables ----------------------------------------------------

def compile_state_table_graph(s: AutostackableStructure) -> Fsa:
    """Padded 3-tape acceptor of {(y, a, φ(y, a))} for a state-table structure.

    Union over (state, letter) of  (Nf ending in that state) × {a} × {table value}.
    """
    stacking = s.stacking
    if not isinstance(stacking, StateTable):
        raise TypeError("graph compilation here needs a state-table stacking map")
    letters = s.alphabet.letters
    nf = s.nf
    pieces = []
    for q in sorted(nf.live() & nf.accept):
        ending_here = nf.with_accept([q])
        for a in letters:
            value = stacking.table.get((q, a), (a,))
            pieces.append(fa.product(ending_here, Fsa.finite(letters, [(a,)]),
                                     Fsa.finite(letters, [value]),
                                     alphabets=[letters, letters, letters]))
    return fa.union(*pieces)


def with_graph(s, graph: Fsa):
    """Copy of ``s`` (or of a respecting structure's base) carrying ``graph``."""
    if isinstance(s, RespectingStructure):
        base = with_graph(s.base, graph)
        return RespectingStructure(base, s.subgroup_alphabet.letters, s.nf_h, s.nf_tr, check=False)
    return AutostackableStructure(s.alphabet, s.nf, s.stacking, s.bound, graph, s.name, check=False)


@dataclass
class CrossCheckReport:
    checked: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def cross_check(s, max_len: int, raise_on_failure: bool = False,
                extra_candidates: int = 2) -> CrossCheckReport:
    """Compare the compiled graph automaton with direct φ on all short normal forms.

    For every normal form ``y`` with ``ℓ(y) <= max_len`` and every letter ``a``
    the triple ``(y, a, φ(y, a))`` must be accepted, and so must no other
    triple: the set of accepted third components is enumerated from the
    automaton itself.
    """
    g = s.graph_phi
    if g is None:
        raise ValueError("structure carries no compiled graph automaton")
    report = CrossCheckReport()
    letters = s.alphabet.letters
    bound = s.bound
    for y in s.enumerate_normal_forms(max_len):
        for a in letters:
            value = s.phi(y, a)
            report.checked += 1
            accepted = _third_components(g, y, a, bound + extra_candidates)
            if accepted != [value]:
                bad = [u for u in accepted if u != value]
                triple = (y, a, bad[0] if bad else value)
                report.counterexamples.append(triple)
                if raise_on_failure:
                    raise InconsistentGraph(triple)
    return report


def _third_components(g: Fsa, y: Word, a: str, max_len: int) -> list[Word]:
    """Every ``u`` with ``ℓ(u) <= max_len`` such that ``(y, a, u)`` is accepted by ``g``."""
    PAD = fa.PAD
    letters = list(dict.fromkeys(sym[2] for sym in g.alphabet if sym[2] != PAD))
    live = g.coreachable()
    fixed_len = max(len(y), 1)
    found = set()
    # (state, position, third-tape word so far, third tape finished)
    stack = [(g.start, 0, (), False)]
    while stack:
        q, i, u, ended = stack.pop()
        if i >= fixed_len:
            if q in g.accept:
                found.add(u)
            if ended:
                continue
            first, second = PAD, PAD
        else:
            first = y[i] if i < len(y) else PAD
            second = a if i == 0 else PAD
        options = [] if ended else list(letters)
        if i < fixed_len:
            options.append(PAD)
        for c in options:
            sym = (first, second, c)
            if sym not in g._index:
                continue
            r = g.trans[q].get(sym, g.sink)
            if r not in live:
                continue
            if c == PAD:
                stack.append((r, i + 1, u, True))
            elif len(u) < max_len:
                stack.append((r, i + 1, u + (c,), False))
    return sorted(found, key=lambda w: (len(w), w))
