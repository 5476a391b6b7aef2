"""Deterministic finite-state acceptors and regular-language closure operations.

Every :class:`Fsa` is deterministic and complete.  Transitions are stored
sparsely: a missing ``(state, symbol)`` entry routes to the explicit
``sink`` state, which loops on every symbol.  Symbols are any hashable
values; letters are strings and padded multi-tape symbols are tuples of
letters and :data:`PAD`.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .words import UnknownLetter

PAD = "$"


class MalformedPadding(ValueError):
    """A padded word resumed a component after reading the pad symbol."""


class Fsa:
    """Complete deterministic finite-state acceptor.

    ``trans[q]`` maps symbols to successor states; absent symbols go to
    ``sink``.  The sink has no outgoing entries of its own.
    """

    __slots__ = ("alphabet", "n", "start", "accept", "trans", "sink", "_index")

    def __init__(self, alphabet: Sequence[Hashable], n: int, start: int,
                 accept: Iterable[int], trans: Sequence[Mapping], sink: int):
        self.alphabet = tuple(alphabet)
        self._index = {a: i for i, a in enumerate(self.alphabet)}
        if len(self._index) != len(self.alphabet):
            raise ValueError("duplicate alphabet symbols")
        self.n = n
        self.start = start
        self.accept = frozenset(accept)
        self.trans = tuple(dict(t) for t in trans)
        self.sink = sink
        if not (0 <= start < n and 0 <= sink < n) or len(self.trans) != n:
            raise ValueError("state indices out of range")
        if self.trans[sink]:
            raise ValueError("sink state must not carry explicit transitions")
        for q, t in enumerate(self.trans):
            for a, r in t.items():
                if a not in self._index:
                    raise UnknownLetter(a, "transition table")
                if not 0 <= r < n:
                    raise ValueError(f"bad target {r} from state {q}")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_transitions(cls, alphabet, n, start, accept, transitions) -> "Fsa":
        """Build from ``[(src, symbol, dst), ...]``; a fresh sink is appended."""
        trans = [dict() for _ in range(n + 1)]
        for src, a, dst in transitions:
            if a in trans[src] and trans[src][a] != dst:
                raise ValueError(f"nondeterministic transition at ({src}, {a!r})")
            trans[src][a] = dst
        return cls(alphabet, n + 1, start, accept, trans, n).trim_sink()

    @classmethod
    def universal(cls, alphabet) -> "Fsa":
        alphabet = tuple(alphabet)
        return cls(alphabet, 2, 0, [0], [{a: 0 for a in alphabet}, {}], 1)

    @classmethod
    def empty(cls, alphabet) -> "Fsa":
        return cls(alphabet, 1, 0, [], [{}], 0)

    @classmethod
    def epsilon(cls, alphabet) -> "Fsa":
        return cls(alphabet, 2, 0, [0], [{}, {}], 1)

    @classmethod
    def finite(cls, alphabet, words: Iterable[Sequence]) -> "Fsa":
        """Acceptor of a finite set of words (a trie)."""
        alphabet = tuple(alphabet)
        index = set(alphabet)
        trans: list[dict] = [{}]
        accept = set()
        for w in words:
            q = 0
            for a in w:
                if a not in index:
                    raise UnknownLetter(a, "finite language")
                if a not in trans[q]:
                    trans.append({})
                    trans[q][a] = len(trans) - 1
                q = trans[q][a]
            accept.add(q)
        trans.append({})
        return cls(alphabet, len(trans), 0, accept, trans, len(trans) - 1)

    @classmethod
    def star_of_letters(cls, alphabet, letters) -> "Fsa":
        """Acceptor of ``letters*`` over ``alphabet``."""
        letters = set(letters)
        return cls(alphabet, 2, 0, [0], [{a: 0 for a in alphabet if a in letters}, {}], 1)

    # -- basic queries --------------------------------------------------------

    def step(self, q: int, a) -> int:
        if a not in self._index:
            raise UnknownLetter(a, "automaton alphabet")
        return self.trans[q].get(a, self.sink)

    def run(self, w: Iterable, q: int | None = None) -> int:
        q = self.start if q is None else q
        trans, sink, index = self.trans, self.sink, self._index
        for a in w:
            if a not in index:
                raise UnknownLetter(a, "automaton alphabet")
            q = trans[q].get(a, sink)
        return q

    def accepts(self, w: Iterable) -> bool:
        return self.run(w) in self.accept

    __contains__ = accepts

    def symbols_used(self) -> list:
        """Symbols carrying an explicit transition, in alphabet order."""
        used = set()
        for t in self.trans:
            used.update(t)
        return [a for a in self.alphabet if a in used]

    def reachable(self) -> set[int]:
        seen = {self.start}
        todo = [self.start]
        while todo:
            q = todo.pop()
            nxt = list(self.trans[q].values())
            if len(self.trans[q]) < len(self.alphabet):
                nxt.append(self.sink)
            for r in nxt:
                if r not in seen:
                    seen.add(r)
                    todo.append(r)
        return seen

    def coreachable(self) -> set[int]:
        """States from which some accepting state can be reached."""
        preds: list[set[int]] = [set() for _ in range(self.n)]
        for q, t in enumerate(self.trans):
            for r in t.values():
                preds[r].add(q)
            if len(t) < len(self.alphabet):
                preds[self.sink].add(q)
        if self.sink in self.accept:
            preds[self.sink].add(self.sink)
        seen = set(self.accept)
        todo = list(seen)
        while todo:
            r = todo.pop()
            for q in preds[r]:
                if q not in seen:
                    seen.add(q)
                    todo.append(q)
        return seen

    def live(self) -> set[int]:
        return self.reachable() & self.coreachable()

    def is_empty(self) -> bool:
        return not (self.reachable() & self.accept)

    def is_prefix_closed(self) -> bool:
        """Every reachable state that can still reach acceptance is accepting."""
        return self.live() <= self.accept

    def with_accept(self, accept: Iterable[int]) -> "Fsa":
        return Fsa(self.alphabet, self.n, self.start, accept, self.trans, self.sink)

    def with_start(self, start: int) -> "Fsa":
        return Fsa(self.alphabet, self.n, start, self.accept, self.trans, self.sink)

    def over(self, alphabet: Sequence) -> "Fsa":
        """Same language viewed over a larger alphabet (new symbols go to the sink).

        When the sink is accepting it is split off so that new symbols still reject.
        """
        alphabet = tuple(alphabet)
        missing = set(self.alphabet) - set(alphabet)
        if missing:
            raise ValueError(f"alphabet does not contain {sorted(map(str, missing))}")
        if alphabet == self.alphabet:
            return self
        if self.sink not in self.accept:
            return Fsa(alphabet, self.n, self.start, self.accept, self.trans, self.sink)
        trans = [dict(t) for t in self.trans]
        trans[self.sink] = {a: self.sink for a in self.alphabet}
        trans.append({})
        return Fsa(alphabet, self.n + 1, self.start, self.accept, trans, self.n)

    # -- structural normalisation ---------------------------------------------

    def trim_sink(self) -> "Fsa":
        """Renumber reachable states, keeping the sink as the last state."""
        reach = sorted(self.reachable() - {self.sink})
        order = [q for q in reach]
        if self.start == self.sink:
            return Fsa(self.alphabet, 1, 0, [0] if self.sink in self.accept else [], [{}], 0)
        mapping = {q: i for i, q in enumerate(order)}
        sink = len(order)
        mapping[self.sink] = sink
        trans = [{a: mapping[r] for a, r in self.trans[q].items()} for q in order] + [{}]
        accept = [mapping[q] for q in self.accept if q in mapping]
        return Fsa(self.alphabet, sink + 1, mapping[self.start], accept, trans, sink)

    def minimize(self) -> "Fsa":
        """Minimal complete DFA (Moore partition refinement on reachable states)."""
        m = self.trim_sink()
        symbols = m.symbols_used()
        # Symbols without any explicit transition all act like the sink.
        n = m.n
        block = [1 if q in m.accept else 0 for q in range(n)]
        while True:
            sigs = {}
            new_block = []
            for q in range(n):
                t = m.trans[q]
                sig = (block[q],) + tuple(block[t.get(a, m.sink)] for a in symbols)
                if len(symbols) < len(m.alphabet):
                    sig += (block[m.sink],)
                new_block.append(sigs.setdefault(sig, len(sigs)))
            if len(sigs) == len(set(block)):
                block = new_block
                break
            block = new_block
        # canonical numbering: BFS from start in symbol order
        sink_block = block[m.sink]
        reps = {}
        for q in range(n):
            reps.setdefault(block[q], q)
        order = [block[m.start]]
        seen = {block[m.start]}
        i = 0
        while i < len(order):
            q = reps[order[i]]
            i += 1
            for a in symbols:
                b = block[m.trans[q].get(a, m.sink)]
                if b not in seen:
                    seen.add(b)
                    order.append(b)
            if sink_block not in seen:
                if len(m.trans[q]) < len(m.alphabet):
                    seen.add(sink_block)
                    order.append(sink_block)
        if sink_block not in seen:
            seen.add(sink_block)
            order.append(sink_block)
        renum = {b: i for i, b in enumerate(order)}
        new_sink = renum[sink_block]
        trans = []
        for b in order:
            q = reps[b]
            if b == sink_block:
                trans.append({})
                continue
            t = {}
            for a in symbols:
                r = renum[block[m.trans[q].get(a, m.sink)]]
                if r != new_sink:
                    t[a] = r
            trans.append(t)
        # the sink block loops to itself on everything, so no entries needed there
        accept = [renum[b] for b in order if reps[b] in m.accept]
        return Fsa(m.alphabet, len(order), renum[block[m.start]], accept, trans, new_sink)

    # -- serialisation --------------------------------------------------------

    def to_json(self) -> dict:
        def enc(a):
            return list(a) if isinstance(a, tuple) else a
        rows = []
        for q, t in enumerate(self.trans):
            for a in self.alphabet:
                if a in t:
                    rows.append([q, enc(a), t[a]])
        data = {"alphabet": [enc(a) for a in self.alphabet], "states": self.n,
                "start": self.start, "accept": sorted(self.accept), "transitions": rows}
        if self.sink in self.accept or any(self.sink == r for _, _, r in rows):
            data["sink"] = self.sink
        return data

    @classmethod
    def from_json(cls, data) -> "Fsa":
        def dec(a):
            return tuple(a) if isinstance(a, list) else a
        alphabet = [dec(a) for a in data["alphabet"]]
        rows = [(s, dec(a), t) for s, a, t in data["transitions"]]
        n = data["states"]
        if "sink" in data:
            trans = [dict() for _ in range(n)]
            for s, a, t in rows:
                trans[s][a] = t
            return cls(alphabet, n, data["start"], data["accept"], trans, data["sink"])
        return cls.from_transitions(alphabet, n, data["start"], data["accept"], rows)

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def to_dot(self, name="fsa") -> str:
        def label(a):
            if isinstance(a, tuple):
                return "(" + ",".join(a) + ")"
            return str(a)
        lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point];',
                 f"  __start -> {self.start};"]
        for q in range(self.n):
            if q == self.sink and q not in self.accept:
                continue
            shape = "doublecircle" if q in self.accept else "circle"
            lines.append(f"  {q} [shape={shape}];")
        for q, t in enumerate(self.trans):
            edges: dict[int, list[str]] = {}
            for a in self.alphabet:
                if a in t and t[a] != self.sink:
                    edges.setdefault(t[a], []).append(label(a))
            for r, labels in edges.items():
                text = ", ".join(labels).replace('"', '\\"')
                lines.append(f'  {q} -> {r} [label="{text}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"<Fsa states={self.n} alphabet={len(self.alphabet)} accept={len(self.accept)}>"


# -- generic subset construction ----------------------------------------------

def _determinize(alphabet, start_set: frozenset, moves: Callable[[object], Mapping],
                 is_accepting: Callable[[frozenset], bool]) -> Fsa:
    """Subset construction.

    ``moves(q)`` returns ``{symbol: set_of_targets}`` for an NFA state ``q``
    (epsilon closure already applied by the caller).
    """
    index = {start_set: 0}
    order = [start_set]
    trans: list[dict] = []
    i = 0
    while i < len(order):
        cur = order[i]
        i += 1
        succ: dict = {}
        for q in cur:
            for a, targets in moves(q).items():
                succ.setdefault(a, set()).update(targets)
        row = {}
        for a in alphabet:
            if a not in succ or not succ[a]:
                continue
            tgt = frozenset(succ[a])
            if tgt not in index:
                index[tgt] = len(order)
                order.append(tgt)
            row[a] = index[tgt]
        trans.append(row)
    empty = frozenset()
    if empty in index:
        sink = index[empty]
    else:
        sink = len(order)
        order.append(empty)
        trans.append({})
    accept = [k for k, s in enumerate(order) if s and is_accepting(s)]
    return Fsa(alphabet, len(order), 0, accept, trans, sink)


def _closure(states, eps: Callable[[object], Iterable]) -> frozenset:
    seen = set(states)
    todo = list(states)
    while todo:
        q = todo.pop()
        for r in eps(q):
            if r not in seen:
                seen.add(r)
                todo.append(r)
    return frozenset(seen)


# -- boolean operations -------------------------------------------------------

def _merged_alphabet(machines: Sequence[Fsa]) -> tuple:
    out = list(machines[0].alphabet)
    seen = set(out)
    for m in machines[1:]:
        for a in m.alphabet:
            if a not in seen:
                seen.add(a)
                out.append(a)
    return tuple(out)


def combine(machines: Sequence[Fsa], accept_rule: Callable[[tuple], bool],
            alphabet: Sequence | None = None) -> Fsa:
    """Synchronous product of several DFAs with an arbitrary acceptance rule.

    ``accept_rule`` receives a tuple of booleans (component accepting or not).
    Symbols foreign to a component send that component to a rejecting dead
    marker.
    """
    machines = list(machines)
    alphabet = tuple(alphabet) if alphabet is not None else _merged_alphabet(machines)
    DEAD = -1
    members = [m._index for m in machines]
    foreign = [a for a in alphabet if any(a not in idx for idx in members)]
    # a component parked in a rejecting sink is indistinguishable from DEAD
    dead_sink = [m.sink not in m.accept for m in machines]

    def norm(m_i, q):
        return DEAD if (q == DEAD or (q == machines[m_i].sink and dead_sink[m_i])) else q

    def nxt(state, a):
        out = []
        for i, (m, q, idx) in enumerate(zip(machines, state, members)):
            if q == DEAD or a not in idx:
                out.append(DEAD)
            else:
                out.append(norm(i, m.trans[q].get(a, m.sink)))
        return tuple(out)

    def default(state):
        return tuple(DEAD if q == DEAD else norm(i, m.sink) for i, (m, q) in enumerate(zip(machines, state)))

    all_dead = tuple(DEAD for _ in machines)
    start = tuple(norm(i, m.start) for i, m in enumerate(machines))
    index = {start: 0}
    order = [start]
    trans: list[dict] = []
    i = 0
    while i < len(order):
        st = order[i]
        i += 1
        row = {}
        if st == all_dead:
            trans.append(row)
            continue
        used = set(foreign)
        for m, q in zip(machines, st):
            if q != DEAD:
                used.update(m.trans[q])
        for a in alphabet:
            if a not in used:
                continue
            tgt = nxt(st, a)
            if tgt not in index:
                index[tgt] = len(order)
                order.append(tgt)
            row[a] = index[tgt]
        if len(used) < len(alphabet):
            dflt = default(st)
            if dflt not in index:
                index[dflt] = len(order)
                order.append(dflt)
            d = index[dflt]
            for a in alphabet:
                if a not in used:
                    row[a] = d
        trans.append(row)

    def acc(st):
        return accept_rule(tuple(q != DEAD and q in m.accept for m, q in zip(machines, st)))

    accept = [k for k, st in enumerate(order) if acc(st)]
    if all_dead in index:
        sink = index[all_dead]
        trans = [{a: r for a, r in row.items() if r != sink} for row in trans]
        n = len(order)
    else:
        trans.append({})
        sink = n = len(order)
        n += 1
    return Fsa(alphabet, n, 0, accept, trans, sink).minimize()


def union(*ms: Fsa) -> Fsa:
    return combine(ms, any)


def intersection(*ms: Fsa) -> Fsa:
    return combine(ms, all)


def difference(m1: Fsa, m2: Fsa) -> Fsa:
    return combine([m1, m2], lambda f: f[0] and not f[1])


def symmetric_difference(m1: Fsa, m2: Fsa) -> Fsa:
    return combine([m1, m2], lambda f: f[0] != f[1])


def complement(m: Fsa, alphabet: Sequence | None = None) -> Fsa:
    """Complement relative to ``alphabet*`` (default: the automaton's own alphabet)."""
    alphabet = m.alphabet if alphabet is None else tuple(alphabet)
    return combine([m], lambda f: not f[0], alphabet)


def equivalent(m1: Fsa, m2: Fsa) -> bool:
    return symmetric_difference(m1, m2).is_empty()


def is_empty(m: Fsa) -> bool:
    return m.is_empty()


def determinize_minimize(m: Fsa) -> Fsa:
    return m.minimize()


def is_prefix_closed(m: Fsa) -> bool:
    return m.is_prefix_closed()


# -- concatenation, star, quotient --------------------------------------------

def concat(m1: Fsa, m2: Fsa) -> Fsa:
    alphabet = _merged_alphabet([m1, m2])
    i1, i2 = m1._index, m2._index

    def with_entry(states):
        states = set(states)
        for side, q in list(states):
            if side == 1 and q in m1.accept:
                states.add((2, m2.start))
        return frozenset(states)

    def moves(state):
        side, q = state
        m, idx = (m1, i1) if side == 1 else (m2, i2)
        out = {}
        for a in alphabet:
            if a not in idx:
                continue
            r = m.trans[q].get(a, m.sink)
            tgt = {(side, r)}
            if side == 1 and r in m1.accept:
                tgt.add((2, m2.start))
            out[a] = tgt
        return out

    start = with_entry({(1, m1.start)})
    return _determinize(alphabet, start, moves,
                        lambda s: any(side == 2 and q in m2.accept for side, q in s)).minimize()


def concat_all(*ms: Fsa) -> Fsa:
    out = ms[0]
    for m in ms[1:]:
        out = concat(out, m)
    return out


def star(m: Fsa) -> Fsa:
    INIT = ("init",)

    def moves(q):
        src = m.start if q == INIT else q
        out = {}
        for a in m.alphabet:
            r = m.trans[src].get(a, m.sink)
            tgt = {r}
            if r in m.accept:
                tgt.add(m.start)
            out[a] = tgt
        return out

    return _determinize(m.alphabet, frozenset([INIT]), moves,
                        lambda s: INIT in s or any(q in m.accept for q in s if q != INIT)).minimize()


def plus(m: Fsa) -> Fsa:
    return concat(m, star(m))


def quotient_by_word(m: Fsa, x: Sequence) -> Fsa:
    """``{w : w x in L(m)}``: re-target acceptance to states that accept after ``x``."""
    for a in x:
        if a not in m._index:
            raise UnknownLetter(a, "quotient word")
    accept = [q for q in range(m.n) if m.run(x, q) in m.accept]
    return m.with_accept(accept).minimize()


# -- homomorphisms ------------------------------------------------------------

def hom_preimage(m: Fsa, phi: Mapping, source_alphabet: Sequence) -> Fsa:
    """``{w over source : phi(w) in L(m)}`` where ``phi`` maps letters to words."""
    source_alphabet = tuple(source_alphabet)
    dead = m.n  # fresh rejecting sink; images with letters foreign to ``m`` land here
    trans: list[dict] = []
    for q in range(m.n):
        row = {}
        for a in source_alphabet:
            img = phi[a]
            if all(x in m._index for x in img):
                row[a] = m.run(img, q)
        trans.append(row)
    trans.append({})
    return Fsa(source_alphabet, m.n + 1, m.start, m.accept, trans, dead).minimize()


def hom_image(m: Fsa, phi: Mapping, target_alphabet: Sequence) -> Fsa:
    """``phi(L(m))`` via an epsilon-NFA and subset construction."""
    target_alphabet = tuple(target_alphabet)
    live = m.coreachable()

    def eps(state):
        if state[0] != "q":
            return ()
        q = state[1]
        out = []
        for a in m.alphabet:
            if not phi[a]:
                r = m.trans[q].get(a, m.sink)
                if r in live:
                    out.append(("q", r))
        return out

    def moves_raw(state):
        out: dict = {}
        if state[0] == "q":
            q = state[1]
            for a in m.alphabet:
                img = phi[a]
                if not img:
                    continue
                r = m.trans[q].get(a, m.sink)
                if r not in live:
                    continue
                tgt = ("q", r) if len(img) == 1 else ("mid", q, a, 1)
                out.setdefault(img[0], set()).add(tgt)
        else:
            _, q, a, k = state
            img = phi[a]
            tgt = ("q", m.trans[q].get(a, m.sink)) if k + 1 == len(img) else ("mid", q, a, k + 1)
            out.setdefault(img[k], set()).add(tgt)
        return out

    def moves(state):
        raw = moves_raw(state)
        return {a: _closure(t, eps) for a, t in raw.items()}

    start = _closure({("q", m.start)}, eps)
    return _determinize(target_alphabet, start, moves,
                        lambda s: any(st[0] == "q" and st[1] in m.accept for st in s)).minimize()


def restrict_to(m: Fsa, letters: Iterable) -> Fsa:
    """``L(m) ∩ letters*``, over the same alphabet."""
    return intersection(m, Fsa.star_of_letters(m.alphabet, letters))


# -- padded multi-tape languages ----------------------------------------------

def padded_alphabet(component_alphabets: Sequence[Sequence]) -> tuple:
    """All tuples over ``(A_i ∪ {$})`` except the all-pad tuple."""
    comps = [tuple(a) + (PAD,) for a in component_alphabets]
    return tuple(t for t in itertools.product(*comps) if any(x != PAD for x in t))


def pad(words: Sequence[Sequence]) -> tuple:
    """Convolution ``(w1, ..., wn) -> padded word``."""
    n = max((len(w) for w in words), default=0)
    return tuple(tuple(w[i] if i < len(w) else PAD for w in words) for i in range(n))


def unpad(padded: Sequence[tuple], arity: int | None = None) -> tuple:
    """Inverse of :func:`pad`; raises :class:`MalformedPadding` on resumed components."""
    if not padded:
        if arity is None:
            raise ValueError("arity needed to unpad the empty word")
        return tuple(() for _ in range(arity))
    arity = len(padded[0])
    out = [[] for _ in range(arity)]
    ended = [False] * arity
    for sym in padded:
        if len(sym) != arity:
            raise MalformedPadding("inconsistent tuple width")
        if all(x == PAD for x in sym):
            raise MalformedPadding("all-pad symbol")
        for i, x in enumerate(sym):
            if x == PAD:
                ended[i] = True
            elif ended[i]:
                raise MalformedPadding(f"component {i} resumes after padding")
            else:
                out[i].append(x)
    return tuple(tuple(w) for w in out)


def product(*ms: Fsa, alphabets: Sequence[Sequence] | None = None) -> Fsa:
    """Padded product ``L1 × ... × Ln`` over the padded tuple alphabet."""
    comps = [tuple(a) for a in alphabets] if alphabets else [m.alphabet for m in ms]
    alphabet = padded_alphabet(comps)
    DEAD = ("dead",)

    def step(st, sym):
        out = []
        for m, c, x in zip(ms, st, sym):
            if c == "dead":
                return DEAD
            running, q = c
            if x == PAD:
                if running:
                    out.append((False, q in m.accept))
                else:
                    out.append(c)
            else:
                if not running:
                    return DEAD
                if x not in m._index:
                    return DEAD
                out.append((True, m.trans[q].get(x, m.sink)))
        return tuple(out)

    start = tuple((True, m.start) for m in ms)
    index = {start: 0}
    order = [start]
    trans: list[dict] = []
    live = [m.coreachable() for m in ms]

    def prune(st):
        if st == DEAD:
            return DEAD
        for m, (running, q), lv in zip(ms, st, live):
            if running and q not in lv:
                return DEAD
            if not running and not q:
                return DEAD
        return st

    i = 0
    while i < len(order):
        st = order[i]
        i += 1
        row = {}
        for sym in alphabet:
            tgt = prune(step(st, sym))
            if tgt == DEAD:
                continue
            if tgt not in index:
                index[tgt] = len(order)
                order.append(tgt)
            row[sym] = index[tgt]
        trans.append(row)

    def acc(st):
        return all((q in m.accept) if running else q for m, (running, q) in zip(ms, st))

    accept = [k for k, st in enumerate(order) if acc(st)]
    trans.append({})
    return Fsa(alphabet, len(order) + 1, 0, accept, trans, len(order)).minimize()


def projection(m: Fsa, i: int, alphabet: Sequence | None = None) -> Fsa:
    """Language of the ``i``-th components of the padded words accepted by ``m``."""
    syms = m.alphabet
    if not syms or not isinstance(syms[0], tuple) or not 0 <= i < len(syms[0]):
        raise IndexError(f"projection index {i} invalid for this automaton")
    if alphabet is None:
        seen = []
        for s in syms:
            if s[i] != PAD and s[i] not in seen:
                seen.append(s[i])
        alphabet = seen
    phi = {s: (() if s[i] == PAD else (s[i],)) for s in syms}
    return hom_image(m, phi, alphabet)


def accepts_padded(m: Fsa, words: Sequence[Sequence]) -> bool:
    return m.accepts(pad(words))


# -- enumeration --------------------------------------------------------------

def enumerate_upto(m: Fsa, n: int, order: Sequence | None = None) -> list[tuple]:
    """All accepted words of length at most ``n``, in shortlex order."""
    order = tuple(order) if order is not None else m.alphabet
    live = m.coreachable()
    out = []
    layer = [((), m.start)] if m.start in live else []
    for length in range(n + 1):
        for w, q in layer:
            if q in m.accept:
                out.append(w)
        if length == n:
            break
        nxt = []
        for w, q in layer:
            t = m.trans[q]
            for a in order:
                r = t.get(a, m.sink)
                if r in live:
                    nxt.append((w + (a,), r))
        layer = nxt
    return out


def count_upto(m: Fsa, n: int) -> int:
    return len(enumerate_upto(m, n))


def shortest_accepted(m: Fsa, q: int | None = None, order: Sequence | None = None):
    """Shortlex-least word leading from ``q`` to acceptance, or ``None``."""
    order = tuple(order) if order is not None else m.alphabet
    q = m.start if q is None else q
    if q in m.accept:
        return ()
    seen = {q}
    todo = deque([(q, ())])
    while todo:
        s, w = todo.popleft()
        t = m.trans[s]
        for a in order:
            r = t.get(a, m.sink)
            if r in seen:
                continue
            if r in m.accept:
                return w + (a,)
            seen.add(r)
            todo.append((r, w + (a,)))
    return None
