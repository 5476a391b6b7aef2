"""Structures respecting a subgroup from strongly prefix-closed coset automaticity.

The input is an autostackable structure for H over B and a regular,
prefix-closed transversal L of the right cosets H\\G over C satisfying the
H-coset fellow traveler property with constant K_ft.  Multiplier automata
M_{h,c} recognise the padded pairs (x, y) ∈ L × L with x·c = h·y by tracking
x(i)⁻¹·h·y(i) inside the ball of radius K_ft.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Mapping, Sequence

from .. import automata as fa
from ..automata import PAD, Fsa
from ..errors import (BallTooSmall, DeadMultiplierState, OracleInconsistent, OutOfBall,
                      SpecInvariantViolation)
from ..oracles import ball_enumerate
from ..stacking import AutostackableStructure, Composed, RespectingStructure
from ..words import Alphabet, Word, free_reduce, invert

Key = Hashable


@dataclass
class CosetAutomaticData:
    """Transversal, fellow traveler constant and ball arithmetic for (G, H).

    ``ball`` maps element keys to their shortlex-least C-words and must hold
    every element within distance ``fellow_constant`` of the identity (a
    larger radius is allowed and is needed when subgroup letters are long
    C-words).  ``multiply(key, letter)`` is right multiplication by a letter
    of C or B.  ``subgroup_words`` maps the keys of subgroup elements in the
    ball to B-words representing them, and ``letter_keys`` gives the key of
    each letter of B.
    """

    g_alphabet: Alphabet
    transversal: Fsa
    fellow_constant: int
    ball: Mapping[Key, Word]
    identity: Key
    multiply: Callable[[Key, str], Key]
    subgroup_words: Mapping[Key, Word]
    letter_keys: Mapping[str, Key]
    name: str = ""
    _mult_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.transversal = self.transversal.over(self.g_alphabet.letters)
        if not self.transversal.accepts(()):
            raise SpecInvariantViolation("the transversal must contain the empty word")
        if not self.transversal.is_prefix_closed():
            raise SpecInvariantViolation("the transversal must be prefix-closed")
        if self.identity not in self.ball:
            raise SpecInvariantViolation("the ball must contain the identity")
        self.small_ball = [k for k, w in self.ball.items() if len(w) <= self.fellow_constant]
        self._small = set(self.small_ball)
        for k in self.small_ball:
            inv_key = self.eval(invert(self.ball[k], self.g_alphabet))
            if inv_key not in self.ball:
                raise SpecInvariantViolation("the ball is not closed under inverses")

    @classmethod
    def from_oracle(cls, oracle, g_alphabet: Alphabet, transversal: Fsa, fellow_constant: int,
                    subgroup_word: Callable[[Key], Sequence[str] | None], radius: int | None = None,
                    name: str = "") -> "CosetAutomaticData":
        """Tabulate the ball of radius ``max(fellow_constant + 1, radius)`` from an element oracle.

        One step beyond the fellow traveler constant keeps every intermediate
        product of the ball arithmetic inside the table.
        """
        r = fellow_constant + 1 if radius is None else max(radius, fellow_constant + 1)
        ball = ball_enumerate(oracle, g_alphabet, r)
        words = {}
        for k in ball:
            w = subgroup_word(k)
            if w is not None:
                words[k] = tuple(w)
        letter_keys = {a: oracle.multiply(oracle.identity, a) for a in oracle.alphabet}
        return cls(g_alphabet, transversal, fellow_constant, ball, oracle.identity,
                   oracle.multiply, words, letter_keys, name)

    def eval(self, w: Sequence[str], start: Key | None = None) -> Key:
        key = self.identity if start is None else start
        for a in w:
            key = self.multiply(key, a)
        return key

    def bounded_mult(self, g: Key, x: str | None, y: str | None) -> Key:
        """x⁻¹·g·y inside the fellow-traveler ball (``None`` stands for ε)."""
        k = (g, x, y)
        if k not in self._mult_cache:
            if g not in self._small:
                raise OracleInconsistent(f"element {g!r} is outside the ball")
            w = ((self.g_alphabet.inverse(x),) if x is not None else ()) + tuple(self.ball[g])
            w += (y,) if y is not None else ()
            r = self.eval(w)
            self._mult_cache[k] = r if r in self._small else None
        r = self._mult_cache[k]
        if r is None:
            raise OutOfBall(g, x, y)
        return r

    def subgroup_ball(self) -> list:
        return [k for k in self.small_ball if k in self.subgroup_words]


class Multipliers:
    """Shared transition structure of all multiplier automata M_{h,c}."""

    FAIL = "F"

    def __init__(self, data: CosetAutomaticData):
        self.data = data
        C = data.g_alphabet.letters
        self.pairs = fa.product(data.transversal, data.transversal, alphabets=[C, C])
        self.symbols = self.pairs.alphabet
        self.state_count = self.pairs.n * len(data.small_ball) + 1
        self.letter_keys = {c: data.multiply(data.identity, c) for c in C}
        self._step: dict = {}

    def start(self, h: Key):
        return (self.pairs.start, h)

    def step(self, state, sym):
        if state == self.FAIL:
            return self.FAIL
        k = (state, sym)
        if k not in self._step:
            q, g = state
            r = self.pairs.trans[q].get(sym, self.pairs.sink)
            if r == self.pairs.sink:
                self._step[k] = self.FAIL
            else:
                x, y = sym
                try:
                    g2 = self.data.bounded_mult(g, None if x == PAD else x, None if y == PAD else y)
                    self._step[k] = (r, g2)
                except OutOfBall:
                    self._step[k] = self.FAIL
        return self._step[k]

    def accepting(self, state, c: str) -> bool:
        return (state != self.FAIL and state[0] in self.pairs.accept
                and state[1] == self.letter_keys[c])

    def run(self, h: Key, padded) -> object:
        s = self.start(h)
        for sym in padded:
            s = self.step(s, sym)
        return s

    def continuation(self, state, c: str):
        """Shortest padded continuation to acceptance, ties shortlex; ``None`` if dead."""
        if self.accepting(state, c):
            return ()
        seen = {state}
        todo = deque([(state, ())])
        while todo:
            s, w = todo.popleft()
            for sym in self.symbols:
                r = self.step(s, sym)
                if r == self.FAIL or r in seen:
                    continue
                if self.accepting(r, c):
                    return w + (sym,)
                seen.add(r)
                todo.append((r, w + (sym,)))
        return None

    def reachable(self, h: Key) -> list:
        s0 = self.start(h)
        seen = {s0}
        todo = [s0]
        while todo:
            s = todo.pop()
            for sym in self.symbols:
                r = self.step(s, sym)
                if r != self.FAIL and r not in seen:
                    seen.add(r)
                    todo.append(r)
        return sorted(seen, key=repr)

    def successor(self, z: Word, c: str) -> tuple[Key, Word]:
        """(h, z′) with z·c = h·z′, z′ ∈ L, h in the subgroup part of the ball."""
        C = self.data.g_alphabet.letters
        starts = [(self.start(h), 0) for h in self.data.subgroup_ball()]
        parent: dict = {node: None for node in starts}
        todo = deque(starts)
        n = len(z)
        while todo:
            node = todo.popleft()
            s, i = node
            if i == n and self.accepting(s, c):
                return self._reconstruct(parent, node)
            x = z[i] if i < n else PAD
            for y in C + (PAD,):
                if x == PAD and y == PAD:
                    continue
                r = self.step(s, (x, y))
                if r == self.FAIL:
                    continue
                nxt = (r, min(i + 1, n) if x != PAD else n)
                if nxt not in parent:
                    parent[nxt] = (node, y)
                    todo.append(nxt)
        raise DeadMultiplierState(f"no transversal word z′ with {' '.join(z)}·{c} ∈ H·z′ inside the ball")

    @staticmethod
    def _reconstruct(parent, node):
        second = []
        while parent[node] is not None:
            node, y = parent[node]
            if y != PAD:
                second.append(y)
        return node[0][1], tuple(reversed(second))


def build_multiplier(data: CosetAutomaticData, h: Key, c: str) -> Fsa:
    """The multiplier automaton M_{h,c} over padded pairs of C (reachable part)."""
    if h not in data._small:
        raise OracleInconsistent(f"element {h!r} is outside the ball")
    if c not in data.g_alphabet:
        raise SpecInvariantViolation(f"{c!r} is not a transversal letter")
    m = Multipliers(data)
    s0 = m.start(h)
    index = {s0: 0}
    order = [s0]
    trans: list[dict] = []
    i = 0
    while i < len(order):
        s = order[i]
        i += 1
        row = {}
        for sym in m.symbols:
            r = m.step(s, sym)
            if r == m.FAIL:
                continue
            if r not in index:
                index[r] = len(order)
                order.append(r)
            row[sym] = index[r]
        trans.append(row)
    trans.append({})
    accept = [k for k, s in enumerate(order) if m.accepting(s, c)]
    return Fsa(m.symbols, len(order) + 1, 0, accept, trans, len(order))


class CosetModel:
    def __init__(self, h: AutostackableStructure, data: CosetAutomaticData, mu: int | None = None):
        self.h, self.data = h, data
        B, C = h.alphabet, data.g_alphabet
        clash = set(B.letters) & set(C.letters)
        if clash:
            raise SpecInvariantViolation(f"subgroup and transversal alphabets overlap: {sorted(clash)}")
        self.B, self.C = B, C
        self.alphabet = B.union(C)
        self.mult = Multipliers(data)
        self.mu = self.mult.state_count if mu is None else int(mu)
        self.sl = {}
        for b in B:
            key = data.letter_keys.get(b)
            if key is None or key not in data.ball:
                raise BallTooSmall(f"no shortlex C-word for {b!r} inside the ball")
            self.sl[b] = tuple(data.ball[key])
            if not self.sl[b]:
                raise BallTooSmall(f"letter {b!r} represents the identity")
        self._x = {}
        for k in data.subgroup_ball():
            self._x[k] = h.normal_form(data.subgroup_words[k])
        if mu is not None:
            self._check_mu()
        self._succ: dict = {}
        self._cont: dict = {}

    def _check_mu(self):
        need = 0
        for hk in self.data.subgroup_ball():
            for s in self.mult.reachable(hk):
                for c in self.C:
                    w = self.mult.continuation(s, c)
                    if w is not None:
                        need = max(need, len(w))
        if self.mu < need:
            raise SpecInvariantViolation(
                f"mu = {self.mu} is below the longest needed continuation ({need})")

    def successor(self, z: Word, c: str):
        k = (z, c)
        if k not in self._succ:
            self._succ[k] = self.mult.successor(z, c)
        return self._succ[k]

    def cont(self, state, c: str) -> tuple[Word, Word]:
        k = (state, c)
        if k not in self._cont:
            w = self.mult.continuation(state, c)
            if w is None:
                raise DeadMultiplierState(f"state {state!r} of the multiplier for {c!r} is not live")
            self._cont[k] = fa.unpad(w, 2)
        return self._cont[k]

    def split(self, y: Word) -> tuple[Word, Word]:
        k = 0
        while k < len(y) and y[k] in self.B:
            k += 1
        return y[:k], y[k:]

    def phi(self, y: Word, a: str, tree: bool) -> Word:
        x, z = self.split(y)
        if a in self.B:
            return self.h.phi(x, a) if not z else self.sl[a]
        if tree:
            return (a,)
        hk, z2 = self.successor(z, a)
        A = self.alphabet
        if len(z) <= self.mu:
            return free_reduce(invert(z, A) + self._x[hk] + z2, A)
        j = len(z) - self.mu - 1
        state = self.mult.run(hk, fa.pad((z[:j], z2[:j])))
        v, w = self.cont(state, a)
        return invert(z[j:], A) + v + (a,) + invert(w, A) + z2[j:]

    def bound(self) -> int:
        X = max((len(x) for x in self._x.values()), default=0)
        mu = self.mu
        return max([self.h.bound, 1, 3 * mu + X, 5 * mu + 3] + [len(w) for w in self.sl.values()])


def coset_compose(h: AutostackableStructure, data: CosetAutomaticData, mu: int | None = None,
                  name: str = "") -> RespectingStructure:
    """Structure for G = ⟨B ⊔ C⟩ respecting H with normal forms Nf_H · L.

    ``mu`` replaces the multiplier state count as the threshold between the
    short and long transversal cases; it must be at least the length of every
    chosen continuation (checked), so smaller values keep (F3) intact while
    making the long case reachable on short words.
    """
    model = CosetModel(h, data, mu)
    A = model.alphabet
    nf = fa.concat(h.nf.over(A.letters), data.transversal.over(A.letters)).minimize()
    inv = A.inverse

    def rule(y, a, state):
        tree = nf.step(state, a) in nf.accept or (bool(y) and y[-1] == inv(a))
        return model.phi(y, a, tree)

    recipe = {"combinator": "coset_compose", "subgroup": h.name, "data": data.name, "mu": model.mu}
    stacking = Composed(rule, recipe, {"subgroup": h, "data": data})
    base = AutostackableStructure(A, nf, stacking, model.bound(), name=name)
    out = RespectingStructure(base, list(h.alphabet.letters))
    out.coset_model = model
    return out
