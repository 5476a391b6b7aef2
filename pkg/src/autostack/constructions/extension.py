"""Group extensions 1 → K → G → Q → 1 with Q respecting q(H).

Normal forms are Nf_K · hat(Nf_Q): a kernel normal form followed by the
lift of a quotient normal form.  Flow values need kernel normal forms of
words that are known to represent kernel elements; those come from a
*K-rewriter*, either user supplied or the built-in one driven by
conjugation and cocycle data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .. import automata as fa
from .. import kernels
from ..errors import ConstructionError, KRewriterFailure, NotANormalForm, SpecInvariantViolation
from ..stacking import (AutostackableStructure, Composed, RespectingStructure, StateTable)
from ..words import Alphabet, Word, invert


class ConjugationCocycleRewriter:
    """Kernel normal forms of words over A_K ∪ Ĉ representing kernel elements.

    ``conjugation[ĉ][x]`` is a K-word equal to ĉ⁻¹·x·ĉ, for every lift letter
    ĉ (both signs) and kernel letter x.  ``cocycles[(c, u)]`` is a K-word
    κ with ĉ = hat(u)·κ, for each quotient letter ``c`` and each stacking
    value ``u ≠ c`` the quotient structure uses at ``c``.

    The rewriter moves kernel letters to the right end (conjugating them
    across lift letters), then solves the word problem of the remaining lift
    word in Q; every flow step ĉ → hat(u) of that solution leaves behind a
    cocycle, which is moved right in the same way.
    """

    def __init__(self, k_structure: AutostackableStructure, q_structure, lifts: Mapping[str, str],
                 conjugation: Mapping[str, Mapping[str, Sequence[str]]],
                 cocycles: Mapping[tuple, Sequence[str]]):
        self.k = k_structure
        self.q = q_structure
        self.lifts = dict(lifts)
        self.unlift = {v: c for c, v in self.lifts.items()}
        self.conjugation = {c: {x: tuple(w) for x, w in m.items()} for c, m in conjugation.items()}
        self.cocycles = {(c, tuple(u)): tuple(w) for (c, u), w in cocycles.items()}
        for lc in self.unlift:
            missing = [x for x in self.k.alphabet if x not in self.conjugation.get(lc, {})]
            if missing:
                raise SpecInvariantViolation(f"no conjugation data for {lc!r} on {missing}")

    def _conj(self, lifted: str, k: Word) -> Word:
        """K-normal form of lifted⁻¹ · k · lifted."""
        table = self.conjugation[lifted]
        return self.k.normal_form(tuple(x for a in k for x in table[a]))

    def _conj_word(self, lifted_word: Sequence[str], k: Word) -> Word:
        for c in lifted_word:
            k = self._conj(c, k)
        return k

    def __call__(self, w: Sequence[str]) -> Word:
        lifted: list[str] = []
        k: Word = ()
        K = self.k.alphabet
        for a in w:
            if a in K:
                k = k + (a,)
            elif a in self.unlift:
                k = self._conj(a, self.k.normal_form(k))
                lifted.append(a)
            else:
                raise KRewriterFailure(f"letter {a!r} is neither a kernel letter nor a lift")
        k = self.k.normal_form(k)
        # solve the lifted word in Q, carrying cocycles to the right
        qword = tuple(self.unlift[c] for c in lifted)
        result, events = self.q.derivation_trace(qword)
        if result:
            raise KRewriterFailure("word does not represent a kernel element")
        current = list(lifted)
        for ev in events:
            p = ev.position
            if ev.kind == "cancel":
                del current[p:p + 2]
                continue
            c = ev.letter
            u = ev.replacement
            try:
                kappa = self.cocycles[(c, u)]
            except KeyError:
                raise KRewriterFailure(f"no cocycle for {c!r} -> {' '.join(u)}") from None
            repl = [self.lifts[x] for x in u]
            tail = current[p + 1:]
            current[p:p + 1] = repl
            k = self.k.normal_form(self._conj_word(tail, kappa) + k)
        return k


@dataclass
class ExtensionSpec:
    """Kernel structure, quotient structure respecting q(H), lifts and a K-rewriter.

    ``lifts`` maps each quotient letter (both signs) to a fresh lift letter;
    lifts of inverse letters must be inverse lift letters.
    """

    k_structure: AutostackableStructure
    q_structure: RespectingStructure
    lifts: Mapping[str, str]
    k_rewriter: Callable[[Sequence[str]], Word]
    bound: int | None = None
    name: str = ""


class ExtensionModel:
    def __init__(self, spec: ExtensionSpec):
        self.spec = spec
        k, q = spec.k_structure, spec.q_structure
        if not isinstance(q, RespectingStructure):
            raise SpecInvariantViolation("the quotient structure must be a respecting structure")
        self.k, self.q = k, q
        self.k_base = k.base if isinstance(k, RespectingStructure) else k
        C = q.alphabet
        lifts = dict(spec.lifts)
        for c in C:
            if c not in lifts:
                raise SpecInvariantViolation(f"no lift for quotient letter {c!r}")
        lifted = [lifts[c] for c in C]
        if len(set(lifted)) != len(lifted):
            raise SpecInvariantViolation("lift letters must be distinct")
        clash = set(lifted) & set(k.alphabet.letters)
        if clash:
            raise SpecInvariantViolation(f"lift letters overlap the kernel alphabet: {sorted(clash)}")
        inverses = {lifts[c]: lifts[C.inverse(c)] for c in C}
        self.lifts = lifts
        self.unlift = {v: c for c, v in lifts.items()}
        self.alphabet = k.alphabet.union(Alphabet(lifted, inverses))
        self.subgroup = list(k.alphabet.letters) + [lifts[d] for d in q.subgroup_alphabet]
        self._cache_ii: dict = {}
        self._cache_iii: dict = {}

    def hat(self, w: Sequence[str]) -> Word:
        return tuple(self.lifts[c] for c in w)

    def rewrite(self, w: Word) -> Word:
        r = tuple(self.spec.k_rewriter(w))
        if not self.k.nf.accepts(r) or any(a not in self.k.alphabet for a in r):
            raise KRewriterFailure(f"K-rewriter returned a non-normal form for {' '.join(w)}")
        return r

    def split(self, y: Sequence[str]) -> tuple[Word, Word]:
        """(r_y, s_y·t_y): kernel prefix and lifted quotient suffix."""
        # the lifted part is a suffix and usually short, so scan from the right
        i = len(y)
        unlift = self.unlift
        while i > 0 and y[i - 1] in unlift:
            i -= 1
        return tuple(y[:i]), tuple(y[i:])

    def _k_phi(self, r: Word, a: str) -> Word:
        """φ_K(r, a), running the kernel acceptor through the compiled kernel."""
        base = self.k.base if isinstance(self.k, RespectingStructure) else self.k
        code, _, table, accepting = base._encoding()
        q = kernels.run(table, base.nf.start, [code[x] for x in r])
        if not accepting[q]:
            raise NotANormalForm(r)
        return base._phi(r, q, a)

    def phi(self, y: Word, a: str) -> Word:
        r, st = self.split(y)
        if a in self.k.alphabet:
            if not st:
                return self._k_phi(r, a)
            last = st[-1]
            key = (last, a)
            if key not in self._cache_ii:
                inv = self.alphabet.inverse
                self._cache_ii[key] = (inv(last),) + self.rewrite((last, a, inv(last))) + (last,)
            return self._cache_ii[key]
        u = self.q.phi(tuple(self.unlift[c] for c in st), self.unlift[a])
        key = (a, u)
        if key not in self._cache_iii:
            hu = self.hat(u)
            self._cache_iii[key] = self.rewrite((a,) + invert(hu, self.alphabet)) + hu
        return self._cache_iii[key]

    def bound(self) -> int:
        if self.spec.bound is not None:
            return self.spec.bound
        stacking = self.q.stacking
        if not isinstance(stacking, StateTable):
            raise ConstructionError("give an explicit bound when the quotient map is not a state table")
        best = self.k.bound
        inv = self.alphabet.inverse
        for last in self.unlift:
            for a in self.k.alphabet:
                best = max(best, 2 + len(self.rewrite((last, a, inv(last)))))
        values = {(self.lifts[c], (c,)) for c in self.q.alphabet}
        values |= {(self.lifts[c], w) for (_, c), w in stacking.table.items()}
        for a, u in values:
            hu = self.hat(u)
            best = max(best, len(self.rewrite((a,) + invert(hu, self.alphabet))) + len(hu))
        return best


def _concat_acceptor(model: ExtensionModel) -> fa.Fsa:
    """Acceptor of Nf_K · hat(Nf_Q) whose first states are exactly those of the Nf_K acceptor.

    Kernel and lift letters are disjoint, so no subset construction is needed:
    states below ``k.nf.n`` track the kernel prefix and the rest track the
    lifted suffix.  Keeping the kernel states visible lets the flow rule
    read the kernel acceptor state straight from the solver.
    """
    kn, qn = model.k.nf, model.q.nf
    letters = model.alphabet.letters
    n_k = kn.n
    sink = n_k + qn.n
    trans: list[dict] = []
    for q in range(n_k):
        row = {a: r for a, r in kn.trans[q].items() if r != kn.sink}
        if q in kn.accept:
            for c in model.q.alphabet:
                r = qn.step(qn.start, c)
                if r != qn.sink:
                    row[model.lifts[c]] = n_k + r
        trans.append(row)
    for q in range(qn.n):
        trans.append({model.lifts[c]: n_k + r for c, r in qn.trans[q].items() if r != qn.sink})
    trans.append({})
    accept = list(kn.accept) + [n_k + q for q in qn.accept]
    # the kernel acceptor's own sink stays as an isolated rejecting state so that
    # state numbers are not shifted
    return fa.Fsa(letters, sink + 1, kn.start, accept, trans, sink)


def extension_compose(spec: ExtensionSpec) -> RespectingStructure:
    """Structure for G respecting H = q⁻¹(q(H)) over A_K ∪ Ĉ."""
    model = ExtensionModel(spec)
    nf = _concat_acceptor(model)
    n_k = model.k.nf.n
    recipe = {"combinator": "extension_compose", "spec": spec.name}

    def rule(y, a, state):
        if state < n_k and a in model.k.alphabet:
            # y is a kernel normal form and ``state`` its kernel acceptor state
            return model.k_base._phi(y, state, a)
        return model.phi(y, a)

    stacking = Composed(rule, recipe, {"model": model})
    base = AutostackableStructure(model.alphabet, nf, stacking, model.bound(), name=spec.name)
    out = RespectingStructure(base, model.subgroup)
    out.extension_model = model
    return out
