"""Supergroups containing an autostackable subgroup with finite index.

Given a structure for H over B, a prefix-closed list of right coset
representatives t_0 = ε, t_1, … over A ⊇ B, and the coset action
t_i·a = h_{ia}·t_j, the group G gets normal forms Nf_H·T and the flow
value invert(t_i)·nf_H(h_{ia})·t_j on every non-tree edge outside H.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .. import automata as fa
from ..automata import Fsa
from ..errors import InconsistentCosetTable, NonPrefixClosedTransversal
from ..stacking import AutostackableStructure, Composed, RespectingStructure
from ..words import Alphabet, Word, check_letters, invert


def _alphabet_from(h_alphabet: Alphabet, transversal, coset_action) -> Alphabet:
    letters = list(h_alphabet.letters)
    for t in transversal:
        letters += [a for a in t if a not in letters]
    letters += [a for (_, a) in coset_action if a not in letters]
    return h_alphabet.union(Alphabet(letters))


def finite_index_compose(h: AutostackableStructure, transversal_words: Sequence[Sequence[str]],
                         coset_action: Mapping[tuple[int, str], tuple[Sequence[str], int]],
                         alphabet: Alphabet | None = None, oracle=None,
                         name: str = "") -> RespectingStructure:
    """Structure for G respecting H.

    ``coset_action[(i, a)] = (h_word, j)`` states t_i·a = h_word·t_j with
    ``h_word`` over B.  When ``oracle`` is given every entry is checked.
    """
    B = h.alphabet
    T = [tuple(t) for t in transversal_words]
    if not T or T[0] != ():
        raise NonPrefixClosedTransversal("the first coset representative must be the empty word")
    if len(set(T)) != len(T):
        raise NonPrefixClosedTransversal("coset representatives must be distinct")
    A = alphabet if alphabet is not None else _alphabet_from(B, T, coset_action)
    for a in B:
        if a not in A or A.inverse(a) != B.inverse(a):
            raise InconsistentCosetTable(f"subgroup letter {a!r} missing from the group alphabet")
    index = {t: i for i, t in enumerate(T)}
    for t in T:
        check_letters(t, A, "coset representative")
        if t and t[:-1] not in index:
            raise NonPrefixClosedTransversal(f"prefix of {' '.join(t)} is not a representative")
        if t and t[0] in B:
            raise NonPrefixClosedTransversal(f"representative {' '.join(t)} starts with a subgroup letter")
    inv = A.inverse
    u: dict[tuple[int, str], tuple[Word, int]] = {}
    for i, t in enumerate(T):
        for a in A:
            if (i, a) not in coset_action:
                raise InconsistentCosetTable(f"no coset action for representative {i} and letter {a!r}")
            h_word, j = coset_action[(i, a)]
            h_word = tuple(h_word)
            if not 0 <= j < len(T):
                raise InconsistentCosetTable(f"coset index {j} out of range")
            check_letters(h_word, B, "coset action")
            nf_h = h.normal_form(h_word)
            if t + (a,) in index and (nf_h or j != index[t + (a,)]):
                raise InconsistentCosetTable(f"t_{i}·{a} is a representative but the table disagrees")
            if t and t[-1] == inv(a) and (nf_h or j != index[t[:-1]]):
                raise InconsistentCosetTable(f"t_{i}·{a} cancels to a representative but the table disagrees")
            if oracle is not None and oracle.eval(t + (a,)) != oracle.eval(h_word + T[j]):
                raise InconsistentCosetTable(f"t_{i}·{a} differs from the tabulated h·t_{j} in the oracle")
            u[(i, a)] = (nf_h, j)

    nf = fa.concat(h.nf.over(A.letters), Fsa.finite(A.letters, T)).minimize()

    def split(y: Word) -> tuple[Word, int]:
        k = 0
        while k < len(y) and y[k] in B:
            k += 1
        return y[:k], index[y[k:]]

    def rule(y, a, state):
        x, i = split(y)
        t = T[i]
        if not t and a in B:
            return h.phi(x, a)
        if t + (a,) in index or (t and t[-1] == inv(a)):
            return (a,)
        nf_h, j = u[(i, a)]
        return invert(t, A) + nf_h + T[j]

    bound = max([h.bound, 1] + [len(T[i]) + len(w) + len(T[j]) for (i, _), (w, j) in u.items()])
    recipe = {"combinator": "finite_index_compose", "subgroup": h.name,
              "transversal": [list(t) for t in T],
              "coset_action": [[i, a, list(u[(i, a)][0]), u[(i, a)][1]] for (i, a) in sorted(u, key=lambda k: (k[0], A.index(k[1])))]}
    stacking = Composed(rule, recipe, {"subgroup": h})
    base = AutostackableStructure(A, nf, stacking, bound, name=name)
    return RespectingStructure(base, list(B.letters))
