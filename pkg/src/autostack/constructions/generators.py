"""Generator extension and the respecting-structure split."""

from __future__ import annotations

from typing import Iterable, Sequence

from ..automata import Fsa
from ..errors import BadRepresentative
from ..stacking import (AutostackableStructure, Composed, RespectingStructure, split_languages,
                        verify_split)
from ..words import Alphabet, Word, check_letters, invert


def extend_generators(s, extra: Sequence[tuple[str, Sequence[str]]], inverses: dict | None = None,
                      subgroup: Iterable[str] | None = None):
    """Add letters standing for group elements given by their normal forms.

    Normal forms are unchanged and every edge labelled by a new letter flows
    to the normal form of that letter.  Inverses of new letters default to
    the ``x^-1`` naming and get the normal form of the inverted word.  For a
    respecting structure a new letter joins the subgroup alphabet when its
    normal form is a subgroup word (or when listed in ``subgroup``).
    """
    base = s.base if isinstance(s, RespectingStructure) else s
    old = base.alphabet
    inverses = dict(inverses or {})
    new_names = []
    for letter, _ in extra:
        if letter in old:
            raise BadRepresentative(f"letter {letter!r} already belongs to the alphabet")
        new_names.append(letter)
    alphabet = old.union(Alphabet(new_names, inverses))
    values: dict[str, Word] = {}
    for letter, w in extra:
        w = tuple(w)
        check_letters(w, old, "representative")
        if not w:
            raise BadRepresentative(f"letter {letter!r} would represent the identity")
        if not base.nf.accepts(w):
            raise BadRepresentative(f"representative of {letter!r} is not a normal form")
        values[letter] = w
    for letter in list(values):
        partner = alphabet.inverse(letter)
        if partner not in values:
            values[partner] = base.normal_form(invert(values[letter], old))
            if not values[partner]:
                raise BadRepresentative(f"letter {partner!r} would represent the identity")
    nf = base.nf.over(alphabet.letters)
    inner = base.stacking

    def rule(y, a, state):
        if a in values:
            return values[a]
        return inner.evaluate(base, y, state, a)

    bound = max([base.bound] + [len(w) for w in values.values()])
    recipe = {"combinator": "extend_generators", "base": base.name,
              "extra": [[a, list(w)] for a, w in values.items()]}
    stacking = Composed(rule, recipe, {"base": base})
    out = AutostackableStructure(alphabet, nf, stacking, bound, name=base.name, check=False)
    if not isinstance(s, RespectingStructure):
        return out
    B = set(s.subgroup_alphabet.letters)
    chosen = set(subgroup) if subgroup is not None else {a for a, w in values.items() if set(w) <= B}
    for a in list(chosen):
        chosen.add(alphabet.inverse(a))
    return RespectingStructure(out, sorted(B | chosen, key=alphabet.index))


def split_respecting(r: RespectingStructure) -> tuple[Fsa, Fsa]:
    """Recompute (Nf_H, Nf_Tr) from Nf and check them against the declared ones."""
    verify_split(r)
    return split_languages(r.base.nf, r.subgroup_alphabet.letters)
