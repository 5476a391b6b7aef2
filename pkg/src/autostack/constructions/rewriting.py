"""Structures from finite convergent rewriting systems."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .. import automata as fa
from ..automata import Fsa
from ..errors import NoApplicableRule, NotLocallyConfluent, StepLimitExceeded
from ..stacking import AutostackableStructure, RewritingDerived
from ..words import Alphabet, Word, check_letters

JOIN_LIMIT = 1000


@dataclass(frozen=True)
class RewritingSystem:
    """Monoid rewriting rules ``lhs -> rhs`` over an inverse-closed alphabet."""

    alphabet: Alphabet
    rules: tuple

    def __init__(self, alphabet: Alphabet, rules: Sequence[tuple[Sequence[str], Sequence[str]]]):
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "rules", tuple((tuple(l), tuple(r)) for l, r in rules))
        for lhs, rhs in self.rules:
            if not lhs:
                raise NoApplicableRule("a rule has an empty left side")
            check_letters(lhs, alphabet, "rule")
            check_letters(rhs, alphabet, "rule")

    def with_inverse_rules(self) -> "RewritingSystem":
        """Add ``x x^-1 -> ε`` for every letter where that word is still irreducible."""
        rules = list(self.rules)
        for x in self.alphabet:
            pair = (x, self.alphabet.inverse(x))
            if not any(_occurs(lhs, pair) for lhs, _ in rules):
                rules.append((pair, ()))
        return RewritingSystem(self.alphabet, rules)

    def rewrite_step(self, w: Word):
        """Rewrite the leftmost redex (shortest rule among those ending there); ``None`` if irreducible."""
        for end in range(1, len(w) + 1):
            best = None
            for i, (lhs, rhs) in enumerate(self.rules):
                k = len(lhs)
                if k <= end and w[end - k:end] == lhs and (best is None or k < len(self.rules[best][0])):
                    best = i
            if best is not None:
                lhs, rhs = self.rules[best]
                return w[:end - len(lhs)] + rhs + w[end:]
        return None

    def reduce(self, w: Sequence[str], limit: int = JOIN_LIMIT) -> Word:
        w = tuple(w)
        for _ in range(limit):
            nxt = self.rewrite_step(w)
            if nxt is None:
                return w
            w = nxt
        raise StepLimitExceeded(limit, w)

    def to_json(self):
        return {"alphabet": self.alphabet.to_json(),
                "rules": [[list(l), list(r)] for l, r in self.rules]}

    @classmethod
    def from_json(cls, data) -> "RewritingSystem":
        return cls(Alphabet.from_json(data["alphabet"]), data["rules"])


def _occurs(big: Word, small: Word) -> bool:
    k = len(small)
    return any(big[i:i + k] == small for i in range(len(big) - k + 1))


def critical_pairs(rs: RewritingSystem):
    """Yield ``(overlap word, first reduct, second reduct)`` for all rule overlaps."""
    rules = rs.rules
    for i, (l1, r1) in enumerate(rules):
        for j, (l2, r2) in enumerate(rules):
            # l2 strictly inside l1
            if i != j and len(l2) <= len(l1):
                for p in range(len(l1) - len(l2) + 1):
                    if l1[p:p + len(l2)] == l2:
                        yield l1, r1, l1[:p] + r2 + l1[p + len(l2):]
            # proper suffix of l1 equal to a proper prefix of l2
            for k in range(1, min(len(l1), len(l2))):
                if l1[len(l1) - k:] == l2[:k]:
                    overlap = l1 + l2[k:]
                    yield overlap, r1 + l2[k:], l1[:len(l1) - k] + r2


def check_local_confluence(rs: RewritingSystem, limit: int = JOIN_LIMIT) -> None:
    for overlap, left, right in critical_pairs(rs):
        a, b = rs.reduce(left, limit), rs.reduce(right, limit)
        if a != b:
            raise NotLocallyConfluent(overlap, a, b)


def irreducible_acceptor(rs: RewritingSystem) -> Fsa:
    """Acceptor of words containing no left side: complement of A*·{lhs}·A*."""
    letters = rs.alphabet.letters
    sigma = Fsa.universal(letters)
    redexes = Fsa.finite(letters, [l for l, _ in rs.rules])
    reducible = fa.concat_all(sigma, redexes, sigma)
    return fa.complement(reducible).minimize()


def from_rewriting_system(rs: RewritingSystem, check_confluence: bool = True,
                          name: str = "") -> AutostackableStructure:
    """Structure whose normal forms are the irreducible words of ``rs``.

    φ(y, a) = s⁻¹·rhs where ``s·a`` is the chosen left side ending ``y·a``.
    """
    rs = rs.with_inverse_rules()
    if check_confluence:
        check_local_confluence(rs)
    nf = irreducible_acceptor(rs)
    stacking = RewritingDerived(rs.alphabet, rs.rules)
    bound = max(1, stacking.max_length())
    return AutostackableStructure(rs.alphabet, nf, stacking, bound, name=name)
