"""Alphabets with formal inverses and words over them.

A word is a plain tuple of letter names.  Inverse pairing lives on the
:class:`Alphabet`, which also fixes the letter order used for shortlex
enumeration.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

Word = tuple  # tuple[str, ...]

INVERSE_SUFFIX = "^-1"
EMPTY: Word = ()


class UnknownLetter(KeyError):
    """A letter was used outside the alphabet it was checked against."""

    def __init__(self, letter, where=""):
        super().__init__(letter)
        self.letter = letter
        self.where = where

    def __str__(self):
        suffix = f" in {self.where}" if self.where else ""
        return f"unknown letter {self.letter!r}{suffix}"


def default_inverse(name: str) -> str:
    if name.endswith(INVERSE_SUFFIX):
        return name[: -len(INVERSE_SUFFIX)]
    return name + INVERSE_SUFFIX


class Alphabet:
    """Ordered, inverse-closed set of letter names.

    ``inverses`` maps each name to its formal inverse; when omitted the
    ``x`` / ``x^-1`` convention is used and missing partners are appended
    right after their letter.
    """

    __slots__ = ("letters", "_inv", "_index")

    def __init__(self, letters: Iterable[str], inverses: Mapping[str, str] | None = None):
        order: list[str] = []
        inv: dict[str, str] = {}
        for name in letters:
            if not isinstance(name, str) or not name or name.isspace():
                raise ValueError(f"bad letter name {name!r}")
            if name in inv:
                continue
            partner = inverses[name] if inverses and name in inverses else default_inverse(name)
            order.append(name)
            inv[name] = partner
            if partner not in inv:
                order.append(partner)
                inv[partner] = name
            elif inv[partner] != name:
                raise ValueError(f"inconsistent inverse for {name!r}")
        if inverses:
            for name, partner in inverses.items():
                if inv.get(name, partner) != partner:
                    raise ValueError(f"inverse of {name!r} declared twice")
        self.letters = tuple(order)
        self._inv = inv
        self._index = {a: i for i, a in enumerate(order)}

    @classmethod
    def from_generators(cls, gens: Iterable[str]) -> "Alphabet":
        """``["a", "b"]`` gives the alphabet ``a, a^-1, b, b^-1``."""
        return cls(gens)

    def inverse(self, letter: str) -> str:
        try:
            return self._inv[letter]
        except KeyError:
            raise UnknownLetter(letter, "alphabet") from None

    def index(self, letter: str) -> int:
        try:
            return self._index[letter]
        except KeyError:
            raise UnknownLetter(letter, "alphabet") from None

    def __contains__(self, letter) -> bool:
        return letter in self._inv

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.letters == other.letters and self._inv == other._inv

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return f"Alphabet({list(self.letters)!r})"

    def inverse_map(self) -> dict[str, str]:
        return dict(self._inv)

    def union(self, *others: "Alphabet") -> "Alphabet":
        inv = dict(self._inv)
        order = list(self.letters)
        for other in others:
            for a in other.letters:
                if a in inv:
                    if inv[a] != other._inv[a]:
                        raise ValueError(f"letter {a!r} has conflicting inverses")
                    continue
                order.append(a)
                inv[a] = other._inv[a]
        return Alphabet(order, inv)

    def sub(self, letters: Iterable[str]) -> "Alphabet":
        """Sub-alphabet on ``letters`` (closed under inverses), keeping this order."""
        keep = set()
        for a in letters:
            keep.add(a)
            keep.add(self.inverse(a))
        return Alphabet([a for a in self.letters if a in keep], self._inv)

    def tagged(self, tag: str) -> "Alphabet":
        """Disjoint copy with every name prefixed by ``tag.``."""
        inv = {f"{tag}.{a}": f"{tag}.{b}" for a, b in self._inv.items()}
        return Alphabet([f"{tag}.{a}" for a in self.letters], inv)

    def to_json(self):
        return {"letters": list(self.letters), "inverses": dict(self._inv)}

    @classmethod
    def from_json(cls, data) -> "Alphabet":
        if isinstance(data, list):
            return cls(data)
        return cls(data["letters"], data.get("inverses"))


def word(text_or_seq) -> Word:
    """Coerce ``"a b^-1"`` or any sequence of names to a word tuple."""
    if isinstance(text_or_seq, str):
        return tuple(text_or_seq.split())
    return tuple(text_or_seq)


def format_word(w: Sequence[str]) -> str:
    return " ".join(w) if w else "ε"


def check_letters(w: Sequence[str], alphabet: Alphabet, where="word") -> None:
    for a in w:
        if a not in alphabet:
            raise UnknownLetter(a, where)


def free_reduce(w: Sequence[str], alphabet: Alphabet) -> Word:
    stack: list[str] = []
    inv = alphabet._inv
    for a in w:
        if stack and inv[a] == stack[-1]:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


def is_freely_reduced(w: Sequence[str], alphabet: Alphabet) -> bool:
    inv = alphabet._inv
    return all(inv[w[i]] != w[i + 1] for i in range(len(w) - 1))


def invert(w: Sequence[str], alphabet: Alphabet) -> Word:
    inv = alphabet._inv
    return tuple(inv[a] for a in reversed(w))


def prefix(w: Sequence[str], i: int) -> Word:
    return tuple(w[:i])


def suffix_from(w: Sequence[str], i: int) -> Word:
    """The word ``w`` with its first ``i`` letters removed (empty if ``i >= len(w)``)."""
    return tuple(w[i:])


def shortlex_key(w: Sequence[str], alphabet: Alphabet):
    return (len(w), tuple(alphabet.index(a) for a in w))
