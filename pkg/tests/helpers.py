"""Shared test utilities: random words and solver-versus-oracle comparison."""

from __future__ import annotations

import random

from autostack.words import invert


def random_word(rng: random.Random, letters, max_len: int, min_len: int = 0) -> tuple:
    n = rng.randint(min_len, max_len)
    return tuple(rng.choice(letters) for _ in range(n))


def random_conjugate_product(rng, alphabet, relators, max_len: int, conj_len: int = 5) -> tuple:
    """Product of conjugates w·r^±1·w⁻¹ of relators, total length at most ``max_len``."""
    letters = alphabet.letters
    out: tuple = ()
    for _ in range(50):
        r = rng.choice(relators)
        if rng.random() < 0.5:
            r = invert(r, alphabet)
        w = random_word(rng, letters, conj_len)
        piece = w + tuple(r) + invert(w, alphabet)
        if len(out) + len(piece) > max_len:
            if out:
                break
            continue
        out += piece
    return out


def solver_mismatches(s, oracle, words) -> list:
    """Words whose normal form is wrong: not in Nf, a different element, or not unique.

    Uniqueness is checked across the whole sample: two words for one element
    must share a normal form.
    """
    bad = []
    seen: dict = {}
    for w in words:
        nf = s.normal_form(w)
        key = oracle.eval(w)
        if not s.is_normal_form(nf):
            bad.append((w, nf, "not a normal form"))
        elif oracle.eval(nf) != key:
            bad.append((w, nf, "different element"))
        elif seen.setdefault(key, nf) != nf:
            bad.append((w, nf, f"second normal form, first was {seen[key]}"))
    return bad
