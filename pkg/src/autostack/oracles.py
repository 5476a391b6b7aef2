"""Independent models of the example groups, used only to check structures.

An oracle sends each letter to a concrete group element (an integer
vector, an integer matrix, a reduced syllable word, ...) and multiplies
exactly.  Keys are hashable tuples so elements can index dictionaries.
"""

from __future__ import annotations

from typing import Callable, Hashable, Mapping, Sequence

from .errors import BallLimitExceeded
from .words import Alphabet, UnknownLetter

Key = Hashable


class ElementOracle:
    """Words to canonical element keys via a right action of letters on keys."""

    def __init__(self, name: str, alphabet: Alphabet, identity: Key,
                 images: Mapping[str, object], act: Callable[[Key, object], Key]):
        self.name = name
        self.alphabet = alphabet
        self.identity = identity
        self.images = dict(images)
        self._act = act
        missing = [a for a in alphabet if a not in self.images]
        if missing:
            raise ValueError(f"oracle {name!r} has no image for {missing}")

    def multiply(self, key: Key, letter: str) -> Key:
        try:
            image = self.images[letter]
        except KeyError:
            raise UnknownLetter(letter, f"oracle {self.name}") from None
        return self._act(key, image)

    def eval(self, w: Sequence[str], start: Key | None = None) -> Key:
        key = self.identity if start is None else start
        for a in w:
            key = self.multiply(key, a)
        return key

    def is_identity(self, w: Sequence[str]) -> bool:
        return self.eval(w) == self.identity

    def equal(self, u: Sequence[str], v: Sequence[str]) -> bool:
        return self.eval(u) == self.eval(v)

    def relabel(self, mapping: Mapping[str, str], alphabet: Alphabet, name: str | None = None):
        """Same group, letters renamed (``mapping[new] = old`` or an old-letter word)."""
        images = {}
        for new in alphabet:
            old = mapping.get(new, new)
            if isinstance(old, str):
                images[new] = ("word", (old,))
            else:
                images[new] = ("word", tuple(old))
        inner = self

        def act(key, image):
            for a in image[1]:
                key = inner.multiply(key, a)
            return key

        return ElementOracle(name or self.name, alphabet, self.identity, images, act)

    def __repr__(self):
        return f"<ElementOracle {self.name}>"


# -- families -------------------------------------------------------------------

def vector_oracle(alphabet: Alphabet, images: Mapping[str, Sequence[int]], name="Zn") -> ElementOracle:
    dim = len(next(iter(images.values())))

    def act(key, v):
        return tuple(x + y for x, y in zip(key, v))

    return ElementOracle(name, alphabet, (0,) * dim, {a: tuple(v) for a, v in images.items()}, act)


def zn_oracle(n: int, gens: Sequence[str] | None = None) -> ElementOracle:
    gens = list(gens) if gens else [chr(ord("a") + i) for i in range(n)]
    alphabet = Alphabet.from_generators(gens)
    images = {}
    for i, g in enumerate(gens):
        e = [0] * n
        e[i] = 1
        images[g] = tuple(e)
        images[alphabet.inverse(g)] = tuple(-x for x in e)
    return vector_oracle(alphabet, images, f"Z{n}")


def cyclic_product_oracle(alphabet: Alphabet, images: Mapping[str, tuple[str, int]],
                          orders: Mapping[str, int], name="free") -> ElementOracle:
    """Free product of cyclic groups: keys are reduced syllable tuples ``((gen, exp), ...)``.

    ``orders[gen] == 0`` means infinite cyclic; finite exponents are kept in ``1..n-1``.
    """

    def norm(g, e):
        n = orders[g]
        return e % n if n else e

    def act(key, image):
        g, e = image
        if key and key[-1][0] == g:
            total = norm(g, key[-1][1] + e)
            return key[:-1] + ((g, total),) if total else key[:-1]
        e = norm(g, e)
        return key + ((g, e),) if e else key

    return ElementOracle(name, alphabet, (), dict(images), act)


def free_oracle(gens: Sequence[str], alphabet: Alphabet | None = None) -> ElementOracle:
    alphabet = alphabet or Alphabet.from_generators(gens)
    images = {}
    for g in gens:
        images[g] = (g, 1)
        images[alphabet.inverse(g)] = (g, -1)
    return cyclic_product_oracle(alphabet, images, {g: 0 for g in gens}, f"F{len(gens)}")


def _matmul(p, q):
    n, m, k = len(p), len(q), len(q[0])
    return tuple(tuple(sum(p[i][t] * q[t][j] for t in range(m)) for j in range(k)) for i in range(n))


def _identity(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _inverse_unimodular(m):
    """Exact inverse of an integer matrix with determinant ±1 (adjugate formula)."""
    from fractions import Fraction
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    out = tuple(tuple(int(x) for x in row[n:]) for row in a)
    if any(x.denominator != 1 for row in a for x in row[n:]):
        raise ValueError("matrix is not invertible over the integers")
    return out


def matrix_oracle(alphabet: Alphabet, generators: Mapping[str, Sequence[Sequence[int]]],
                  name="matrix", projective: bool = False) -> ElementOracle:
    """Integer matrix group; inverse letters get exact inverse matrices.

    ``projective`` identifies ``M`` with ``-M`` (sign of the first nonzero
    entry made positive), as in PSL(2, Z).
    """
    images = {}
    for g, m in generators.items():
        m = tuple(tuple(int(x) for x in row) for row in m)
        images[g] = m
        inv = alphabet.inverse(g)
        if inv not in generators:
            images[inv] = _inverse_unimodular(m)
    n = len(next(iter(images.values())))

    def canon(m):
        if projective:
            first = next(x for row in m for x in row if x)
            if first < 0:
                return tuple(tuple(-x for x in row) for row in m)
        return m

    def act(key, m):
        return canon(_matmul(key, m))

    return ElementOracle(name, alphabet, _identity(n), images, act)


def pair_oracle(first: ElementOracle, second: ElementOracle, name: str) -> ElementOracle:
    """Direct-product invariant: keys are pairs of the two oracles' keys."""
    if first.alphabet != second.alphabet:
        raise ValueError("paired oracles need the same alphabet")

    def act(key, letter):
        return (first.multiply(key[0], letter), second.multiply(key[1], letter))

    return ElementOracle(name, first.alphabet, (first.identity, second.identity),
                         {a: a for a in first.alphabet}, act)


def free_product_oracle(factors: Sequence[ElementOracle], name="free_product") -> ElementOracle:
    """Free product: keys are tuples of ``(factor index, nontrivial factor key)``."""
    owner = {}
    letters = []
    inverses = {}
    for i, o in enumerate(factors):
        for a in o.alphabet:
            if a in owner:
                raise ValueError(f"letter {a!r} occurs in two factors")
            owner[a] = i
            letters.append(a)
            inverses[a] = o.alphabet.inverse(a)
    alphabet = Alphabet(letters, inverses)

    def act(key, letter):
        i = owner[letter]
        o = factors[i]
        if key and key[-1][0] == i:
            k = o.multiply(key[-1][1], letter)
            return key[:-1] + ((i, k),) if k != o.identity else key[:-1]
        k = o.multiply(o.identity, letter)
        return key + ((i, k),) if k != o.identity else key

    return ElementOracle(name, alphabet, (), {a: a for a in letters}, act)


# -- specific groups ---------------------------------------------------------------

def heisenberg_oracle(alphabet: Alphabet | None = None) -> ElementOracle:
    alphabet = alphabet or Alphabet.from_generators(["c", "a", "b"])
    gens = {"a": [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
            "b": [[1, 0, 0], [0, 1, 1], [0, 0, 1]],
            "c": [[1, 0, 1], [0, 1, 0], [0, 0, 1]]}
    return matrix_oracle(alphabet, {g: m for g, m in gens.items() if g in alphabet}, "heisenberg")


SOL_M = ((2, 1), (1, 1))


def sol_oracle(alphabet: Alphabet | None = None) -> ElementOracle:
    """Z² ⋊_M Z as 3×3 affine matrices: x, y translate, t acts by M."""
    alphabet = alphabet or Alphabet.from_generators(["x", "y", "t"])
    (p, q), (r, s) = SOL_M
    gens = {"x": [[1, 0, 1], [0, 1, 0], [0, 0, 1]],
            "y": [[1, 0, 0], [0, 1, 1], [0, 0, 1]],
            "t": [[p, q, 0], [r, s, 0], [0, 0, 1]]}
    return matrix_oracle(alphabet, {g: m for g, m in gens.items() if g in alphabet}, "sol")


def klein_oracle(alphabet: Alphabet | None = None, a="a", b="b") -> ElementOracle:
    """Klein bottle group ⟨a, b | b a b⁻¹ = a⁻¹⟩ acting on Z²: a(x,y)=(x,y+1), b(x,y)=(x+1,-y)."""
    alphabet = alphabet or Alphabet.from_generators([a, b])
    gens = {a: [[1, 0, 0], [0, 1, 1], [0, 0, 1]],
            b: [[1, 0, 1], [0, -1, 0], [0, 0, 1]]}
    return matrix_oracle(alphabet, gens, "klein")


def dihedral_oracle(alphabet: Alphabet | None = None) -> ElementOracle:
    """Infinite dihedral group acting on Z: a(n) = n+1, b(n) = -n."""
    alphabet = alphabet or Alphabet(["a", "a^-1", "b", "b^-1"])
    gens = {"a": [[1, 1], [0, 1]], "a^-1": [[1, -1], [0, 1]],
            "b": [[-1, 0], [0, 1]], "b^-1": [[-1, 0], [0, 1]]}
    return matrix_oracle(alphabet, gens, "dihedral")


def torus_knot_oracle(p: int, q: int, alphabet: Alphabet | None = None,
                      powers: Mapping[str, tuple[str, int]] | None = None) -> ElementOracle:
    """⟨x, y | x^p = y^q⟩ for p = 2: image in Z/2 * Z/q paired with the exponent sum.

    The quotient by the central element z = x^p is the free product of
    cyclic groups; the weighted exponent sum (x ↦ q, y ↦ p) sends z to pq,
    so the pair is a complete invariant.  For q = 3 the first component is
    PSL(2, Z) in disguise.  ``powers`` maps extra letters to powers of x or y.
    """
    gens = ["x", "y"]
    alphabet = alphabet or Alphabet.from_generators(gens)
    powers = dict(powers or {})
    for g in gens:
        powers.setdefault(g, (g, 1))
    full = {}
    for a, (g, e) in powers.items():
        full[a] = (g, e)
        full.setdefault(alphabet.inverse(a), (g, -e))
    free_part = cyclic_product_oracle(alphabet, full, {"x": p, "y": q}, "cyclic")
    weight = {"x": q, "y": p}
    sums = vector_oracle(alphabet, {a: (weight[g] * e,) for a, (g, e) in full.items()}, "exp")
    return pair_oracle(free_part, sums, f"torus({p},{q})")


def trefoil_matrix_oracle(alphabet: Alphabet | None = None,
                          powers: Mapping[str, tuple[str, int]] | None = None) -> ElementOracle:
    """Trefoil ⟨x, y | x² = y³⟩ via PSL(2, Z) (x ↦ S, y ↦ U) paired with the exponent sum."""
    alphabet = alphabet or Alphabet.from_generators(["x", "y"])
    powers = dict(powers or {})
    powers.setdefault("x", ("x", 1))
    powers.setdefault("y", ("y", 1))
    S = ((0, -1), (1, 0))
    U = ((0, -1), (1, 1))
    base = {"x": S, "y": U}
    gens = {}
    for a, (g, e) in powers.items():
        m = _identity(2)
        step = base[g] if e > 0 else _inverse_unimodular(base[g])
        for _ in range(abs(e)):
            m = _matmul(m, step)
        gens[a] = m
    psl = matrix_oracle(alphabet, gens, "psl", projective=True)
    weight = {"x": 3, "y": 2}
    images = {}
    for a, (g, e) in powers.items():
        images[a] = (weight[g] * e,)
        images[alphabet.inverse(a)] = (-weight[g] * e,)
    return pair_oracle(psl, vector_oracle(alphabet, images, "exp"), "trefoil")


# -- balls ----------------------------------------------------------------------

BALL_LIMIT = 200_000


def ball_enumerate(o: ElementOracle, alphabet: Alphabet | Sequence[str] | None, r: int,
                   limit: int = BALL_LIMIT) -> dict:
    """Elements within distance ``r`` of the identity, each with its shortlex-least word."""
    letters = tuple(alphabet) if alphabet is not None else o.alphabet.letters
    ball = {o.identity: ()}
    layer = [o.identity]
    for _ in range(r):
        nxt = []
        for key in layer:
            w = ball[key]
            for a in letters:
                k = o.multiply(key, a)
                if k not in ball:
                    ball[k] = w + (a,)
                    nxt.append(k)
                    if len(ball) > limit:
                        raise BallLimitExceeded(f"ball of radius {r} exceeds {limit} elements")
        layer = nxt
    return ball


def distance_table(o: ElementOracle, alphabet, r: int, limit: int = BALL_LIMIT) -> dict:
    """Element key → word length, for all elements of the radius-``r`` ball."""
    return {k: len(w) for k, w in ball_enumerate(o, alphabet, r, limit).items()}


def builtin_oracles() -> dict[str, Callable[[], ElementOracle]]:
    """Catalog of oracle factories by name."""
    return {
        "Z2": lambda: zn_oracle(2),
        "Z3": lambda: zn_oracle(3),
        "F2": lambda: free_oracle(["a", "b"]),
        "heisenberg": heisenberg_oracle,
        "sol": sol_oracle,
        "klein": klein_oracle,
        "dihedral": dihedral_oracle,
        "trefoil": trefoil_matrix_oracle,
        "torus(2,5)": lambda: torus_knot_oracle(2, 5),
    }
