"""Exception types shared across the package."""

from .automata import MalformedPadding
from .words import UnknownLetter


class AutostackError(Exception):
    """Base class for structure and construction failures."""


class NotANormalForm(AutostackError):
    def __init__(self, word):
        super().__init__(f"not a normal form: {' '.join(word) or 'ε'}")
        self.word = tuple(word)


class BoundViolation(AutostackError):
    def __init__(self, y, a, value, bound):
        super().__init__(
            f"stacking value for ({' '.join(y) or 'ε'}, {a}) has length {len(value)} > {bound}")
        self.y, self.a, self.value, self.bound = tuple(y), a, tuple(value), bound


class StepLimitExceeded(AutostackError):
    def __init__(self, limit, word=None):
        super().__init__(f"rewriting did not finish within {limit} steps")
        self.limit = limit
        self.word = word


class StuckRewrite(AutostackError):
    def __init__(self, y, a):
        super().__init__(f"stacking map fixes non-tree edge ({' '.join(y) or 'ε'}, {a})")
        self.y, self.a = tuple(y), a


class InconsistentGraph(AutostackError):
    def __init__(self, triple):
        y, a, u = triple
        super().__init__(f"graph automaton disagrees with stacking map at ({y}, {a}, {u})")
        self.triple = triple


class FactorizationMismatch(AutostackError):
    pass


class SpecInvariantViolation(AutostackError):
    pass


class ConstructionError(AutostackError):
    pass


class NotLocallyConfluent(ConstructionError):
    def __init__(self, overlap, left, right):
        super().__init__(
            f"critical pair from {' '.join(overlap)} does not resolve: "
            f"{' '.join(left) or 'ε'} vs {' '.join(right) or 'ε'}")
        self.overlap, self.left, self.right = tuple(overlap), tuple(left), tuple(right)


class NoApplicableRule(ConstructionError):
    pass


class BadRepresentative(ConstructionError):
    pass


class UnknownVertex(SpecInvariantViolation, KeyError):
    def __str__(self):
        return f"unknown vertex {self.args[0]!r}"


class ComponentNotPrefixClosed(SpecInvariantViolation):
    pass


class DeflationNotInjective(SpecInvariantViolation):
    def __init__(self, first, second):
        super().__init__(f"deflation identifies {' '.join(first)} and {' '.join(second)}")
        self.first, self.second = tuple(first), tuple(second)


class KRewriterFailure(ConstructionError):
    pass


class InconsistentCosetTable(ConstructionError):
    pass


class NonPrefixClosedTransversal(ConstructionError):
    pass


class OracleInconsistent(ConstructionError):
    pass


class OutOfBall(AutostackError):
    pass


class DeadMultiplierState(ConstructionError):
    pass


class BallTooSmall(ConstructionError):
    pass


class BallLimitExceeded(AutostackError):
    pass


__all__ = [
    "AutostackError", "BadRepresentative", "BallLimitExceeded", "BallTooSmall", "BoundViolation",
    "ComponentNotPrefixClosed", "ConstructionError", "DeadMultiplierState",
    "DeflationNotInjective", "FactorizationMismatch", "InconsistentCosetTable",
    "InconsistentGraph", "KRewriterFailure", "MalformedPadding", "NoApplicableRule",
    "NonPrefixClosedTransversal", "NotANormalForm", "NotLocallyConfluent", "OracleInconsistent",
    "OutOfBall", "SpecInvariantViolation", "StepLimitExceeded", "StuckRewrite", "UnknownLetter",
    "UnknownVertex",
]
