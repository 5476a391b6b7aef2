"""Autostackable structures on finitely generated groups.

Finite-state normal forms plus bounded stacking functions solve the word
problem by iterated prefix rewriting.  Subpackage ``constructions`` builds
new structures from old ones; ``verify`` checks them against independent
element oracles.
"""

from .automata import Fsa
from .kernels import BACKEND
from .stacking import (AutostackableStructure, Composed, RespectingStructure, RewritingDerived,
                       StateTable)
from .words import Alphabet, format_word, word

__version__ = "0.1.0"

__all__ = ["Alphabet", "AutostackableStructure", "BACKEND", "Composed", "Fsa",
           "RespectingStructure", "RewritingDerived", "StateTable", "format_word", "word"]
