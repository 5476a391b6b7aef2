"""Closure constructions producing autostackable structures from smaller ones."""

from .coset import CosetAutomaticData, build_multiplier, coset_compose
from .extension import ConjugationCocycleRewriter, ExtensionSpec, extension_compose
from .finite_index import finite_index_compose
from .generators import extend_generators, split_respecting
from .gog import (BASE, Edge, GraphOfGroupsSpec, GogModel, compile_gog_graph, gog_compose,
                  gog_normal_forms)
from .rewriting import RewritingSystem, check_local_confluence, critical_pairs, from_rewriting_system

__all__ = [
    "BASE", "ConjugationCocycleRewriter", "CosetAutomaticData", "Edge", "ExtensionSpec",
    "GogModel", "GraphOfGroupsSpec", "RewritingSystem", "build_multiplier",
    "check_local_confluence", "compile_gog_graph", "coset_compose", "critical_pairs",
    "extend_generators", "extension_compose", "finite_index_compose", "from_rewriting_system",
    "gog_compose", "gog_normal_forms", "split_respecting",
]
