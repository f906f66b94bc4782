"""Finite semigroups, adequate transversals and spined products."""
from .core import FiniteSemigroup, validate
from .families import generate
from .transversal import TransversalAnalysis, analyze_transversal
from .construction import build_spined_product, chen_construct, decompose_and_rebuild, extract_star
from .search import search_transversals
from .verify import run_verification_suite
from .docio import parse, serialize

__all__ = [
    "FiniteSemigroup", "validate", "generate", "TransversalAnalysis", "analyze_transversal",
    "build_spined_product", "chen_construct", "decompose_and_rebuild", "extract_star",
    "search_transversals", "run_verification_suite", "parse", "serialize",
]
