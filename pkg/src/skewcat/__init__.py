"""Executable combinatorics of left cancellative small categories and their skew products."""

from .category import (
    Category,
    CatFunctor,
    Cocycle,
    connected_components,
    is_left_cancellative,
    invertibles_and_equivalence,
    validate_category,
    validate_cocycle,
)
from .groups import FiniteGroup, FreeGroup, IntegerGroup, cyclic, dihedral, trivial
from .paths import Graph, PathCategory

__all__ = [
    "Category",
    "CatFunctor",
    "Cocycle",
    "FiniteGroup",
    "FreeGroup",
    "Graph",
    "IntegerGroup",
    "PathCategory",
    "connected_components",
    "cyclic",
    "dihedral",
    "invertibles_and_equivalence",
    "is_left_cancellative",
    "trivial",
    "validate_category",
    "validate_cocycle",
]
