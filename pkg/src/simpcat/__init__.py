"""Desk-scale category theory and simplicial homotopy constructions.

Every construction here is finite and checked by exhaustive enumeration;
truncations and search budgets are always explicit, never silent.
"""

from .fincat import (
    FinCategory,
    Functor,
    InputError,
    NatTransformation,
    ReflexiveGraph,
    ResourceBudgetError,
    SimpcatError,
    WeakEquivalenceClass,
    check_closure_properties,
    free_category,
    groupoid_core,
    validate_category,
)

__all__ = [
    "FinCategory",
    "Functor",
    "InputError",
    "NatTransformation",
    "ReflexiveGraph",
    "ResourceBudgetError",
    "SimpcatError",
    "WeakEquivalenceClass",
    "check_closure_properties",
    "free_category",
    "groupoid_core",
    "validate_category",
]

__version__ = "0.1.0"
