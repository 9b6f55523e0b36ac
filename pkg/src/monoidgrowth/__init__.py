"""Exact growth series and growth partition functions for finitely
generated cancellative homogeneous monoids.

The package enumerates Cayley-graph balls by congruence closure, counts
configuration embeddings, performs the kabi base change into the phi
basis, computes exact rational growth and partition series, and, for
Artin monoids of finite type, evaluates the limit partition function at
the smallest root of the denominator polynomial.
"""

from monoidgrowth.presentation import (
    INFINITY,
    CoxeterMatrix,
    Presentation,
    artin_presentation,
    free_group_presentation,
    free_monoid_presentation,
    validate_presentation,
)
from monoidgrowth.words import ElementStore, build_store

__all__ = [
    "INFINITY",
    "CoxeterMatrix",
    "Presentation",
    "artin_presentation",
    "free_group_presentation",
    "free_monoid_presentation",
    "validate_presentation",
    "ElementStore",
    "build_store",
]
