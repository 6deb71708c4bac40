"""Exact tools for intersecting and cross-intersecting set families."""
from .core import (
    DomainError,
    Family,
    PreconditionError,
    ResourceError,
    are_cross_intersecting,
    are_disjoint_families,
    binom,
    degree_profile,
    diversity,
    elements_of,
    enumerate_k_subsets,
    is_intersecting,
    mask_of,
)

__all__ = [
    "DomainError",
    "Family",
    "PreconditionError",
    "ResourceError",
    "are_cross_intersecting",
    "are_disjoint_families",
    "binom",
    "degree_profile",
    "diversity",
    "elements_of",
    "enumerate_k_subsets",
    "is_intersecting",
    "mask_of",
]
__version__ = "0.1.0"
