"""Pointwise graded exterior algebra: multivectors, forms, wedge and interior products."""

from . import kernels
from .element import (
    DecomposableMultivector,
    ExteriorElement,
    ExteriorError,
    Variance,
    blade_to_mask,
    distance_inf,
    evaluate,
    interior_left,
    interior_right,
    interior_right_decomposable,
    mask_to_blade,
    wedge,
    wedge_all,
)
from .sampling import random_decomposable, random_element, random_vector, rng_from

VECTOR = Variance.VECTOR
FORM = Variance.FORM

__all__ = [
    "DecomposableMultivector",
    "ExteriorElement",
    "ExteriorError",
    "FORM",
    "VECTOR",
    "Variance",
    "blade_to_mask",
    "distance_inf",
    "evaluate",
    "interior_left",
    "interior_right",
    "interior_right_decomposable",
    "kernels",
    "mask_to_blade",
    "random_decomposable",
    "random_element",
    "random_vector",
    "rng_from",
    "wedge",
    "wedge_all",
]
