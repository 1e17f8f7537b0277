"""Seeded random exterior elements (coefficients uniform in [-1, 1])."""

from __future__ import annotations

from itertools import combinations
from math import comb

import numpy as np

from .element import DecomposableMultivector, ExteriorElement, Variance, blade_to_mask

DEFAULT_SEED = 42


def rng_from(seed_or_rng=None) -> np.random.Generator:
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.default_rng(DEFAULT_SEED if seed_or_rng is None else seed_or_rng)


def random_element(rng, dim: int, grade: int, variance: Variance, nnz: int | None = None) -> ExteriorElement:
    """Random homogeneous element; dense unless ``nnz`` caps the blade count."""
    rng = rng_from(rng)
    total = comb(dim, grade)
    if nnz is None or nnz >= total:
        masks = [blade_to_mask(b) for b in combinations(range(dim), grade)]
    else:
        masks = set()
        while len(masks) < nnz:
            masks.add(blade_to_mask(sorted(rng.choice(dim, size=grade, replace=False).tolist())))
        masks = sorted(masks)
    coeffs = rng.uniform(-1.0, 1.0, size=len(masks))
    return ExteriorElement(dim, grade, variance, dict(zip(masks, coeffs.tolist())))


def random_vector(rng, dim: int) -> ExteriorElement:
    return random_element(rng, dim, 1, Variance.VECTOR)


def random_decomposable(rng, dim: int, grade: int) -> DecomposableMultivector:
    rng = rng_from(rng)
    return DecomposableMultivector([random_vector(rng, dim) for _ in range(grade)])
