"""Sparse graded exterior elements at a point of a coordinate chart."""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Mapping, Sequence

from . import kernels

MAX_DIM = 62


class Variance(str, Enum):
    VECTOR = "vector"  # contravariant: multivectors
    FORM = "form"  # covariant: differential forms


class ExteriorError(ValueError):
    pass


def blade_to_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def mask_to_blade(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def _normalize_blade(indices: Sequence[int]) -> tuple[int, float]:
    """Return ``(mask, sign)`` of an arbitrary index tuple, sign 0 on repeats."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, 0.0
    sign = 1.0
    # insertion sort, counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return blade_to_mask(idx), sign


class ExteriorElement:
    """Homogeneous element of the exterior algebra of a ``dim``-dimensional chart.

    Stored as a canonical sparse map from blade to coefficient: blades are
    strictly increasing index tuples (held internally as bitmasks) and zero
    coefficients are never stored.  Instances are immutable.
    """

    __slots__ = ("dim", "grade", "variance", "_terms")
    # numpy scalars defer to our reflected operators
    __array_ufunc__ = None

    def __init__(self, dim: int, grade: int, variance: Variance, terms: Mapping[int, float] | None = None):
        if not 0 < dim <= MAX_DIM:
            raise ExteriorError(f"chart dimension must be in 1..{MAX_DIM}, got {dim}")
        if not 0 <= grade <= dim:
            raise ExteriorError(f"grade {grade} outside 0..{dim}")
        terms = dict(terms or {})
        limit = 1 << dim
        for mask, c in terms.items():
            if mask >= limit or mask.bit_count() != grade:
                raise ExteriorError(f"blade {mask_to_blade(mask)} incompatible with grade {grade}, dim {dim}")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "grade", grade)
        object.__setattr__(self, "variance", Variance(variance))
        object.__setattr__(self, "_terms", {k: float(terms[k]) for k in sorted(terms) if terms[k] != 0.0})

    def __setattr__(self, name, value):
        raise AttributeError("ExteriorElement is immutable")

    # ----------------------------------------------------------------- builders
    @classmethod
    def from_blades(cls, dim: int, variance: Variance, coeffs: Mapping[Sequence[int], float], grade: int | None = None):
        """Build from ``{index tuple: coefficient}``; unsorted tuples are
        reordered with the permutation sign, repeated indices dropped."""
        terms: dict[int, float] = {}
        for blade, c in coeffs.items():
            blade = tuple(blade)
            if grade is None:
                grade = len(blade)
            elif len(blade) != grade:
                raise ExteriorError("mixed grades in from_blades")
            if any(i < 0 or i >= dim for i in blade):
                raise ExteriorError(f"index out of range in blade {blade} for dim {dim}")
            mask, sign = _normalize_blade(blade)
            if sign:
                terms[mask] = terms.get(mask, 0.0) + sign * float(c)
        return cls(dim, 0 if grade is None else grade, variance, terms)

    @classmethod
    def basis(cls, dim: int, indices: Sequence[int], variance: Variance, coeff: float = 1.0):
        return cls.from_blades(dim, variance, {tuple(indices): coeff}, grade=len(indices))

    @classmethod
    def scalar(cls, dim: int, value: float, variance: Variance = Variance.FORM):
        return cls(dim, 0, variance, {0: value})

    @classmethod
    def zero(cls, dim: int, grade: int, variance: Variance):
        return cls(dim, grade, variance, {})

    @classmethod
    def vector(cls, components: Sequence[float]):
        """Grade-1 multivector from a dense component list."""
        return cls(len(components), 1, Variance.VECTOR, {1 << i: c for i, c in enumerate(components)})

    @classmethod
    def covector(cls, components: Sequence[float]):
        """Grade-1 form from a dense component list."""
        return cls(len(components), 1, Variance.FORM, {1 << i: c for i, c in enumerate(components)})

    # --------------------------------------------------------------- accessors
    @property
    def terms(self) -> dict[int, float]:
        return dict(self._terms)

    @property
    def coeffs(self) -> dict[tuple[int, ...], float]:
        """Blade tuple to coefficient, blades in lexicographic order."""
        return {b: c for b, c in sorted((mask_to_blade(m), c) for m, c in self._terms.items())}

    def coeff(self, blade: Sequence[int]) -> float:
        mask, sign = _normalize_blade(tuple(blade))
        if not sign:
            return 0.0
        return sign * self._terms.get(mask, 0.0)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def norm_inf(self) -> float:
        return max((abs(c) for c in self._terms.values()), default=0.0)

    def to_scalar(self) -> float:
        if self.grade != 0:
            raise ExteriorError("to_scalar on non-scalar element")
        return self._terms.get(0, 0.0)

    def dump(self) -> str:
        """One ``indices:coefficient`` line per blade, lexicographic order."""
        return "\n".join(f"{','.join(map(str, b))}:{c!r}" for b, c in self.coeffs.items())

    # -------------------------------------------------------------- arithmetic
    def _check_same(self, other: "ExteriorElement"):
        if not isinstance(other, ExteriorElement):
            raise TypeError(f"expected ExteriorElement, got {type(other).__name__}")
        if other.dim != self.dim or other.variance != self.variance:
            raise ExteriorError("dimension or variance mismatch")
        if other.grade != self.grade:
            raise ExteriorError(f"grade mismatch: {self.grade} vs {other.grade}")

    def __add__(self, other):
        self._check_same(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0.0) + c
        return ExteriorElement(self.dim, self.grade, self.variance, out)

    def __neg__(self):
        return ExteriorElement(self.dim, self.grade, self.variance, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scale):
        scale = float(scale)
        return ExteriorElement(self.dim, self.grade, self.variance, {k: scale * c for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        return (self.dim, self.grade, self.variance, self._terms) == (other.dim, other.grade, other.variance, other._terms)

    def __hash__(self):
        return hash((self.dim, self.grade, self.variance, tuple(self._terms.items())))

    def __repr__(self):
        kind = "Multivector" if self.variance is Variance.VECTOR else "Form"
        return f"{kind}(dim={self.dim}, grade={self.grade}, nnz={len(self._terms)})"


def distance_inf(a: ExteriorElement, b: ExteriorElement) -> float:
    """Max-norm of ``a - b``; elements of differing grade compare by their norms."""
    if a.grade != b.grade:
        return max(a.norm_inf(), b.norm_inf())
    return (a - b).norm_inf()


# ------------------------------------------------------------------ operations
def wedge(a: ExteriorElement, b: ExteriorElement) -> ExteriorElement:
    if a.dim != b.dim or a.variance != b.variance:
        raise ExteriorError("wedge: dimension or variance mismatch")
    grade = a.grade + b.grade
    if grade > a.dim:
        raise ExteriorError(f"wedge result grade {grade} exceeds chart dimension {a.dim}")
    return ExteriorElement(a.dim, grade, a.variance, kernels.wedge_terms(a._terms, b._terms))


def wedge_all(factors: Sequence[ExteriorElement]) -> ExteriorElement:
    if not factors:
        raise ExteriorError("wedge_all needs at least one factor")
    out = factors[0]
    for f in factors[1:]:
        out = wedge(out, f)
    return out


def evaluate(alpha: ExteriorElement, x: ExteriorElement) -> float:
    """Value of the form ``alpha`` on the multivector ``x`` (determinant
    convention, no ``1/k!``)."""
    if alpha.variance is not Variance.FORM or x.variance is not Variance.VECTOR:
        raise ExteriorError("evaluate expects (form, multivector)")
    if alpha.dim != x.dim or alpha.grade != x.grade:
        raise ExteriorError("evaluate: grade or dimension mismatch")
    return kernels.pair_terms(alpha._terms, x._terms)


def interior_left(x: ExteriorElement, alpha: ExteriorElement) -> ExteriorElement:
    """``x ⌟ alpha``: the (l-k)-form with ``(x ⌟ alpha)(x') = alpha(x ∧ x')``."""
    if x.variance is not Variance.VECTOR or alpha.variance is not Variance.FORM:
        raise ExteriorError("interior_left expects (multivector, form)")
    if x.dim != alpha.dim:
        raise ExteriorError("interior_left: dimension mismatch")
    if alpha.grade < x.grade:
        raise ExteriorError(f"interior_left: form grade {alpha.grade} < multivector grade {x.grade}")
    return ExteriorElement(x.dim, alpha.grade - x.grade, Variance.FORM, kernels.contract_terms(x._terms, alpha._terms))


def interior_right(x: ExteriorElement, beta: ExteriorElement) -> ExteriorElement:
    """``x ⨼ beta``: the (k-m)-multivector with ``(x ⨼ beta) ⌟ g = (beta ∧ g)(x)``."""
    if x.variance is not Variance.VECTOR or beta.variance is not Variance.FORM:
        raise ExteriorError("interior_right expects (multivector, form)")
    if x.dim != beta.dim:
        raise ExteriorError("interior_right: dimension mismatch")
    if beta.grade > x.grade:
        raise ExteriorError(f"interior_right: form grade {beta.grade} > multivector grade {x.grade}")
    return ExteriorElement(x.dim, x.grade - beta.grade, Variance.VECTOR, kernels.contract_terms(beta._terms, x._terms))


class DecomposableMultivector:
    """Ordered wedge product of grade-1 multivectors."""

    __slots__ = ("factors", "_product")

    def __init__(self, factors: Sequence[ExteriorElement]):
        factors = tuple(factors)
        if not factors:
            raise ExteriorError("a decomposable multivector needs at least one factor")
        dim = factors[0].dim
        for f in factors:
            if f.variance is not Variance.VECTOR or f.grade != 1 or f.dim != dim:
                raise ExteriorError("factors must be grade-1 multivectors of a common dimension")
        self.factors = factors
        self._product = None

    @property
    def dim(self) -> int:
        return self.factors[0].dim

    @property
    def grade(self) -> int:
        return len(self.factors)

    def expand(self) -> ExteriorElement:
        if self._product is None:
            self._product = wedge_all(self.factors)
        return self._product

    def without(self, *positions: int) -> "DecomposableMultivector | None":
        """Drop the factors at ``positions``; ``None`` when nothing remains."""
        kept = [f for i, f in enumerate(self.factors) if i not in positions]
        return DecomposableMultivector(kept) if kept else None


def interior_right_decomposable(x: DecomposableMultivector, alpha: ExteriorElement) -> ExteriorElement:
    """``x ⨼ alpha`` for a 1-form via the factor-deletion expansion
    ``sum_mu (-1)^mu <x_mu, alpha> x_hat_mu`` (0-based ``mu``)."""
    if alpha.variance is not Variance.FORM or alpha.grade != 1 or alpha.dim != x.dim:
        raise ExteriorError("interior_right_decomposable expects a 1-form of matching dimension")
    k = x.grade
    if k == 1:
        return ExteriorElement.scalar(x.dim, evaluate(alpha, x.factors[0]), Variance.VECTOR)
    out = ExteriorElement.zero(x.dim, k - 1, Variance.VECTOR)
    for mu, f in enumerate(x.factors):
        c = evaluate(alpha, f)
        if c == 0.0:
            continue
        sign = -1.0 if mu % 2 else 1.0
        out = out + (sign * c) * x.without(mu).expand()
    return out
