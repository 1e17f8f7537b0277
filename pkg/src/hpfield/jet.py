"""Coordinate data model for Y, J^1 Y, Z and the Pontryagin bundle M = J^1 Y x_Y Z.

M-chart coordinates are ordered ``(x^mu, y^A, v^A_mu, p, p_A^mu)`` with
``v`` and ``p_A^mu`` flattened as ``A * (n+1) + mu``.  Lagrangian callables
take ``x`` of shape ``(n+1, ...)``, ``y`` of shape ``(N, ...)`` and ``v`` of
shape ``(N, n+1, ...)`` and broadcast over the trailing grid axes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .exterior import ExteriorElement

Array = np.ndarray


class ChartError(ValueError):
    pass


@dataclass(frozen=True)
class ChartSpec:
    base_dim: int
    fiber_dim: int
    base_names: tuple[str, ...] = ()
    fiber_names: tuple[str, ...] = ()

    def __post_init__(self):
        if self.base_dim < 1 or self.fiber_dim < 1:
            raise ChartError("base_dim and fiber_dim must be >= 1")
        if not self.base_names:
            object.__setattr__(self, "base_names", tuple(f"x{m}" for m in range(self.base_dim)))
        if not self.fiber_names:
            object.__setattr__(self, "fiber_names", tuple(f"y{A}" for A in range(self.fiber_dim)))
        object.__setattr__(self, "base_names", tuple(self.base_names))
        object.__setattr__(self, "fiber_names", tuple(self.fiber_names))
        if len(self.base_names) != self.base_dim or len(self.fiber_names) != self.fiber_dim:
            raise ChartError("coordinate label count does not match the declared dimensions")
        labels = self.base_names + self.fiber_names
        if len(set(labels)) != len(labels):
            raise ChartError("coordinate labels must be unique")

    @property
    def n(self) -> int:
        return self.base_dim - 1

    @property
    def pontryagin_dim(self) -> int:
        b, N = self.base_dim, self.fiber_dim
        return b + N + N * b + 1 + N * b

    # M-chart index helpers
    def ix(self, mu: int) -> int:
        return mu

    def iy(self, A: int) -> int:
        return self.base_dim + A

    def iv(self, A: int, mu: int) -> int:
        return self.base_dim + self.fiber_dim + A * self.base_dim + mu

    @property
    def ip(self) -> int:
        return self.base_dim + self.fiber_dim * (1 + self.base_dim)

    def ipa(self, A: int, mu: int) -> int:
        return self.ip + 1 + A * self.base_dim + mu

    def coordinate_names(self) -> list[str]:
        b, f = self.base_names, self.fiber_names
        names = list(b) + list(f)
        names += [f"v_{a}_{m}" for a in f for m in b]
        names.append("p")
        names += [f"p_{a}^{m}" for a in f for m in b]
        return names


@dataclass
class PontryaginPoint:
    """One point ``(x^mu, y^A, v^A_mu, p, p_A^mu)``; ``pa[A, mu] = p_A^mu``."""

    x: Array
    y: Array
    v: Array
    p: float
    pa: Array

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.y = np.asarray(self.y, dtype=float)
        self.v = np.asarray(self.v, dtype=float)
        self.pa = np.asarray(self.pa, dtype=float)
        self.p = float(self.p)

    def check(self, chart: ChartSpec):
        b, N = chart.base_dim, chart.fiber_dim
        if self.x.shape != (b,) or self.y.shape != (N,) or self.v.shape != (N, b) or self.pa.shape != (N, b):
            raise ChartError("PontryaginPoint shapes do not match the chart")
        return self

    def to_vector(self) -> Array:
        return np.concatenate([self.x, self.y, self.v.ravel(), [self.p], self.pa.ravel()])

    @classmethod
    def from_vector(cls, chart: ChartSpec, z: Sequence[float]) -> "PontryaginPoint":
        z = np.asarray(z, dtype=float)
        if z.shape != (chart.pontryagin_dim,):
            raise ChartError("coordinate vector length does not match the chart")
        b, N = chart.base_dim, chart.fiber_dim
        v0 = b + N
        return cls(
            x=z[:b],
            y=z[b:v0],
            v=z[v0 : v0 + N * b].reshape(N, b),
            p=z[chart.ip],
            pa=z[chart.ip + 1 :].reshape(N, b),
        )


@dataclass
class AffineConstraint:
    """Rows ``A^alpha_i(t, q) v^i + B^alpha(t, q) = 0`` (mechanics charts, n = 0)."""

    A: Callable[[float, Array], Array]
    B: Callable[[float, Array], Array]

    def violation(self, t, q, v) -> Array:
        return np.asarray(self.A(t, q)) @ np.asarray(v) + np.asarray(self.B(t, q))


@dataclass
class LagrangianModel:
    chart: ChartSpec
    L: Callable
    dL_dx: Callable
    dL_dy: Callable
    dL_dv: Callable
    name: str = "custom"
    constraint: AffineConstraint | None = None
    boundary: object | None = None
    # f(y) in the eliminated hyperbolic form y_tt = laplacian(y) + f(y), when one exists
    hyperbolic_source: Callable | None = None
    params: dict = field(default_factory=dict)


# ------------------------------------------------------------------- operations
def legendre_transform(model: LagrangianModel, x, y, v):
    """Covariant Legendre map: ``p_A^mu = dL/dv^A_mu``, ``p = L - p_A^mu v^A_mu``."""
    x, y, v = (np.asarray(a, dtype=float) for a in (x, y, v))
    pa = np.asarray(model.dL_dv(x, y, v), dtype=float)
    p = model.L(x, y, v) - np.einsum("am...,am...->...", pa, v)
    return pa, p


def affine_momentum(model: LagrangianModel, x, y, v, pa):
    """The ``p`` solving the generalized energy constraint ``E = 0``."""
    return model.L(x, y, v) - np.einsum("am...,am...->...", np.asarray(pa), np.asarray(v))


def generalized_energy(model: LagrangianModel, pt: PontryaginPoint) -> float:
    return float(pt.p + np.sum(pt.pa * pt.v) - model.L(pt.x, pt.y, pt.v))


def d_generalized_energy(model: LagrangianModel, pt: PontryaginPoint) -> ExteriorElement:
    """``dE`` as a 1-form on the M-chart."""
    chart = model.chart
    b, N = chart.base_dim, chart.fiber_dim
    comp = np.zeros(chart.pontryagin_dim)
    comp[:b] = -np.asarray(model.dL_dx(pt.x, pt.y, pt.v))
    comp[b : b + N] = -np.asarray(model.dL_dy(pt.x, pt.y, pt.v))
    comp[b + N : b + N + N * b] = (pt.pa - np.asarray(model.dL_dv(pt.x, pt.y, pt.v))).ravel()
    comp[chart.ip] = 1.0
    comp[chart.ip + 1 :] = pt.v.ravel()
    return ExteriorElement.covector(comp.tolist())


def prolong_section(y_grid, spacings) -> Array:
    """First jet prolongation on a uniform grid.

    ``y_grid`` has shape ``(N, *extents)``; returns ``v`` with shape
    ``(N, n+1, *extents)``.  Second-order central differences in the
    interior, second-order one-sided stencils on the boundary.
    """
    y_grid = np.asarray(y_grid, dtype=float)
    spacings = tuple(float(h) for h in np.atleast_1d(spacings))
    extents = y_grid.shape[1:]
    if len(extents) != len(spacings):
        raise ChartError(f"{len(spacings)} spacings for a {len(extents)}-dimensional grid")
    if min(extents) < 3:
        raise ChartError(f"grid extents {extents} too small: need >= 3 points per axis")
    out = np.empty((y_grid.shape[0], len(extents)) + extents)
    for A in range(y_grid.shape[0]):
        grads = np.gradient(y_grid[A], *spacings, edge_order=2)
        if len(extents) == 1:
            grads = [grads]
        for mu, g in enumerate(grads):
            out[A, mu] = g
    return out


def stencil_derivative(field_grid, axis: int, h: float) -> Array:
    """Same stencil as :func:`prolong_section`, along one axis of a scalar grid."""
    return np.gradient(np.asarray(field_grid, dtype=float), float(h), axis=axis, edge_order=2)


# ------------------------------------------------------------------ cross-check
def random_jet_point(chart: ChartSpec, rng, scale: float = 1.0):
    x = rng.uniform(-scale, scale, chart.base_dim)
    y = rng.uniform(-scale, scale, chart.fiber_dim)
    v = rng.uniform(-scale, scale, (chart.fiber_dim, chart.base_dim))
    return x, y, v


def partials_consistency(model: LagrangianModel, samples: int = 100, seed: int = 42, eps: float = 1e-6) -> float:
    """Largest relative gap between analytic partials and central differences of ``L``."""
    rng = np.random.default_rng(seed)
    chart = model.chart
    worst = 0.0

    def fd(fun, arr, idx):
        hi, lo = arr.copy(), arr.copy()
        hi[idx] += eps
        lo[idx] -= eps
        return (fun(hi) - fun(lo)) / (2 * eps)

    for _ in range(samples):
        x, y, v = random_jet_point(chart, rng)
        gx = np.asarray(model.dL_dx(x, y, v), dtype=float)
        gy = np.asarray(model.dL_dy(x, y, v), dtype=float)
        gv = np.asarray(model.dL_dv(x, y, v), dtype=float)
        for idx in np.ndindex(x.shape):
            num = fd(lambda a: model.L(a, y, v), x, idx)
            worst = max(worst, abs(gx[idx] - num) / max(1.0, abs(gx[idx])))
        for idx in np.ndindex(y.shape):
            num = fd(lambda a: model.L(x, a, v), y, idx)
            worst = max(worst, abs(gy[idx] - num) / max(1.0, abs(gy[idx])))
        for idx in np.ndindex(v.shape):
            num = fd(lambda a: model.L(x, y, a), v, idx)
            worst = max(worst, abs(gv[idx] - num) / max(1.0, abs(gv[idx])))
    return float(worst)
