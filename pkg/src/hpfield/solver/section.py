"""Gridded sections of the Pontryagin bundle."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..jet import LagrangianModel, affine_momentum, prolong_section


@dataclass
class DiscreteSection:
    """Uniform-grid sample of ``ψ: X -> M``.

    ``y`` has shape ``(N, *extents)``; ``v`` and ``pa`` have shape
    ``(N, n+1, *extents)``.  ``p`` is never an unknown: it is recomputed
    from ``E = 0`` whenever the fields change.  Unknowns flatten as
    ``[y, v, pa]``, each in C order.
    """

    model: LagrangianModel
    spacings: tuple
    y: np.ndarray
    v: np.ndarray
    pa: np.ndarray
    origin: tuple = ()
    p: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        b, N = self.model.chart.base_dim, self.model.chart.fiber_dim
        self.spacings = tuple(float(h) for h in np.atleast_1d(self.spacings))
        self.y = np.asarray(self.y, dtype=float)
        self.v = np.asarray(self.v, dtype=float)
        self.pa = np.asarray(self.pa, dtype=float)
        self.origin = tuple(float(o) for o in self.origin) or (0.0,) * b
        ext = self.extents
        if len(ext) != b or len(self.spacings) != b or len(self.origin) != b:
            raise ValueError("grid rank, spacings and origin must match the base dimension")
        if self.y.shape != (N,) + ext or self.v.shape != (N, b) + ext or self.pa.shape != (N, b) + ext:
            raise ValueError("section grids must share extents and match the chart")
        self._refresh()

    @property
    def extents(self) -> tuple:
        return tuple(self.y.shape[1:])

    @property
    def size(self) -> int:
        return self.y.size + self.v.size + self.pa.size

    def coords(self) -> np.ndarray:
        axes = [o + h * np.arange(m) for o, h, m in zip(self.origin, self.spacings, self.extents)]
        return np.stack(np.meshgrid(*axes, indexing="ij"))

    def axes(self) -> list[np.ndarray]:
        return [o + h * np.arange(m) for o, h, m in zip(self.origin, self.spacings, self.extents)]

    def _refresh(self):
        self.p = np.asarray(affine_momentum(self.model, self.coords(), self.y, self.v, self.pa), dtype=float)

    def update(self, y=None, v=None, pa=None) -> "DiscreteSection":
        if y is not None:
            self.y = np.asarray(y, dtype=float).reshape(self.y.shape)
        if v is not None:
            self.v = np.asarray(v, dtype=float).reshape(self.v.shape)
        if pa is not None:
            self.pa = np.asarray(pa, dtype=float).reshape(self.pa.shape)
        self._refresh()
        return self

    def flat(self) -> np.ndarray:
        return np.concatenate([self.y.ravel(), self.v.ravel(), self.pa.ravel()])

    def with_flat(self, z) -> "DiscreteSection":
        z = np.asarray(z, dtype=float)
        ny, nv = self.y.size, self.v.size
        return DiscreteSection(
            self.model, self.spacings, z[:ny].reshape(self.y.shape), z[ny : ny + nv].reshape(self.v.shape),
            z[ny + nv :].reshape(self.pa.shape), self.origin,
        )

    def copy(self) -> "DiscreteSection":
        return DiscreteSection(self.model, self.spacings, self.y.copy(), self.v.copy(), self.pa.copy(), self.origin)

    def energy(self) -> np.ndarray:
        x = self.coords()
        return self.p + np.einsum("am...,am...->...", self.pa, self.v) - self.model.L(x, self.y, self.v)

    @classmethod
    def from_fields(cls, model: LagrangianModel, spacings, y, v=None, origin=()) -> "DiscreteSection":
        """Section with ``v`` given (or prolonged) and ``pa`` by Legendre."""
        y = np.asarray(y, dtype=float)
        v = prolong_section(y, spacings) if v is None else np.asarray(v, dtype=float)
        sec = cls(model, spacings, y, v, np.zeros_like(v), origin)
        return sec.update(pa=model.dL_dv(sec.coords(), sec.y, sec.v))

    @classmethod
    def zeros(cls, model: LagrangianModel, extents, spacings, origin=()) -> "DiscreteSection":
        b, N = model.chart.base_dim, model.chart.fiber_dim
        ext = tuple(int(e) for e in extents)
        return cls(model, spacings, np.zeros((N,) + ext), np.zeros((N, b) + ext), np.zeros((N, b) + ext), origin)


def interior_mask(extents, width: int = 1) -> np.ndarray:
    """Boolean grid that is False within ``width`` nodes of any face."""
    mask = np.zeros(tuple(extents), dtype=bool)
    mask[tuple(slice(width, m - width) for m in extents)] = True
    return mask
