"""Leapfrog time marching for the eliminated second-order form
``y_tt = Δy + f(y)`` (space periodic), used to verify hyperbolic examples."""

from __future__ import annotations

import numpy as np

from ..jet import LagrangianModel
from .section import DiscreteSection


class CFLError(ValueError):
    pass


def periodic_laplacian(y: np.ndarray, spacings) -> np.ndarray:
    """Three-point Laplacian over the trailing ``len(spacings)`` axes."""
    out = np.zeros_like(y)
    nd = len(spacings)
    for k, h in enumerate(spacings):
        axis = y.ndim - nd + k
        out += (np.roll(y, -1, axis) - 2.0 * y + np.roll(y, 1, axis)) / (h * h)
    return out


def march_hyperbolic(model: LagrangianModel, y0, y1, dt: float, spacings, steps: int, origin=()) -> DiscreteSection:
    """March from two initial time levels and rebuild the full section.

    ``y0``, ``y1`` have shape ``(N, *space)`` at ``t0`` and ``t0 + dt``.
    The returned section spans ``steps + 1`` time levels; ``v`` comes from
    prolongation and ``pa`` from the Legendre map.  Stability requires
    ``dt² Σ 1/h² <= 1``, which is ``dt/dx <= 1`` in one space dimension.
    """
    if model.hyperbolic_source is None:
        raise ValueError(f"model {model.name!r} has no eliminated hyperbolic form")
    spacings = tuple(float(h) for h in np.atleast_1d(spacings))
    courant = dt * np.sqrt(sum(1.0 / (h * h) for h in spacings))
    if courant > 1.0 + 1e-12:
        raise CFLError(f"CFL violated: dt*sqrt(sum 1/h^2) = {courant:.4f} > 1")
    if steps < 2:
        raise ValueError("need at least two steps to build a section")
    y0 = np.asarray(y0, dtype=float)
    y1 = np.asarray(y1, dtype=float)
    levels = [y0, y1]
    for _ in range(steps - 1):
        prev, cur = levels[-2], levels[-1]
        levels.append(2.0 * cur - prev + dt * dt * (periodic_laplacian(cur, spacings) + model.hyperbolic_source(cur)))
    y = np.stack(levels, axis=1)
    return DiscreteSection.from_fields(model, (dt,) + spacings, y, origin=origin)
