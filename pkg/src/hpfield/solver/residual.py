"""Discrete Hamilton-Pontryagin action and implicit Euler-Lagrange residuals."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..jet import LagrangianModel, prolong_section, stencil_derivative
from ..theories import ElasticitySpec, face_normal
from .section import DiscreteSection, interior_mask


@dataclass
class ResidualVector:
    """Residual blocks of the implicit Euler-Lagrange system.

    ``R1 = v - Dy`` and ``R2 = pa - ∂L/∂v`` have shape ``(N, n+1, *g)``;
    ``R3 = D_mu pa^mu - ∂L/∂y`` has shape ``(N, *g)``.  ``boundary`` holds
    one row per (face node, component): ``u_i`` on fixed components,
    ``π^I_i n_I - τ_i`` otherwise.  ``traction`` is the traction subset.
    Flattening order: R1, R2, R3, boundary, constraint.
    """

    R1: np.ndarray
    R2: np.ndarray
    R3: np.ndarray
    boundary: np.ndarray = field(default_factory=lambda: np.zeros(0))
    traction: np.ndarray = field(default_factory=lambda: np.zeros(0))
    constraint: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def flat(self) -> np.ndarray:
        return np.concatenate([self.R1.ravel(), self.R2.ravel(), self.R3.ravel(), self.boundary, self.constraint])

    def bvp_vector(self) -> np.ndarray:
        """Rows of the boundary-value problem: R3 only at interior nodes."""
        mask = interior_mask(self.R3.shape[1:])
        return np.concatenate([self.R1.ravel(), self.R2.ravel(), self.R3[:, mask].ravel(), self.boundary, self.constraint])

    def interior_norm(self, width: int = 1) -> float:
        mask = interior_mask(self.R3.shape[1:], width)
        blocks = [np.abs(self.R1[..., mask]), np.abs(self.R2[..., mask]), np.abs(self.R3[:, mask])]
        return float(max(b.max() if b.size else 0.0 for b in blocks))

    def block_norms(self, width: int = 1) -> dict:
        mask = interior_mask(self.R3.shape[1:], width)
        out = {
            "R1": float(np.abs(self.R1[..., mask]).max()),
            "R2": float(np.abs(self.R2[..., mask]).max()),
            "R3": float(np.abs(self.R3[:, mask]).max()),
        }
        if self.boundary.size:
            out["boundary"] = float(np.abs(self.boundary).max())
        if self.traction.size:
            out["traction"] = float(np.abs(self.traction).max())
        return out

    def norm_inf(self) -> float:
        vec = self.bvp_vector() if self.boundary.size else self.flat()
        return float(np.abs(vec).max()) if vec.size else 0.0


def trapezoid_weights(extents, spacings) -> np.ndarray:
    w = np.ones(tuple(extents))
    for axis, (m, h) in enumerate(zip(extents, spacings)):
        wa = np.full(m, float(h))
        wa[0] = wa[-1] = 0.5 * h
        shape = [1] * len(extents)
        shape[axis] = m
        w = w * wa.reshape(shape)
    return w


def _face_index(face: str, ndim: int):
    axis = int(face[1:-1])
    idx = [slice(None)] * ndim
    idx[axis] = -1 if face.endswith("+") else 0
    return axis, tuple(idx)


def _face_weights(section: DiscreteSection, axis: int) -> np.ndarray:
    ext = [m for i, m in enumerate(section.extents) if i != axis]
    hs = [h for i, h in enumerate(section.spacings) if i != axis]
    return trapezoid_weights(ext, hs) if ext else np.ones(())


def boundary_rows(spec: ElasticitySpec, section: DiscreteSection):
    rows, traction = [], []
    nd = len(section.extents)
    for face in spec.faces():
        axis, idx = _face_index(face, nd)
        n = face_normal(face, spec.spatial_dim)
        fixed = spec.fixed_components(face)
        tau = spec.face_traction(face)
        for i in range(spec.spatial_dim):
            if i in fixed:
                rows.append(section.y[i][idx].ravel())
            else:
                t = np.einsum("I...,I->...", section.pa[i][(slice(None),) + idx], n) - tau[i]
                rows.append(np.ravel(t))
                traction.append(np.ravel(t))
    cat = lambda parts: np.concatenate(parts) if parts else np.zeros(0)
    return cat(rows), cat(traction)


def assemble_residual(model: LagrangianModel, section: DiscreteSection) -> ResidualVector:
    x = section.coords()
    h = section.spacings
    R1 = section.v - prolong_section(section.y, h)
    R2 = section.pa - np.asarray(model.dL_dv(x, section.y, section.v))
    div = sum(
        np.stack([stencil_derivative(section.pa[A, mu], mu, h[mu]) for A in range(section.y.shape[0])])
        for mu in range(len(h))
    )
    R3 = div - np.asarray(model.dL_dy(x, section.y, section.v))
    out = ResidualVector(R1, R2, R3)
    if isinstance(model.boundary, ElasticitySpec):
        out.boundary, out.traction = boundary_rows(model.boundary, section)
    return out


def hp_action(model: LagrangianModel, section: DiscreteSection) -> float:
    """Trapezoidal ``∫ [pa·(Dy - v) + L]`` minus the traction work on the boundary."""
    x = section.coords()
    dy = prolong_section(section.y, section.spacings)
    density = np.einsum("am...,am...->...", section.pa, dy - section.v) + model.L(x, section.y, section.v)
    S = float(np.sum(trapezoid_weights(section.extents, section.spacings) * density))
    spec = model.boundary
    if isinstance(spec, ElasticitySpec):
        nd = len(section.extents)
        for face, tau in spec.traction.items():
            axis, idx = _face_index(face, nd)
            work = sum(tau[i] * section.y[i][idx] for i in range(spec.spatial_dim))
            S -= float(np.sum(_face_weights(section, axis) * work))
    return S


def action_gradient_fd(model: LagrangianModel, section: DiscreteSection, eps: float = 1e-6) -> np.ndarray:
    """Central-difference gradient of :func:`hp_action` over the flat unknowns."""
    z = section.flat()
    g = np.empty_like(z)
    for j in range(z.size):
        hi, lo = z.copy(), z.copy()
        hi[j] += eps
        lo[j] -= eps
        g[j] = (hp_action(model, section.with_flat(hi)) - hp_action(model, section.with_flat(lo))) / (2 * eps)
    return g


def variational_consistency(model: LagrangianModel, section: DiscreteSection, eps: float = 1e-6, margin: int = 3) -> dict:
    """Compare ``-∇S / w`` with the residual blocks.

    ``∂S/∂pa = -w R1`` and ``∂S/∂v = -w R2`` hold at every node;
    ``∂S/∂y = -w R3`` holds where summation by parts is exact, i.e. at
    nodes at least ``margin`` cells from the boundary.  The one-sided
    stencil at node 0 reaches node 2, so the smallest exact margin is 3.
    """
    g = action_gradient_fd(model, section, eps)
    w = trapezoid_weights(section.extents, section.spacings)
    res = assemble_residual(model, section)
    ny, nv = section.y.size, section.v.size
    gy = g[:ny].reshape(section.y.shape)
    gv = g[ny : ny + nv].reshape(section.v.shape)
    gp = g[ny + nv :].reshape(section.pa.shape)
    mask = interior_mask(section.extents, margin)
    gaps = {
        "pa_rows": float(np.abs(-gp / w - res.R1).max()),
        "v_rows": float(np.abs(-gv / w - res.R2).max()),
        "y_rows": float(np.abs((-gy / w - res.R3)[:, mask]).max()),
    }
    gaps["max"] = max(gaps.values())
    return gaps
