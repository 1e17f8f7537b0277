"""Generalized-energy diagnostics on gridded sections."""

from __future__ import annotations

import numpy as np

from ..dirac import lagrange_dirac_grid
from ..jet import LagrangianModel, stencil_derivative
from .section import DiscreteSection, interior_mask


def _interior(section: DiscreteSection, width: int) -> np.ndarray:
    mask = interior_mask(section.extents, width)
    if not mask.any():
        raise ValueError(f"grid {section.extents} has no cells {width} or more from the boundary")
    return mask


def energy_report(model: LagrangianModel, section: DiscreteSection, width: int = 1) -> dict:
    """Energy constraint and local energy law on interior cells.

    ``energy_max`` is ``max|E|``; ``flux_max`` is ``max_mu |D_mu E|``;
    ``energy_law_max`` is the largest ``dx^mu`` imbalance
    ``|D_mu y^A ∂L/∂y^A - v^A_l D_mu p_A^l - D_mu p + ∂L/∂x^mu|``, the
    discrete form of ``∂_mu(p + p_A^nu v^A_nu - L) = 0`` on solutions.
    """
    E = section.energy()
    mask = _interior(section, width)
    flux = max(float(np.abs(stencil_derivative(E, mu, h)[mask]).max()) for mu, h in enumerate(section.spacings))
    law = _energy_law(model, section)
    return {
        "energy_max": float(np.abs(E).max()),
        "flux_max": flux,
        "energy_law_max": float(law[mask].max()),
    }


def _energy_law(model: LagrangianModel, section: DiscreteSection) -> np.ndarray:
    x = section.coords()
    h = section.spacings
    b = model.chart.base_dim
    N = model.chart.fiber_dim
    Ly = np.asarray(model.dL_dy(x, section.y, section.v))
    Lx = np.asarray(model.dL_dx(x, section.y, section.v))
    out = np.zeros(section.extents)
    for mu in range(b):
        Dy = np.stack([stencil_derivative(section.y[A], mu, h[mu]) for A in range(N)])
        Dpa = np.stack([np.stack([stencil_derivative(section.pa[A, l], mu, h[mu]) for l in range(b)]) for A in range(N)])
        term = np.einsum("a...,a...->...", Dy, Ly) - np.einsum("al...,al...->...", section.v, Dpa)
        term = term - stencil_derivative(section.p, mu, h[mu]) + Lx[mu]
        out = np.maximum(out, np.abs(term))
    return out


def dirac_report(model: LagrangianModel, section: DiscreteSection, scale: float = 10.0, width: int = 1) -> dict:
    """Per-cell Lagrange-Dirac residual against ``scale·h²·‖field‖∞``."""
    res = lagrange_dirac_grid(model, section.coords(), section.y, section.v, section.pa, section.spacings)
    mask = _interior(section, width)
    field_norm = max(1.0, float(np.abs(section.y).max()), float(np.abs(section.v).max()), float(np.abs(section.pa).max()))
    h = max(section.spacings)
    tol = scale * h * h * field_norm
    worst = float(res[mask].max())
    return {"dirac_check_max": worst, "tol": tol, "cells": int(mask.sum()), "passed": worst <= tol}
