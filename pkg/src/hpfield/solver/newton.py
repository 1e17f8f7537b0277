"""Damped Gauss-Newton on the stationarity system of the discrete action."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..jet import LagrangianModel
from .residual import assemble_residual
from .section import DiscreteSection


class NewtonError(RuntimeError):
    def __init__(self, message: str, residual: float, iterations: int):
        super().__init__(f"{message} (residual {residual:.3e} after {iterations} iterations)")
        self.residual = residual
        self.iterations = iterations


@dataclass
class NewtonConfig:
    tol: float = 1e-10
    max_iter: int = 50
    fd_eps: float = 1e-7
    min_damping: float = 2.0**-20
    rank_rtol: float = 1e-12

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")


@dataclass
class NewtonResult:
    section: DiscreteSection
    iterations: int
    residual: float
    history: list = field(default_factory=list)


def _residual(model, section) -> np.ndarray:
    return assemble_residual(model, section).bvp_vector()


def fd_jacobian(fun, z: np.ndarray, eps: float) -> np.ndarray:
    f0 = fun(z)
    J = np.empty((f0.size, z.size))
    for j in range(z.size):
        hi, lo = z.copy(), z.copy()
        hi[j] += eps
        lo[j] -= eps
        J[:, j] = (fun(hi) - fun(lo)) / (2 * eps)
    return J


def newton_solve(model: LagrangianModel, initial: DiscreteSection, cfg: NewtonConfig | None = None) -> NewtonResult:
    """Drive the boundary-value residual to ``‖R‖∞ <= cfg.tol``.

    Each step solves the (possibly overdetermined) linearization in the
    least-squares sense with a dense central-difference Jacobian, then
    halves the step until the residual norm decreases.
    """
    cfg = cfg or NewtonConfig()
    if model.boundary is None:
        raise ValueError("newton_solve needs a boundary-value problem; hyperbolic examples are marched instead")
    fun = lambda z: _residual(model, initial.with_flat(z))
    z = initial.flat()
    F = fun(z)
    norm = float(np.abs(F).max())
    history = [norm]
    it = 0
    while norm > cfg.tol:
        if it >= cfg.max_iter:
            raise NewtonError("no convergence", norm, it)
        J = fd_jacobian(fun, z, cfg.fd_eps)
        step, _, rank, sv = np.linalg.lstsq(J, -F, rcond=None)
        if rank < z.size or sv[-1] <= cfg.rank_rtol * sv[0]:
            raise NewtonError(f"singular Jacobian (rank {rank} of {z.size})", norm, it)
        alpha = 1.0
        while True:
            trial = z + alpha * step
            Ft = fun(trial)
            nt = float(np.abs(Ft).max())
            if nt < norm:
                break
            alpha *= 0.5
            if alpha < cfg.min_damping:
                raise NewtonError("damping floor reached", norm, it)
        z, F, norm = trial, Ft, nt
        it += 1
        history.append(norm)
    return NewtonResult(initial.with_flat(z), it, norm, history)
