"""Implicit-midpoint integration of time-dependent mechanics with affine
nonholonomic constraints, plus a reduced-ODE reference."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..theories import NonholonomicSpec
from .newton import NewtonError, fd_jacobian


@dataclass
class MechState:
    t: float
    q: np.ndarray
    v: np.ndarray
    p: np.ndarray
    p_t: float
    lam: np.ndarray

    def vector(self) -> np.ndarray:
        return np.concatenate([[self.t], self.q, self.v, [self.p_t], self.p])


def initial_state(spec: NonholonomicSpec) -> MechState:
    t, q, v = spec.t0, spec.q0.copy(), spec.v0.copy()
    p = np.asarray(spec.dL_dv(t, q, v), dtype=float)
    return MechState(t, q, v, p, spec.L(t, q, v) - float(p @ v), np.zeros(spec.A_mat(t, q).shape[0]))


def _step_residual(spec: NonholonomicSpec, s: MechState, dt: float, z: np.ndarray) -> np.ndarray:
    d = spec.config_dim
    q1, v1, lam = z[:d], z[d : 2 * d], z[2 * d :]
    t1, tm = s.t + dt, s.t + 0.5 * dt
    qm, vm = 0.5 * (s.q + q1), 0.5 * (s.v + v1)
    Am = spec.A_mat(tm, qm)
    r_q = q1 - s.q - dt * vm
    r_p = np.asarray(spec.dL_dv(t1, q1, v1)) - s.p - dt * (np.asarray(spec.dL_dq(tm, qm, vm)) + Am.T @ lam)
    r_c = spec.violation(t1, q1, v1)
    return np.concatenate([r_q, r_p, r_c])


def nonholonomic_step(spec: NonholonomicSpec, state: MechState, dt: float, tol: float = 1e-13, max_iter: int = 30) -> MechState:
    """One implicit-midpoint step.

    Solves for ``(q1, v1, λ)``:
    ``q1 - q0 = dt (v0 + v1)/2``,
    ``p1 - p0 = dt [∂L/∂q + λ A]`` at the midpoint,
    ``A(t1, q1) v1 + B(t1, q1) = 0``;
    then ``p1 = ∂L/∂v`` and ``p_t = L - p v`` (``E = 0``).
    """
    d = spec.config_dim
    k = spec.A_mat(state.t, state.q).shape[0]
    z = np.concatenate([state.q + dt * state.v, state.v, state.lam if state.lam.size == k else np.zeros(k)])
    fun = lambda w: _step_residual(spec, state, dt, w)
    F = fun(z)
    for it in range(max_iter):
        if np.abs(F).max() <= tol:
            break
        J = fd_jacobian(fun, z, 1e-7)
        try:
            z = z - np.linalg.solve(J, F)
        except np.linalg.LinAlgError:
            raise NewtonError("singular step Jacobian (rank-deficient constraints?)", float(np.abs(F).max()), it) from None
        F = fun(z)
    else:
        if np.abs(F).max() > tol:
            raise NewtonError("nonholonomic step did not converge", float(np.abs(F).max()), max_iter)
    t1 = state.t + dt
    q1, v1, lam = z[:d], z[d : 2 * d], z[2 * d :]
    spec.check_rank(t1, q1)
    p1 = np.asarray(spec.dL_dv(t1, q1, v1), dtype=float)
    return MechState(t1, q1, v1, p1, spec.L(t1, q1, v1) - float(p1 @ v1), lam)


def integrate(spec: NonholonomicSpec, t_end: float, steps: int) -> list[MechState]:
    dt = (t_end - spec.t0) / steps
    states = [initial_state(spec)]
    for _ in range(steps):
        states.append(nonholonomic_step(spec, states[-1], dt))
    return states


def energy_law_residuals(spec: NonholonomicSpec, states: list[MechState]) -> np.ndarray:
    """Per step ``|Δp_t/Δt - (∂L/∂t - λ·A v)|`` at the midpoint."""
    out = []
    for s0, s1 in zip(states[:-1], states[1:]):
        dt = s1.t - s0.t
        tm, qm, vm = 0.5 * (s0.t + s1.t), 0.5 * (s0.q + s1.q), 0.5 * (s0.v + s1.v)
        rate = spec.dL_dt(tm, qm, vm) - float(s1.lam @ (spec.A_mat(tm, qm) @ vm)) if s1.lam.size else spec.dL_dt(tm, qm, vm)
        out.append(abs((s1.p_t - s0.p_t) / dt - rate))
    return np.asarray(out)


def constraint_violations(spec: NonholonomicSpec, states: list[MechState]) -> np.ndarray:
    return np.array([np.abs(spec.violation(s.t, s.q, s.v)).max() if s.lam.size else 0.0 for s in states])


# --------------------------------------------------------------- reference
def rk4(f, y0, t0: float, t1: float, steps: int) -> np.ndarray:
    y = np.asarray(y0, dtype=float).copy()
    h = (t1 - t0) / steps
    t = t0
    for _ in range(steps):
        k1 = f(t, y)
        k2 = f(t + 0.5 * h, y + 0.5 * h * k1)
        k3 = f(t + 0.5 * h, y + 0.5 * h * k2)
        k4 = f(t + h, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        t += h
    return y


def planar_reduced_rhs(t, s):
    """Reduced ODE for ``L = ½|v|²``, ``v_y = t v_x``: state ``(x, y, v_x)``.

    Differentiating the constraint gives ``λ = v_x/(1+t²)`` and
    ``v̇_x = -t v_x/(1+t²)``.
    """
    x, y, vx = s
    return np.array([vx, t * vx, -t * vx / (1.0 + t * t)])


def planar_reference(spec: NonholonomicSpec, t_end: float, dt: float) -> tuple[np.ndarray, np.ndarray]:
    """``(q, v)`` at ``t_end`` by RK4 on the reduced ODE with step ``dt/100``."""
    steps = max(1, int(round((t_end - spec.t0) / (dt / 100.0))))
    x, y, vx = rk4(planar_reduced_rhs, [spec.q0[0], spec.q0[1], spec.v0[0]], spec.t0, t_end, steps)
    return np.array([x, y]), np.array([vx, t_end * vx])
