"""Worked examples as :class:`~hpfield.jet.LagrangianModel` instances.

* ``wave``: ``L = ½(v_t² - v_x²) + V(φ)`` on base ``(t, x)``.
* ``maxwell``: ``L = -¼ F_{mu nu} F^{mu nu}`` with ``F_{mu nu} = A_{mu,nu} - A_{nu,mu}``
  and signature ``diag(+1, -1, ..., -1)``, ``x^0 = t``.
* ``nonholonomic``: planar particle ``L = ½|v|²`` with ``v_y - t v_x = 0``.
* ``elastostatics``: ``L = W(e)``, isotropic ``W = ½λ tr(e)² + μ e:e`` in
  the displacement ``u``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np
import sympy as sp

from .jet import AffineConstraint, ChartSpec, LagrangianModel


class ExampleId(str, Enum):
    WAVE = "wave"
    MAXWELL = "maxwell"
    NONHOLONOMIC = "nonholonomic"
    ELASTOSTATICS = "elastostatics"


class ExampleError(ValueError):
    pass


# ------------------------------------------------------------------------ wave
def parse_potential(text: str, params: dict | None = None) -> np.ndarray:
    """Polynomial coefficients ``c`` of ``V(φ) = sum_k c_k φ^k``.

    ``text`` is an expression in ``phi`` (``-0.5*m^2*phi^2``); an
    expression free of ``phi`` is read as the ``φ²`` coefficient, so
    ``-0.5*m^2`` means ``V = -½m²φ²``.  Other symbols are taken from
    ``params``.
    """
    phi = sp.Symbol("phi")
    expr = sp.sympify(str(text).replace("^", "**"), locals={"phi": phi})
    subs = {sp.Symbol(k): float(v) for k, v in (params or {}).items() if _is_number(v)}
    expr = expr.subs(subs)
    if phi not in expr.free_symbols:
        expr = expr * phi**2
    unknown = expr.free_symbols - {phi}
    if unknown:
        raise ExampleError(f"potential has unresolved symbols: {sorted(map(str, unknown))}")
    poly = sp.Poly(sp.expand(expr), phi)
    coeffs = np.zeros(poly.degree() + 1)
    for (k,), c in poly.terms():
        coeffs[k] = float(c)
    return coeffs


def _is_number(v) -> bool:
    try:
        float(v)
        return True
    except (TypeError, ValueError):
        return False


def wave_model(potential=None) -> LagrangianModel:
    c = np.zeros(1) if potential is None else np.asarray(potential, dtype=float)
    V = np.polynomial.Polynomial(c)
    dV = V.deriv()
    chart = ChartSpec(2, 1, ("t", "x"), ("phi",))

    def L(x, y, v):
        return 0.5 * (v[0, 0] ** 2 - v[0, 1] ** 2) + V(y[0])

    def dL_dx(x, y, v):
        return np.zeros_like(np.asarray(x, dtype=float))

    def dL_dy(x, y, v):
        return np.stack([dV(y[0]) + 0.0 * y[0]])

    def dL_dv(x, y, v):
        return np.stack([np.stack([v[0, 0], -v[0, 1]])])

    return LagrangianModel(
        chart, L, dL_dx, dL_dy, dL_dv, name="wave",
        hyperbolic_source=lambda y: np.stack([dV(y[0]) + 0.0 * y[0]]),
        params={"potential": c.tolist()},
    )


# --------------------------------------------------------------------- maxwell
def minkowski(dim: int) -> np.ndarray:
    return np.array([1.0] + [-1.0] * (dim - 1))


def maxwell_model(base_dim: int = 3) -> LagrangianModel:
    if base_dim not in (2, 3, 4):
        raise ExampleError(f"maxwell base dim must be 2, 3 or 4, got {base_dim}")
    names = ("t", "x", "y", "z")[:base_dim]
    chart = ChartSpec(base_dim, base_dim, names, tuple(f"A{m}" for m in range(base_dim)))
    eta = minkowski(base_dim)

    def field_strength(v):
        return v - np.swapaxes(v, 0, 1)

    def raised(F):
        shape = (base_dim, base_dim) + (1,) * (F.ndim - 2)
        return np.outer(eta, eta).reshape(shape) * F

    def L(x, y, v):
        F = field_strength(np.asarray(v, dtype=float))
        return -0.25 * np.sum(F * raised(F), axis=(0, 1))

    def dL_dx(x, y, v):
        return np.zeros_like(np.asarray(x, dtype=float))

    def dL_dy(x, y, v):
        return np.zeros_like(np.asarray(y, dtype=float))

    def dL_dv(x, y, v):
        return -raised(field_strength(np.asarray(v, dtype=float)))

    return LagrangianModel(
        chart, L, dL_dx, dL_dy, dL_dv, name="maxwell",
        hyperbolic_source=lambda y: np.zeros_like(y),
        params={"base_dim": base_dim},
    )


def maxwell_momentum_sign(model: LagrangianModel, rng=None, samples: int = 20) -> str:
    """``'+'`` or ``'-'`` according to ``∂L/∂A_{mu,nu} = ±F^{mu nu}``."""
    rng = np.random.default_rng(0) if rng is None else rng
    b = model.chart.base_dim
    eta = minkowski(b)
    plus = minus = 0.0
    for _ in range(samples):
        v = rng.uniform(-1, 1, (b, b))
        F_up = np.outer(eta, eta) * (v - v.T)
        pa = model.dL_dv(np.zeros(b), np.zeros(b), v)
        plus = max(plus, np.abs(pa - F_up).max())
        minus = max(minus, np.abs(pa + F_up).max())
    if minus < 1e-14:
        return "-"
    if plus < 1e-14:
        return "+"
    return "neither"


# --------------------------------------------------------------- nonholonomic
@dataclass
class NonholonomicSpec:
    """Time-dependent mechanics with affine constraints ``A(t,q) v + B(t,q) = 0``."""

    config_dim: int
    L: Callable
    dL_dt: Callable
    dL_dq: Callable
    dL_dv: Callable
    d2L_dv2: Callable
    A: Callable
    B: Callable
    t0: float
    q0: np.ndarray
    v0: np.ndarray

    def __post_init__(self):
        self.q0 = np.asarray(self.q0, dtype=float)
        self.v0 = np.asarray(self.v0, dtype=float)
        viol = self.violation(self.t0, self.q0, self.v0)
        if viol.size and np.abs(viol).max() > 1e-14:
            raise ExampleError(f"initial data violates the constraints by {np.abs(viol).max():.3e}")
        self.check_rank(self.t0, self.q0)

    @property
    def n_constraints(self) -> int:
        return np.atleast_2d(self.A(self.t0, self.q0)).shape[0] if np.size(self.A(self.t0, self.q0)) else 0

    def A_mat(self, t, q) -> np.ndarray:
        return np.asarray(self.A(t, q), dtype=float).reshape(-1, self.config_dim)

    def violation(self, t, q, v) -> np.ndarray:
        return self.A_mat(t, q) @ np.asarray(v) + np.asarray(self.B(t, q), dtype=float).reshape(-1)

    def check_rank(self, t, q):
        A = self.A_mat(t, q)
        if A.shape[0] and np.linalg.matrix_rank(A) < A.shape[0]:
            raise ExampleError(f"constraint matrix is rank deficient at t={t}")


def planar_particle(constrained: bool = True, speed: float = 1.0, t0: float = 0.0) -> NonholonomicSpec:
    """``L = ½|v|²`` in the plane, constraint ``v_y - t v_x = 0`` (or none)."""

    def A(t, q):
        return np.array([[-t, 1.0]]) if constrained else np.zeros((0, 2))

    def B(t, q):
        return np.zeros(1) if constrained else np.zeros(0)

    v0 = np.array([1.0, t0]) * speed / np.sqrt(1.0 + t0 * t0) if constrained else np.array([speed, 0.0])
    return NonholonomicSpec(
        config_dim=2,
        L=lambda t, q, v: 0.5 * float(np.dot(v, v)),
        dL_dt=lambda t, q, v: 0.0,
        dL_dq=lambda t, q, v: np.zeros(2),
        dL_dv=lambda t, q, v: np.asarray(v, dtype=float).copy(),
        d2L_dv2=lambda t, q, v: np.eye(2),
        A=A,
        B=B,
        t0=t0,
        q0=np.zeros(2),
        v0=v0,
    )


def nonholonomic_model(spec: NonholonomicSpec) -> LagrangianModel:
    """Mechanics chart ``(t; q; v; p_t; p)`` view of a :class:`NonholonomicSpec`."""
    d = spec.config_dim
    chart = ChartSpec(1, d, ("t",), tuple(f"q{i}" for i in range(d)))

    def L(x, y, v):
        return spec.L(float(x[0]), y, v[:, 0])

    def dL_dx(x, y, v):
        return np.array([spec.dL_dt(float(x[0]), y, v[:, 0])])

    def dL_dy(x, y, v):
        return np.asarray(spec.dL_dq(float(x[0]), y, v[:, 0]))

    def dL_dv(x, y, v):
        return np.asarray(spec.dL_dv(float(x[0]), y, v[:, 0])).reshape(d, 1)

    constraint = AffineConstraint(lambda t, q: spec.A_mat(t, q), lambda t, q: np.asarray(spec.B(t, q)))
    return LagrangianModel(chart, L, dL_dx, dL_dy, dL_dv, name="nonholonomic", constraint=constraint, params={"spec": spec})


# -------------------------------------------------------------- elastostatics
FACE_SIDES = ("-", "+")


def face_normal(face, d: int) -> np.ndarray:
    """Outward unit normal for ``'x<axis><sign>'`` or an explicit vector."""
    if isinstance(face, str):
        if len(face) < 3 or face[0] != "x" or face[-1] not in FACE_SIDES:
            raise ExampleError(f"face name must look like 'x0-' or 'x1+', got {face!r}")
        axis = int(face[1:-1])
        if not 0 <= axis < d:
            raise ExampleError(f"face {face!r} outside a {d}-dimensional body")
        n = np.zeros(d)
        n[axis] = 1.0 if face[-1] == "+" else -1.0
        return n
    n = np.asarray(face, dtype=float)
    norm = np.linalg.norm(n)
    if n.shape != (d,) or norm == 0.0:
        raise ExampleError("face normal must be a nonzero vector of the body dimension")
    return n / norm


@dataclass
class ElasticitySpec:
    """Linear isotropic body on the box ``prod [0, length_I]``.

    ``traction`` maps face names to ``τ_i``; ``clamped`` faces fix ``u = 0``;
    ``rollers`` map face names to the displacement components held at 0.
    Faces not mentioned are traction free.
    """

    spatial_dim: int
    lame_lambda: float
    lame_mu: float
    traction: dict = field(default_factory=dict)
    clamped: tuple = ()
    rollers: dict = field(default_factory=dict)
    length: tuple = ()

    def __post_init__(self):
        d = self.spatial_dim
        if d not in (1, 2, 3):
            raise ExampleError("spatial_dim must be 1, 2 or 3")
        if not self.lame_mu > 0 or self.lame_lambda < 0:
            raise ExampleError("need lame_mu > 0 and lame_lambda >= 0")
        self.length = tuple(float(a) for a in self.length) or (1.0,) * d
        self.traction = {f: np.asarray(t, dtype=float).reshape(d) for f, t in self.traction.items()}
        self.clamped = tuple(self.clamped)
        self.rollers = {f: tuple(int(i) for i in comps) for f, comps in self.rollers.items()}
        for f in list(self.traction) + list(self.clamped) + list(self.rollers):
            face_normal(f, d)

    @property
    def young_1d(self) -> float:
        return self.lame_lambda + 2.0 * self.lame_mu

    def faces(self) -> list[str]:
        return [f"x{a}{s}" for a in range(self.spatial_dim) for s in FACE_SIDES]

    def fixed_components(self, face: str) -> tuple[int, ...]:
        if face in self.clamped:
            return tuple(range(self.spatial_dim))
        return self.rollers.get(face, ())

    def face_traction(self, face: str) -> np.ndarray:
        return self.traction.get(face, np.zeros(self.spatial_dim))

    def constitutive_tensor(self) -> np.ndarray:
        """``c[i, j, k, l]`` with ``W = ½ c[i,j,k,l] e[i,j] e[k,l]``."""
        d = self.spatial_dim
        I = np.eye(d)
        lam, mu = self.lame_lambda, self.lame_mu
        return lam * np.einsum("ij,kl->ijkl", I, I) + mu * (np.einsum("ik,jl->ijkl", I, I) + np.einsum("il,jk->ijkl", I, I))

    def stress(self, grad_u) -> np.ndarray:
        """``σ = λ tr(e) I + 2μ e`` for ``grad_u`` of shape ``(d, d, ...)``."""
        grad_u = np.asarray(grad_u, dtype=float)
        d = self.spatial_dim
        e = 0.5 * (grad_u + np.swapaxes(grad_u, 0, 1))
        tr = np.trace(e, axis1=0, axis2=1)
        eye = np.eye(d).reshape((d, d) + (1,) * (grad_u.ndim - 2))
        return self.lame_lambda * tr * eye + 2.0 * self.lame_mu * e


def elasticity_model(spec: ElasticitySpec) -> LagrangianModel:
    d = spec.spatial_dim
    chart = ChartSpec(d, d, tuple(f"X{I}" for I in range(d)), tuple(f"u{i}" for i in range(d)))

    def L(x, y, v):
        v = np.asarray(v, dtype=float)
        return 0.5 * np.sum(spec.stress(v) * 0.5 * (v + np.swapaxes(v, 0, 1)), axis=(0, 1))

    def dL_dx(x, y, v):
        return np.zeros_like(np.asarray(x, dtype=float))

    def dL_dy(x, y, v):
        return np.zeros_like(np.asarray(y, dtype=float))

    def dL_dv(x, y, v):
        return spec.stress(v)

    return LagrangianModel(chart, L, dL_dx, dL_dy, dL_dv, name="elastostatics", boundary=spec, params={"spec": spec})


def boundary_form_beta(spec: ElasticitySpec, face) -> np.ndarray:
    """``B[i, I] = τ_i n_I`` so that ``B^I_i n_I = τ_i`` for a unit normal."""
    n = face_normal(face, spec.spatial_dim)
    tau = spec.face_traction(face) if isinstance(face, str) else np.zeros(spec.spatial_dim)
    return np.outer(tau, n)


def beta_from_traction(tau, normal) -> np.ndarray:
    n = face_normal(normal, len(np.atleast_1d(tau)))
    return np.outer(np.asarray(tau, dtype=float), n)


def rod_spec(tau: float = 2.0, young: float = 1.0, length: float = 1.0) -> ElasticitySpec:
    """1D rod clamped at ``x = 0`` with end traction ``τ`` at ``x = length``."""
    return ElasticitySpec(1, 0.0, 0.5 * young, traction={"x0+": [tau]}, clamped=("x0-",), length=(length,))


def patch_spec(lame_lambda: float = 1.0, lame_mu: float = 1.0, sigma0: float = 1.0) -> ElasticitySpec:
    """Unit square under uniaxial tension with symmetry rollers (plane strain)."""
    return ElasticitySpec(
        2, lame_lambda, lame_mu,
        traction={"x0+": [sigma0, 0.0]},
        rollers={"x0-": (0,), "x1-": (1,)},
    )


def patch_closed_form(lame_lambda: float, lame_mu: float, sigma0: float) -> tuple[float, float]:
    """Strains ``(e_xx, e_yy)`` for plane-strain uniaxial stress ``σ_xx = σ0``."""
    lam, mu = lame_lambda, lame_mu
    denom = 4.0 * mu * (lam + mu)
    return sigma0 * (lam + 2.0 * mu) / denom, -sigma0 * lam / denom


# ---------------------------------------------------------------- catalog
def make_example(example, params: dict | None = None) -> LagrangianModel:
    params = dict(params or {})
    try:
        eid = ExampleId(example)
    except ValueError:
        raise ExampleError(f"unknown example {example!r}") from None
    if eid is ExampleId.WAVE:
        pot = params.get("potential")
        coeffs = None if pot in (None, "", "0") else parse_potential(pot, params)
        return wave_model(coeffs)
    if eid is ExampleId.MAXWELL:
        return maxwell_model(int(params.get("base_dim", 3)))
    if eid is ExampleId.NONHOLONOMIC:
        constrained = str(params.get("constrained", "true")).lower() not in ("0", "false", "no")
        return nonholonomic_model(planar_particle(constrained, float(params.get("speed", 1.0))))
    d = int(params.get("dim", 1))
    if d == 1:
        young = float(params.get("young", params.get("E", 1.0)))
        spec = rod_spec(float(params.get("tau", 2.0)), young, float(params.get("length", 1.0)))
    else:
        spec = patch_spec(float(params.get("lambda", 1.0)), float(params.get("mu", 1.0)), float(params.get("tau", 1.0)))
    return elasticity_model(spec)


# ------------------------------------------------------ analytic reference data
def wave_solution(k: float = 1.0, m: float = 0.0):
    """``φ = sin(k x - ω t)`` with ``ω² = k² + m²`` and its jet."""
    omega = float(np.sqrt(k * k + m * m))

    def phi(t, x):
        return np.sin(k * x - omega * t)

    def jet(t, x):
        c = np.cos(k * x - omega * t)
        return np.stack([np.stack([-omega * c, k * c])])

    return phi, jet, omega


def maxwell_solution(k: float = 1.0, base_dim: int = 3):
    """``A = (0, ..., 0, sin(k(x - t)))`` and its jet ``v[A, mu] = ∂_mu A_A``."""

    def potential(coords):
        t, x = coords[0], coords[1]
        out = np.zeros((base_dim,) + np.shape(t))
        out[base_dim - 1] = np.sin(k * (x - t))
        return out

    def jet(coords):
        t, x = coords[0], coords[1]
        out = np.zeros((base_dim, base_dim) + np.shape(t))
        c = k * np.cos(k * (x - t))
        out[base_dim - 1, 0] = -c
        out[base_dim - 1, 1] = c
        return out

    return potential, jet


def nonholonomic_exact(t, speed: float = 1.0):
    """Closed-form trajectory of :func:`planar_particle` from ``t0 = 0``.

    Returns ``(q, v, lam)`` with ``λ`` the multiplier in ``ṗ = λ A^T``.
    """
    t = np.asarray(t, dtype=float)
    s = np.sqrt(1.0 + t * t)
    q = np.stack([speed * np.arcsinh(t), speed * (s - 1.0)], axis=-1)
    v = np.stack([speed / s, speed * t / s], axis=-1)
    lam = speed / s**3
    return q, v, lam


def rod_displacement(spec: ElasticitySpec, x):
    tau = spec.face_traction("x0+")[0]
    return tau * np.asarray(x, dtype=float) / spec.young_1d
