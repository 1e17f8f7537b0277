"""End-to-end verification routines shared by the CLI and the test suite."""

from __future__ import annotations

import numpy as np

from .dirac import (
    ConstraintSubspace,
    GradedPair,
    canonical_omega_M,
    constrained_membership,
)
from .exterior import ExteriorElement
from .jet import PontryaginPoint, d_generalized_energy
from .solver.energy import dirac_report, energy_report
from .solver.hyperbolic import march_hyperbolic
from .solver.newton import NewtonConfig, newton_solve
from .solver.nonholonomic import (
    constraint_violations,
    energy_law_residuals,
    integrate,
    planar_reference,
)
from .solver.residual import assemble_residual
from .solver.section import DiscreteSection
from .theories import (
    ElasticitySpec,
    NonholonomicSpec,
    elasticity_model,
    maxwell_model,
    maxwell_momentum_sign,
    maxwell_solution,
    nonholonomic_model,
    patch_closed_form,
    patch_spec,
    rod_displacement,
    rod_spec,
    wave_model,
    wave_solution,
)

HYPERBOLIC_MARGIN = 2


def observed_orders(errors, spacings) -> list[float]:
    e, h = np.asarray(errors, dtype=float), np.asarray(spacings, dtype=float)
    return [float(np.log(e[i] / e[i + 1]) / np.log(h[i] / h[i + 1])) for i in range(len(e) - 1)]


def in_order_band(orders, lo: float = 1.8, hi: float = 2.2) -> bool:
    return all(lo <= o <= hi for o in orders)


# ------------------------------------------------------------------- wave
def wave_reference_section(n: int, k: float = 1.0, m: float = 0.0, omega: float | None = None, model=None):
    """Sampled plane wave on ``[0, 2π]²`` with ``n`` points per axis."""
    model = model or wave_model(None if m == 0 else [0.0, 0.0, -0.5 * m * m])
    phi, jet, om = wave_solution(k, m)
    if omega is not None:
        om = omega
        phi = lambda t, x: np.sin(k * x - om * t)
        jet = lambda t, x: np.stack([np.stack([-om * np.cos(k * x - om * t), k * np.cos(k * x - om * t)])])
    h = 2 * np.pi / (n - 1)
    ax = np.arange(n) * h
    T, X = np.meshgrid(ax, ax, indexing="ij")
    return model, DiscreteSection.from_fields(model, (h, h), phi(T, X)[None], jet(T, X))


def wave_residual_study(grids=(32, 64, 128), k: float = 1.0, m: float = 0.0) -> dict:
    res, hs, dirac, energy = [], [], [], []
    for n in grids:
        model, sec = wave_reference_section(n, k, m)
        res.append(assemble_residual(model, sec).interior_norm())
        hs.append(sec.spacings[0])
        dirac.append(dirac_report(model, sec))
        energy.append(energy_report(model, sec))
    orders = observed_orders(res, hs)
    return {"grids": list(grids), "h": hs, "residuals": res, "orders": orders, "dirac": dirac, "energy": energy,
            "passed": in_order_band(orders)}


def wave_march_study(nxs=(32, 64, 128), k: float = 1.0, courant: float = 0.5) -> dict:
    """March ``φ = sin(k(x - t))`` over one period and compare with d'Alembert."""
    model = wave_model()
    phi, _, _ = wave_solution(k)
    errors, resid, hs, dirac, energy = [], [], [], [], []
    for nx in nxs:
        h = 2 * np.pi / nx
        dt = courant * h
        steps = int(round(2 * np.pi / dt))
        x = np.arange(nx) * h
        sec = march_hyperbolic(model, phi(0.0, x)[None], phi(dt, x)[None], dt, (h,), steps)
        t = np.arange(steps + 1) * dt
        errors.append(float(np.abs(sec.y[0] - phi(t[:, None], x[None, :])).max()))
        resid.append(assemble_residual(model, sec).interior_norm(HYPERBOLIC_MARGIN))
        hs.append(h)
        dirac.append(dirac_report(model, sec, width=HYPERBOLIC_MARGIN))
        energy.append(energy_report(model, sec, HYPERBOLIC_MARGIN))
    err_orders = observed_orders(errors, hs)
    res_orders = observed_orders(resid, hs)
    return {"nx": list(nxs), "h": hs, "errors": errors, "error_orders": err_orders, "residuals": resid,
            "residual_orders": res_orders, "dirac": dirac, "energy": energy, "section": sec,
            "passed": in_order_band(err_orders) and in_order_band(res_orders)}


def klein_gordon_study(grids=(32, 64, 128), k: float = 1.0, m: float = 1.0) -> dict:
    """Residual of the sampled KG plane wave at ``ω² = k² + m²`` and at a wrong ``ω = k``."""
    res, hs, wrong, energy = [], [], [], []
    for n in grids:
        model, sec = wave_reference_section(n, k, m)
        res.append(assemble_residual(model, sec).interior_norm())
        energy.append(energy_report(model, sec))
        hs.append(sec.spacings[0])
        _, bad = wave_reference_section(n, k, m, omega=k, model=model)
        wrong.append(assemble_residual(model, bad).interior_norm())
    orders = observed_orders(res, hs)
    return {"grids": list(grids), "omega": float(np.sqrt(k * k + m * m)), "residuals": res, "orders": orders,
            "wrong_omega_residuals": wrong, "energy": energy, "passed": in_order_band(orders) and min(wrong) > 10 * max(res)}


# ---------------------------------------------------------------- maxwell
def maxwell_reference_section(n: int, k: float = 1.0, ny: int = 5):
    model = maxwell_model(3)
    potential, jet = maxwell_solution(k, 3)
    h = 2 * np.pi / (n - 1)
    axes = [np.arange(n) * h, np.arange(n) * h, np.arange(ny) * h]
    coords = np.stack(np.meshgrid(*axes, indexing="ij"))
    return model, DiscreteSection.from_fields(model, (h, h, h), potential(coords), jet(coords))


def maxwell_study(grids=(17, 33, 65), k: float = 1.0) -> dict:
    res, hs, anti, dirac = [], [], [], []
    for n in grids:
        model, sec = maxwell_reference_section(n, k)
        res.append(assemble_residual(model, sec).interior_norm())
        hs.append(sec.spacings[0])
        anti.append(float(np.abs(sec.pa + np.swapaxes(sec.pa, 0, 1)).max()))
        dirac.append(dirac_report(model, sec))
    orders = observed_orders(res, hs)
    sign = maxwell_momentum_sign(maxwell_model(3))
    return {"grids": list(grids), "residuals": res, "orders": orders, "antisymmetry": max(anti),
            "momentum_sign": sign, "dirac": dirac, "passed": in_order_band(orders) and max(anti) <= 1e-14}


# ----------------------------------------------------------- nonholonomic
def nonholonomic_study(spec: NonholonomicSpec, t_end: float = 1.0, steps=(10, 20, 40, 80)) -> dict:
    errors, dts, viol, law = [], [], [], []
    for n in steps:
        states = integrate(spec, t_end, n)
        dt = (t_end - spec.t0) / n
        q_ref, _ = planar_reference(spec, t_end, dt)
        errors.append(float(np.abs(states[-1].q - q_ref).max()))
        dts.append(dt)
        viol.append(float(constraint_violations(spec, states).max()))
        law.append(float(energy_law_residuals(spec, states).max()))
    orders = observed_orders(errors, dts)
    law_bound = [l <= 10.0 * dt * dt for l, dt in zip(law, dts)]
    return {"steps": list(steps), "dt": dts, "errors": errors, "orders": orders, "constraint_max": max(viol),
            "energy_law": law, "passed": in_order_band(orders) and max(viol) <= 1e-10 and all(law_bound)}


def mechanics_dirac_membership(spec: NonholonomicSpec, t: float, q, v, lam, qdot=None) -> tuple[bool, tuple]:
    """Check ``(X, dE) ∈ D_M`` at one state, with ``X`` built from the
    implicit equations (or with a supplied ``q̇``)."""
    model = nonholonomic_model(spec)
    chart = model.chart
    q, v = np.asarray(q, dtype=float), np.asarray(v, dtype=float)
    p = np.asarray(spec.dL_dv(t, q, v))
    p_t = spec.L(t, q, v) - float(p @ v)
    A = spec.A_mat(t, q)
    qdot = v if qdot is None else np.asarray(qdot, dtype=float)
    pdot = np.asarray(spec.dL_dq(t, q, v)) + A.T @ lam
    ptdot = spec.dL_dt(t, q, v) - float(lam @ (A @ v))
    d = spec.config_dim
    comp = np.zeros(chart.pontryagin_dim)
    comp[chart.ix(0)] = 1.0
    for i in range(d):
        comp[chart.iy(i)] = qdot[i]
        comp[chart.ipa(i, 0)] = pdot[i]
    comp[chart.ip] = ptdot
    X = ExteriorElement.vector(comp.tolist())
    pt = PontryaginPoint([t], q, v.reshape(d, 1), p_t, p.reshape(d, 1))
    dE = d_generalized_energy(model, pt)
    forms = []
    for row in A:
        c = np.zeros(chart.pontryagin_dim)
        for i in range(d):
            c[chart.iy(i)] = row[i]
        c[chart.ix(0)] = -float(row @ v)
        forms.append(ExteriorElement.covector(c.tolist()))
    S = ConstraintSubspace(forms, chart.pontryagin_dim)
    return constrained_membership(S, canonical_omega_M(chart), GradedPair(X, dE, 0), 1)


# ---------------------------------------------------------- elastostatics
def solve_elastostatics(spec: ElasticitySpec, extents, cfg: NewtonConfig | None = None):
    model = elasticity_model(spec)
    spacings = tuple(L / (m - 1) for L, m in zip(spec.length, extents))
    sec = DiscreteSection.zeros(model, extents, spacings)
    return model, newton_solve(model, sec, cfg)


def rod_study(n: int = 11, tau: float = 2.0, young: float = 1.0) -> dict:
    spec = rod_spec(tau, young)
    model, result = solve_elastostatics(spec, (n,))
    x = result.section.coords()[0]
    err = float(np.abs(result.section.y[0] - rod_displacement(spec, x)).max())
    blocks = assemble_residual(model, result.section).block_norms()
    return {"n": n, "iterations": result.iterations, "final_residual": result.residual, "max_error": err,
            "traction": blocks.get("traction", 0.0), "dirac": dirac_report(model, result.section),
            "energy": energy_report(model, result.section), "section": result.section,
            "passed": err <= 1e-8 and blocks.get("traction", 0.0) <= 1e-10}


def patch_study(n: int = 7, lame_lambda: float = 1.0, lame_mu: float = 1.0, sigma0: float = 1.0) -> dict:
    spec = patch_spec(lame_lambda, lame_mu, sigma0)
    model, result = solve_elastostatics(spec, (n, n))
    sec = result.section
    X = sec.coords()
    exx, eyy = patch_closed_form(lame_lambda, lame_mu, sigma0)
    disp_err = max(float(np.abs(sec.y[0] - exx * X[0]).max()), float(np.abs(sec.y[1] - eyy * X[1]).max()))
    sigma_exact = np.zeros((2, 2))
    sigma_exact[0, 0] = sigma0
    stress_err = float(np.abs(sec.pa - sigma_exact[:, :, None, None]).max())
    blocks = assemble_residual(model, sec).block_norms()
    return {"n": n, "iterations": result.iterations, "final_residual": result.residual,
            "displacement_error": disp_err, "stress_error": stress_err, "traction": blocks.get("traction", 0.0),
            "symmetry": float(np.abs(sec.pa - np.swapaxes(sec.pa, 0, 1)).max()),
            "dirac": dirac_report(model, sec), "energy": energy_report(model, sec), "section": sec,
            "passed": disp_err <= 1e-8 and stress_err <= 1e-8 and blocks.get("traction", 0.0) <= 1e-10}
