import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hpfield import verify as V
from hpfield.solver import DiscreteSection, NewtonConfig, NewtonError, assemble_residual, hp_action, newton_solve
from hpfield.solver.energy import dirac_report, energy_report
from hpfield.solver.hyperbolic import CFLError, march_hyperbolic, periodic_laplacian
from hpfield.solver.newton import fd_jacobian
from hpfield.solver.nonholonomic import (
    constraint_violations,
    energy_law_residuals,
    initial_state,
    integrate,
    nonholonomic_step,
    planar_reference,
)
from hpfield.solver.residual import trapezoid_weights, variational_consistency
from hpfield.solver.section import interior_mask
from hpfield.theories import (
    ElasticitySpec,
    elasticity_model,
    maxwell_model,
    nonholonomic_exact,
    planar_particle,
    rod_spec,
    wave_model,
)


# ------------------------------------------------------------------ section
def test_section_energy_is_zero_after_update(rng):
    model = wave_model([0, 0, -0.5])
    sec = DiscreteSection.zeros(model, (5, 6), (0.1, 0.2))
    sec.update(y=rng.normal(size=(1, 5, 6)), v=rng.normal(size=(1, 2, 5, 6)), pa=rng.normal(size=(1, 2, 5, 6)))
    assert np.abs(sec.energy()).max() < 1e-14


def test_section_flat_roundtrip(rng):
    model = maxwell_model(2)
    sec = DiscreteSection.zeros(model, (4, 5), (0.1, 0.1))
    z = rng.normal(size=sec.size)
    np.testing.assert_array_equal(sec.with_flat(z).flat(), z)


def test_section_shape_validation():
    with pytest.raises(ValueError):
        DiscreteSection(wave_model(), (0.1,), np.zeros((1, 4, 4)), np.zeros((1, 2, 4, 4)), np.zeros((1, 2, 4, 4)))


@pytest.mark.parametrize("ext,width,count", [((5, 5), 1, 9), ((7, 6), 2, 6), ((4,), 1, 2)])
def test_interior_mask(ext, width, count):
    assert interior_mask(ext, width).sum() == count


@pytest.mark.parametrize("ext", [(3,), (4, 5), (3, 3, 4)])
def test_trapezoid_weights_integrate_constants(ext):
    h = tuple(0.1 * (k + 1) for k in range(len(ext)))
    vol = np.prod([(m - 1) * s for m, s in zip(ext, h)])
    assert trapezoid_weights(ext, h).sum() == pytest.approx(vol)


# ----------------------------------------------------------------- residual
def test_residual_vanishes_for_linear_fields():
    # φ = a t + b x is an exact discrete solution of the free wave equation
    model = wave_model()
    ax = np.linspace(0, 1, 6)
    T, X = np.meshgrid(ax, ax, indexing="ij")
    sec = DiscreteSection.from_fields(model, (ax[1], ax[1]), (0.3 * T - 0.7 * X)[None])
    assert assemble_residual(model, sec).norm_inf() < 1e-13


@settings(max_examples=10, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_variational_consistency_random_small(seed):
    rng = np.random.default_rng(seed)
    model = wave_model([0, 0, -0.5, 0.2])
    sec = DiscreteSection(model, (0.3, 0.4), rng.uniform(-1, 1, (1, 8, 8)), rng.uniform(-1, 1, (1, 2, 8, 8)),
                          rng.uniform(-1, 1, (1, 2, 8, 8)))
    assert variational_consistency(model, sec)["max"] < 1e-5


def test_variational_consistency_elastic_traction_rows():
    spec = rod_spec(2.0)
    model = elasticity_model(spec)
    rng = np.random.default_rng(1)
    sec = DiscreteSection(model, (0.1,), rng.normal(size=(1, 9)), rng.normal(size=(1, 1, 9)), rng.normal(size=(1, 1, 9)))
    assert variational_consistency(model, sec)["max"] < 1e-5


def test_action_of_exact_rod_is_stationary_under_fd():
    spec = rod_spec(2.0)
    model = elasticity_model(spec)
    x = np.linspace(0, 1, 9)
    sec = DiscreteSection.from_fields(model, (x[1],), (2.0 * x)[None])
    S0 = hp_action(model, sec)
    z = sec.flat()
    d = np.zeros_like(z)
    d[3] = 1e-4
    assert abs(hp_action(model, sec.with_flat(z + d)) - S0) < 1e-7


# ------------------------------------------------------------------- newton
def test_fd_jacobian_linear_map(rng):
    A = rng.normal(size=(4, 3))
    np.testing.assert_allclose(fd_jacobian(lambda z: A @ z, rng.normal(size=3), 1e-6), A, atol=1e-9)


def test_newton_requires_boundary():
    model = wave_model()
    with pytest.raises(ValueError):
        newton_solve(model, DiscreteSection.zeros(model, (4, 4), (0.1, 0.1)))


def test_newton_reports_failure_when_capped():
    spec = ElasticitySpec(2, 1.0, 1.0, traction={"x0+": [1.0, 0.0]}, clamped=("x0-",))
    model = elasticity_model(spec)
    sec = DiscreteSection.zeros(model, (4, 4), (1 / 3, 1 / 3))
    with pytest.raises(NewtonError) as err:
        newton_solve(model, sec, NewtonConfig(tol=1e-30, max_iter=1))
    assert err.value.iterations <= 1


@pytest.mark.parametrize("n", [5, 11, 21])
def test_rod_solution_is_grid_independent(n):
    out = V.rod_study(n)
    assert out["passed"] and out["iterations"] >= 1


@pytest.mark.parametrize("lam,mu", [(1.0, 1.0), (0.5, 2.0)])
def test_patch_uniform_stress(lam, mu):
    out = V.patch_study(5, lam, mu, 0.7)
    assert out["passed"]
    assert out["symmetry"] < 1e-10


def test_underconstrained_body_is_singular():
    # traction on both x-faces and no support: rigid translation is free
    spec = ElasticitySpec(1, 0.0, 0.5, traction={"x0+": [1.0], "x0-": [1.0]})
    with pytest.raises(NewtonError, match="singular"):
        V.solve_elastostatics(spec, (6,))


# --------------------------------------------------------------- hyperbolic
def test_periodic_laplacian_of_sine():
    x = np.arange(64) * 2 * np.pi / 64
    h = x[1]
    lap = periodic_laplacian(np.sin(x)[None], (h,))
    np.testing.assert_allclose(lap[0], -np.sin(x) * (2 - 2 * np.cos(h)) / h**2, atol=1e-12)


def test_cfl_violation_rejected():
    model = wave_model()
    y = np.zeros((1, 16, 16))
    with pytest.raises(CFLError):
        march_hyperbolic(model, y, y, 0.8, (1.0, 1.0), 4)


def test_march_requires_hyperbolic_form():
    with pytest.raises(ValueError):
        march_hyperbolic(elasticity_model(rod_spec()), np.zeros((1, 8)), np.zeros((1, 8)), 0.1, (1.0,), 4)


def test_wave_march_second_order():
    out = V.wave_march_study((32, 64))
    assert out["passed"], out["error_orders"]


def test_klein_gordon_detects_wrong_dispersion():
    out = V.klein_gordon_study((32, 64))
    assert out["passed"]
    assert min(out["wrong_omega_residuals"]) > 0.5


# ------------------------------------------------------------------- energy
def test_energy_report_on_reference_sections():
    model, sec = V.wave_reference_section(32, m=1.0)
    rep = energy_report(model, sec)
    assert rep["energy_max"] < 1e-14
    assert rep["energy_law_max"] < 0.1


def test_dirac_report_flags_perturbed_section():
    model, sec = V.wave_reference_section(64)
    assert dirac_report(model, sec)["passed"]
    bad = sec.copy().update(pa=sec.pa + 0.5)
    assert not dirac_report(model, bad)["passed"]


# ------------------------------------------------------------- nonholonomic
def test_step_preserves_constraint_and_energy_law():
    spec = planar_particle()
    states = integrate(spec, 1.0, 16)
    assert constraint_violations(spec, states).max() < 1e-12
    assert energy_law_residuals(spec, states).max() < 1e-10


def test_midpoint_matches_exact_solution():
    spec = planar_particle()
    errs = []
    for n in (20, 40):
        q = integrate(spec, 1.0, n)[-1].q
        errs.append(np.abs(q - nonholonomic_exact(1.0)[0]).max())
    assert 3.5 < errs[0] / errs[1] < 4.5


def test_reference_matches_closed_form():
    q, v = planar_reference(planar_particle(), 1.0, 0.05)
    qe, ve, _ = nonholonomic_exact(1.0)
    np.testing.assert_allclose(q, qe, atol=1e-10)
    np.testing.assert_allclose(v, ve, atol=1e-10)


def test_unconstrained_particle_moves_freely():
    spec = planar_particle(constrained=False, speed=2.0)
    s1 = nonholonomic_step(spec, initial_state(spec), 0.25)
    np.testing.assert_allclose(s1.q, [0.5, 0.0])
    assert s1.lam.size == 0


def test_multiplier_tracks_exact_value():
    spec = planar_particle()
    states = integrate(spec, 1.0, 80)
    lam_mid = states[40].lam[0]
    t_mid = 0.5 * (states[39].t + states[40].t)
    assert lam_mid == pytest.approx(nonholonomic_exact(t_mid)[2], rel=1e-3)
