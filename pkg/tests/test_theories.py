import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hpfield.jet import prolong_section
from hpfield.theories import (
    ElasticitySpec,
    ExampleError,
    ExampleId,
    beta_from_traction,
    boundary_form_beta,
    face_normal,
    make_example,
    maxwell_model,
    maxwell_momentum_sign,
    maxwell_solution,
    nonholonomic_exact,
    parse_potential,
    patch_closed_form,
    patch_spec,
    planar_particle,
    rod_displacement,
    rod_spec,
    wave_model,
    wave_solution,
)


# ---------------------------------------------------------------- potentials
@pytest.mark.parametrize(
    "text,params,expected",
    [
        ("-0.5*m^2*phi^2", {"m": 2.0}, [0, 0, -2.0]),
        ("-0.5*m**2", {"m": 1.0}, [0, 0, -0.5]),
        ("phi^4/4 - phi", {}, [0, -1, 0, 0, 0.25]),
        ("3", {}, [0, 0, 3.0]),
    ],
)
def test_parse_potential(text, params, expected):
    np.testing.assert_allclose(parse_potential(text, params), expected)


@pytest.mark.parametrize("text", ["k*phi^2", "sin(phi)", "phi^("])
def test_parse_potential_rejects(text):
    with pytest.raises(Exception):
        parse_potential(text, {})


def test_wave_model_source_is_potential_derivative():
    model = wave_model([0, 0, -0.5, 0, 0.25])
    y = np.linspace(-1, 1, 5)[None]
    np.testing.assert_allclose(model.hyperbolic_source(y)[0], -y[0] + y[0] ** 3)


@settings(max_examples=20, deadline=None)
@given(k=st.floats(0.5, 3.0), m=st.floats(0.0, 2.0))
def test_wave_solution_jet_is_derivative(k, m):
    phi, jet, omega = wave_solution(k, m)
    assert omega**2 == pytest.approx(k * k + m * m)
    t, x = 0.3, 0.7
    eps = 1e-6
    j = jet(np.array(t), np.array(x))
    assert j[0, 0] == pytest.approx((phi(t + eps, x) - phi(t - eps, x)) / (2 * eps), abs=1e-7)
    assert j[0, 1] == pytest.approx((phi(t, x + eps) - phi(t, x - eps)) / (2 * eps), abs=1e-7)


# ------------------------------------------------------------------- maxwell
@pytest.mark.parametrize("b", [2, 3, 4])
def test_maxwell_momentum_antisymmetric_and_sign(b, rng):
    model = maxwell_model(b)
    v = rng.uniform(-1, 1, (b, b, 4))
    pa = model.dL_dv(np.zeros((b, 4)), np.zeros((b, 4)), v)
    np.testing.assert_array_equal(pa, -np.swapaxes(pa, 0, 1))
    assert maxwell_momentum_sign(model) == "-"


def test_maxwell_bad_dim():
    with pytest.raises(ExampleError):
        maxwell_model(5)


def test_maxwell_plane_wave_jet():
    pot, jet = maxwell_solution(2.0, 3)
    ax = np.linspace(0, 1, 9)
    coords = np.stack(np.meshgrid(ax, ax, ax, indexing="ij"))
    v = prolong_section(pot(coords), (ax[1],) * 3)
    np.testing.assert_allclose(v, jet(coords), atol=5e-2)


# -------------------------------------------------------------- nonholonomic
def test_exact_trajectory_satisfies_constraint_and_equations():
    spec = planar_particle()
    t = np.linspace(0, 2, 41)
    q, v, lam = nonholonomic_exact(t)
    np.testing.assert_allclose(v[:, 1] - t * v[:, 0], 0.0, atol=1e-15)
    # ṗ = λ Aᵀ with A = (-t, 1)
    dv = np.gradient(v, t, axis=0, edge_order=2)
    np.testing.assert_allclose(dv[:, 0], -t * lam, atol=5e-3)
    np.testing.assert_allclose(dv[:, 1], lam, atol=5e-3)
    np.testing.assert_allclose(spec.violation(0.0, q[0], v[0]), 0.0)


def test_inconsistent_initial_data_rejected():
    spec = planar_particle()
    with pytest.raises(ExampleError):
        type(spec)(**{**spec.__dict__, "v0": np.array([1.0, 1.0])})


# -------------------------------------------------------------- elastostatics
@pytest.mark.parametrize("face,d,expected", [("x0-", 1, [-1.0]), ("x1+", 2, [0.0, 1.0]), ((3.0, 4.0), 2, [0.6, 0.8])])
def test_face_normal(face, d, expected):
    np.testing.assert_allclose(face_normal(face, d), expected)


@pytest.mark.parametrize("face", ["x2+", "y0-", (0.0, 0.0)])
def test_face_normal_rejects(face):
    with pytest.raises(ExampleError):
        face_normal(face, 2)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-10, 10), min_size=3, max_size=3), st.lists(st.floats(-1, 1), min_size=3, max_size=3))
def test_beta_reproduces_traction(tau, normal):
    n = np.asarray(normal)
    if np.linalg.norm(n) < 1e-3:
        return
    B = beta_from_traction(tau, n)
    np.testing.assert_allclose(B @ (n / np.linalg.norm(n)), tau, atol=1e-12)


def test_beta_on_axis_faces_is_exact():
    spec = patch_spec(1.0, 1.0, 2.5)
    B = boundary_form_beta(spec, "x0+")
    assert np.array_equal(B @ face_normal("x0+", 2), spec.face_traction("x0+"))


@pytest.mark.parametrize("lam,mu", [(0.0, 0.5), (1.0, 1.0), (2.0, 0.3)])
def test_constitutive_tensor_symmetries(lam, mu, rng):
    spec = ElasticitySpec(2, lam, mu)
    C = spec.constitutive_tensor()
    np.testing.assert_allclose(C, np.transpose(C, (1, 0, 2, 3)))
    np.testing.assert_allclose(C, np.transpose(C, (2, 3, 0, 1)))
    g = rng.normal(size=(2, 2))
    e = 0.5 * (g + g.T)
    np.testing.assert_allclose(spec.stress(g), lam * np.trace(e) * np.eye(2) + 2 * mu * e)


@pytest.mark.parametrize("lam,mu,s0", [(1.0, 1.0, 1.0), (0.0, 2.0, -0.5), (3.0, 0.4, 2.0)])
def test_patch_closed_form_gives_uniaxial_plane_strain(lam, mu, s0):
    exx, eyy = patch_closed_form(lam, mu, s0)
    sigma = ElasticitySpec(2, lam, mu).stress(np.diag([exx, eyy]))
    np.testing.assert_allclose(sigma, [[s0, 0.0], [0.0, 0.0]], atol=1e-14)


def test_rod_young_modulus():
    spec = rod_spec(tau=3.0, young=2.0)
    assert spec.young_1d == 2.0
    assert rod_displacement(spec, 1.0) == pytest.approx(1.5)


@pytest.mark.parametrize("kwargs", [dict(lame_mu=0.0), dict(lame_lambda=-1.0), dict(traction={"x3+": [1.0, 0.0]})])
def test_elasticity_spec_validation(kwargs):
    base = dict(spatial_dim=2, lame_lambda=1.0, lame_mu=1.0)
    with pytest.raises(ExampleError):
        ElasticitySpec(**{**base, **kwargs})


# ------------------------------------------------------------------- catalog
@pytest.mark.parametrize("eid", list(ExampleId))
def test_make_example_builds_every_theory(eid):
    model = make_example(eid.value)
    assert model.name == eid.value


def test_make_example_unknown():
    with pytest.raises(ExampleError):
        make_example("heat")
