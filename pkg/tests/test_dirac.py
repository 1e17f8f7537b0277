import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hpfield import verify as V
from hpfield.dirac import (
    ConstraintSubspace,
    GradedPair,
    PartialMultivectorCoeffs,
    canonical_omega_M,
    canonical_theta,
    constrained_membership,
    contract_partial,
    contract_partial_plus_dy,
    contraction_equivalence,
    dnx,
    energy_conservation_residual,
    exterior_derivative_fd,
    graph_membership,
    graph_pair,
    grid_cell_coefficients,
    isotropy_suite,
    lagrange_dirac_check,
    lagrange_dirac_coefficients,
    lagrange_dirac_grid,
    omega_E,
    pairing_matrix,
    pairing_minus,
    pairing_plus,
    sampled_maximality,
    volume_form,
)
from hpfield.exterior import FORM, VECTOR, ExteriorElement, ExteriorError, random_element, wedge
from hpfield.jet import ChartSpec, PontryaginPoint, generalized_energy, legendre_transform, random_jet_point
from hpfield.theories import make_example, maxwell_model, nonholonomic_exact, planar_particle, wave_model

seeds = st.integers(0, 2**32 - 1)


def _point(model, rng):
    x, y, v = random_jet_point(model.chart, rng)
    pa, p = legendre_transform(model, x, y, v)
    return PontryaginPoint(x, y, v, p, pa)


# ---------------------------------------------------------- canonical forms
def test_wave_chart_omega_by_hand():
    # chart (t, x, phi, v_t, v_x, p, p^t, p^x)
    omega = canonical_omega_M(ChartSpec(2, 1))
    assert omega.coeffs == {(0, 1, 5): -1.0, (0, 2, 7): -1.0, (1, 2, 6): 1.0}


@pytest.mark.parametrize("b", [1, 2, 3])
def test_dnx_is_contraction_of_volume(b):
    chart = ChartSpec(b, 1)
    for mu in range(b):
        assert wedge(ExteriorElement.basis(chart.pontryagin_dim, [mu], FORM), dnx(chart, mu)) == volume_form(chart)


@pytest.mark.parametrize("b,N", [(1, 1), (2, 1), (2, 2), (3, 1)])
def test_omega_M_is_minus_d_theta(b, N, rng):
    chart = ChartSpec(b, N)
    z = rng.uniform(-1, 1, chart.pontryagin_dim)
    dtheta = exterior_derivative_fd(lambda w: canonical_theta(chart, PontryaginPoint.from_vector(chart, w)), z)
    assert (dtheta + canonical_omega_M(chart)).norm_inf() < 1e-9


@pytest.mark.parametrize("model", [wave_model([0, 0, -0.5, 0, 0.1]), maxwell_model(2)])
def test_omega_E_is_minus_d_of_shifted_theta(model, rng):
    chart = model.chart
    z = rng.uniform(-1, 1, chart.pontryagin_dim)

    def theta_E(w):
        pt = PontryaginPoint.from_vector(chart, w)
        return canonical_theta(chart, pt) - generalized_energy(model, pt) * volume_form(chart)

    got = exterior_derivative_fd(theta_E, z)
    assert (got + omega_E(model, PontryaginPoint.from_vector(chart, z))).norm_inf() < 1e-8


# --------------------------------------------------------------- contraction
@pytest.mark.parametrize("n", [0, 1, 2, 3])
@pytest.mark.parametrize("N", [1, 2])
def test_contraction_closed_form(n, N):
    res = contraction_equivalence(n, N, samples=40, seed=n * 10 + N)
    assert res.passed, res.summary()
    assert res.details["plus_dy_variant_gap"] > 0.1


@settings(max_examples=25, deadline=None)
@given(seed=seeds)
def test_plus_dy_variant_differs_only_in_dy(seed):
    chart = ChartSpec(2, 2)
    X = PartialMultivectorCoeffs.random(chart, np.random.default_rng(seed))
    diff = contract_partial_plus_dy(X) - contract_partial(X)
    assert all(chart.base_dim <= m[0] < chart.base_dim + chart.fiber_dim for m in diff.coeffs)


def test_coefficient_shape_check():
    with pytest.raises(ExteriorError):
        PartialMultivectorCoeffs(ChartSpec(2, 1), np.zeros((1, 2)), np.zeros((1, 2)), np.zeros(2))


# ------------------------------------------------------------------ pairings
@settings(max_examples=30, deadline=None)
@given(seed=seeds, n=st.integers(0, 2), data=st.data())
def test_graph_pairs_isotropic_for_any_form(seed, n, data):
    rng = np.random.default_rng(seed)
    dim = n + 4
    omega = random_element(rng, dim, n + 2, FORM)
    r = data.draw(st.integers(1, n + 1))
    s = data.draw(st.integers(1, n + 2 - r))
    a = graph_pair(random_element(rng, dim, r, VECTOR), omega, n)
    b = graph_pair(random_element(rng, dim, s, VECTOR), omega, n)
    assert pairing_minus(a, b).norm_inf() < 1e-12


@settings(max_examples=30, deadline=None)
@given(seed=seeds, n=st.integers(0, 2), data=st.data())
def test_pairing_graded_antisymmetry(seed, n, data):
    rng = np.random.default_rng(seed)
    dim = n + 4
    r = data.draw(st.integers(1, n + 1))
    s = data.draw(st.integers(1, n + 2 - r))
    a = GradedPair(random_element(rng, dim, r, VECTOR), random_element(rng, dim, n + 2 - r, FORM), n)
    b = GradedPair(random_element(rng, dim, s, VECTOR), random_element(rng, dim, n + 2 - s, FORM), n)
    assert (pairing_minus(a, b) + (-1) ** (r * s) * pairing_minus(b, a)).norm_inf() < 1e-14


def test_symmetric_pairing_vanishes_on_diagonal_at_degree_one(rng):
    omega = canonical_omega_M(ChartSpec(1, 1))
    a = GradedPair(random_element(rng, 5, 1, VECTOR), random_element(rng, 5, 1, FORM), 0)
    assert pairing_plus(a, a).norm_inf() == 0.0
    assert pairing_minus(a, a).norm_inf() > 0.0
    g = graph_pair(random_element(rng, 5, 1, VECTOR), omega, 0)
    assert pairing_minus(g, g).norm_inf() < 1e-15


def test_pairing_above_top_degree_is_zero(rng):
    omega = canonical_omega_M(ChartSpec(2, 1))
    a = graph_pair(random_element(rng, 8, 2, VECTOR), omega, 1)
    b = graph_pair(random_element(rng, 8, 2, VECTOR), omega, 1)
    out = pairing_minus(a, b)
    assert out.grade == 0 and out.is_zero()


def test_graded_pair_degree_check(rng):
    with pytest.raises(ExteriorError):
        GradedPair(random_element(rng, 5, 1, VECTOR), random_element(rng, 5, 2, FORM), 0)


def test_graph_membership(rng):
    omega = canonical_omega_M(ChartSpec(2, 1))
    g = graph_pair(random_element(rng, 8, 2, VECTOR), omega, 1)
    assert graph_membership(g, omega)[0]
    bad = GradedPair(g.X, g.Sigma + ExteriorElement.basis(8, [3], FORM, 1e-6), 1)
    ok, res = graph_membership(bad, omega)
    assert not ok and res == pytest.approx(1e-6)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_isotropy_suite_passes(n):
    results = isotropy_suite(canonical_omega_M(ChartSpec(n + 1, 1)), n, samples=20, seed=n)
    assert all(r.passed for r in results), [r.summary() for r in results if not r.passed]
    detect = results[-1]
    assert detect.details["nonmember_min_pairing"] > 1e-6


def test_injected_defect_fails_isotropy():
    results = isotropy_suite(canonical_omega_M(ChartSpec(1, 1)), 0, samples=10, seed=1, inject=1e-3)
    assert not all(r.passed for r in results if r.check == "graph_isotropy")


@pytest.mark.parametrize("omega,dim", [(ExteriorElement.basis(2, [0, 1], FORM), 2), (canonical_omega_M(ChartSpec(1, 1)), 5)])
def test_sampled_maximality(omega, dim):
    res = sampled_maximality(omega)
    assert res.passed
    assert res.details["dim_D"] == res.details["dim_D_perp"] == dim


def test_degree_one_pairing_matrix_is_split_signature():
    # at r = s = 1 the antisymmetric pairing reduces to the symmetric <X̄,Σ> + <X,Σ̄>
    G = pairing_matrix(canonical_omega_M(ChartSpec(1, 1)))
    np.testing.assert_array_equal(G, G.T)
    eig = np.linalg.eigvalsh(G)
    assert (eig > 0).sum() == (eig < 0).sum() == 5


# ------------------------------------------------------- constrained structure
def test_dependent_annihilator_rejected():
    a = ExteriorElement.covector([1.0, 0.0, 0.0])
    with pytest.raises(ExteriorError):
        ConstraintSubspace([a, 2.0 * a], 3)


def test_constrained_membership_with_empty_constraint_is_graph(rng):
    omega = canonical_omega_M(ChartSpec(1, 1))
    S = ConstraintSubspace([], 5)
    g = graph_pair(random_element(rng, 5, 1, VECTOR), omega, 0)
    assert constrained_membership(S, omega, g)[0]


@pytest.mark.parametrize("t", [0.0, 0.4, 1.3])
def test_mechanics_membership_on_exact_trajectory(t):
    spec = planar_particle()
    q, v, lam = nonholonomic_exact(t)
    assert V.mechanics_dirac_membership(spec, t, q, v, np.array([lam]))[0]
    # λ is fixed by the constraint, not by membership
    assert V.mechanics_dirac_membership(spec, t, q, v, np.array([lam + 0.3]))[0]
    ok, res = V.mechanics_dirac_membership(spec, t, q, v, np.array([lam]), qdot=v + np.array([0.01, 0.0]))
    assert not ok and max(res) > 1e-3
    ok, (res_x, _) = V.mechanics_dirac_membership(spec, t, q, v, np.array([lam]), qdot=v + np.array([0.0, 0.01]))
    assert not ok and res_x > 1e-3


# ------------------------------------------------------------- Lagrange-Dirac
@pytest.mark.parametrize(
    "name,params",
    [("wave", {}), ("wave", {"potential": "-0.5*phi^2+0.1*phi^4"}), ("maxwell", {"base_dim": 2}),
     ("maxwell", {"base_dim": 3}), ("elastostatics", {"dim": 2}), ("nonholonomic", {"constrained": "false"})],
)
def test_lagrange_dirac_pointwise(name, params, rng):
    model = make_example(name, params)
    for _ in range(5):
        pt = _point(model, rng)
        X = lagrange_dirac_coefficients(model, pt, rng)
        for path in ("generic", "closed"):
            assert lagrange_dirac_check(model, X, pt, path=path)[0]
        assert energy_conservation_residual(model, X, pt) < 1e-12


def test_lagrange_dirac_rejects_wrong_momentum(rng):
    model = wave_model()
    pt = _point(model, rng)
    X = lagrange_dirac_coefficients(model, pt)
    pt.pa = pt.pa + 1e-3
    ok, res = lagrange_dirac_check(model, X, pt)
    assert not ok and res == pytest.approx(1e-3, rel=1e-6)


def test_grid_residual_matches_pointwise(rng):
    model, sec = V.wave_reference_section(16, m=1.0)
    grid = lagrange_dirac_grid(model, sec.coords(), sec.y, sec.v, sec.pa, sec.spacings)
    for idx in [(3, 4), (8, 8), (12, 2)]:
        X, pt = grid_cell_coefficients(model, sec.coords(), sec.y, sec.v, sec.pa, sec.spacings, idx)
        assert lagrange_dirac_check(model, X, pt, tol=np.inf)[1] == pytest.approx(grid[idx], rel=1e-9, abs=1e-14)
