import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hpfield.jet import (
    ChartError,
    ChartSpec,
    PontryaginPoint,
    d_generalized_energy,
    generalized_energy,
    legendre_transform,
    partials_consistency,
    prolong_section,
    random_jet_point,
    stencil_derivative,
)
from hpfield.theories import make_example, maxwell_model, wave_model


@pytest.mark.parametrize("b,N", [(1, 1), (2, 1), (3, 2), (4, 4)])
def test_chart_layout(b, N):
    chart = ChartSpec(b, N)
    idx = [chart.ix(m) for m in range(b)] + [chart.iy(A) for A in range(N)]
    idx += [chart.iv(A, m) for A in range(N) for m in range(b)] + [chart.ip]
    idx += [chart.ipa(A, m) for A in range(N) for m in range(b)]
    assert idx == list(range(chart.pontryagin_dim))
    assert len(chart.coordinate_names()) == chart.pontryagin_dim


@pytest.mark.parametrize(
    "kwargs",
    [dict(base_dim=0, fiber_dim=1), dict(base_dim=2, fiber_dim=1, base_names=("t",)),
     dict(base_dim=1, fiber_dim=1, base_names=("q",), fiber_names=("q",))],
)
def test_chart_rejects_bad_input(kwargs):
    with pytest.raises(ChartError):
        ChartSpec(**kwargs)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_point_vector_roundtrip(seed):
    chart = ChartSpec(3, 2)
    z = np.random.default_rng(seed).normal(size=chart.pontryagin_dim)
    pt = PontryaginPoint.from_vector(chart, z).check(chart)
    np.testing.assert_array_equal(pt.to_vector(), z)


@pytest.mark.parametrize("model", [wave_model(), wave_model([0, 0, -0.5, 0, 0.25]), maxwell_model(2), maxwell_model(3),
                                   make_example("elastostatics", {"dim": 2, "lambda": 0.7}), make_example("nonholonomic")])
def test_analytic_partials_match_finite_differences(model):
    assert partials_consistency(model, samples=20, seed=1) < 1e-7


def test_legendre_zeroes_energy(rng):
    model = wave_model([0, 0, -0.5, 0, 0.1])
    for _ in range(20):
        x, y, v = random_jet_point(model.chart, rng)
        pa, p = legendre_transform(model, x, y, v)
        assert generalized_energy(model, PontryaginPoint(x, y, v, p, pa)) == pytest.approx(0.0, abs=1e-14)


def test_d_energy_matches_finite_difference(rng):
    model = maxwell_model(3)
    chart = model.chart
    z = rng.uniform(-1, 1, chart.pontryagin_dim)
    dE = d_generalized_energy(model, PontryaginPoint.from_vector(chart, z))
    eps = 1e-6
    for i in range(chart.pontryagin_dim):
        hi, lo = z.copy(), z.copy()
        hi[i] += eps
        lo[i] -= eps
        num = (generalized_energy(model, PontryaginPoint.from_vector(chart, hi))
               - generalized_energy(model, PontryaginPoint.from_vector(chart, lo))) / (2 * eps)
        assert dE.coeff((i,)) == pytest.approx(num, abs=1e-8)


@pytest.mark.parametrize("n", [8, 16, 32])
def test_prolongation_exact_on_quadratics(n):
    x = np.linspace(0, 1, n)
    X, Y = np.meshgrid(x, x, indexing="ij")
    y = (X**2 + 3 * X * Y - Y**2)[None]
    v = prolong_section(y, (x[1], x[1]))
    np.testing.assert_allclose(v[0, 0], 2 * X + 3 * Y, atol=1e-11)
    np.testing.assert_allclose(v[0, 1], 3 * X - 2 * Y, atol=1e-11)


def test_prolongation_second_order():
    errs = []
    for n in (16, 32, 64):
        x = np.linspace(0, 1, n)
        v = prolong_section(np.sin(3 * x)[None], (x[1],))
        errs.append(np.abs(v[0, 0] - 3 * np.cos(3 * x)).max())
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert np.all(orders > 1.8)


def test_stencil_matches_prolongation(rng):
    f = rng.normal(size=(7, 9))
    v = prolong_section(f[None], (0.1, 0.2))
    np.testing.assert_array_equal(v[0, 1], stencil_derivative(f, 1, 0.2))


@pytest.mark.parametrize("shape,h", [((2,), (0.1,)), ((5, 5), (0.1,))])
def test_prolongation_rejects_bad_grids(shape, h):
    with pytest.raises(ChartError):
        prolong_section(np.zeros((1,) + shape), h)
