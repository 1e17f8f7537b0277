"""Canonical forms on the Pontryagin chart, partial multivector fields,
graded pairings and multi-Dirac membership tests.

Sign conventions: ``d^n x_mu = ∂_mu ⌟ d^{n+1}x``;
``Θ = p_A^mu dy^A ∧ d^n x_mu + p d^{n+1}x``;
``Ω_M = dy^A ∧ dp_A^mu ∧ d^n x_mu - dp ∧ d^{n+1}x``;
``Ω_E = Ω_M + dE ∧ d^{n+1}x``.  All contractions go through
:func:`hpfield.exterior.interior_left`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exterior import (
    DecomposableMultivector,
    ExteriorElement,
    ExteriorError,
    Variance,
    evaluate,
    interior_left,
    interior_right_decomposable,
    mask_to_blade,
    random_element,
    rng_from,
    wedge,
    wedge_all,
)
from .jet import (
    ChartSpec,
    LagrangianModel,
    PontryaginPoint,
    affine_momentum,
    d_generalized_energy,
    stencil_derivative,
)
from .report import CheckResult

VECTOR, FORM = Variance.VECTOR, Variance.FORM
MEMBERSHIP_TOL = 1e-10
ISOTROPY_TOL = 1e-12


# -------------------------------------------------------------- canonical forms
@lru_cache(maxsize=64)
def volume_form(chart: ChartSpec) -> ExteriorElement:
    """``d^{n+1}x`` on the M-chart."""
    return ExteriorElement.basis(chart.pontryagin_dim, list(range(chart.base_dim)), FORM)


@lru_cache(maxsize=256)
def dnx(chart: ChartSpec, mu: int) -> ExteriorElement:
    """``d^n x_mu = ∂_mu ⌟ d^{n+1}x``."""
    return interior_left(ExteriorElement.basis(chart.pontryagin_dim, [chart.ix(mu)], VECTOR), volume_form(chart))


def _d(chart: ChartSpec, index: int) -> ExteriorElement:
    return ExteriorElement.basis(chart.pontryagin_dim, [index], FORM)


def canonical_theta(chart: ChartSpec, pt: PontryaginPoint) -> ExteriorElement:
    pt.check(chart)
    out = pt.p * volume_form(chart)
    for A in range(chart.fiber_dim):
        dy = _d(chart, chart.iy(A))
        for mu in range(chart.base_dim):
            if pt.pa[A, mu] != 0.0:
                out = out + pt.pa[A, mu] * wedge(dy, dnx(chart, mu))
    return out


@lru_cache(maxsize=64)
def canonical_omega_M(chart: ChartSpec) -> ExteriorElement:
    out = -wedge(_d(chart, chart.ip), volume_form(chart))
    for A in range(chart.fiber_dim):
        dy = _d(chart, chart.iy(A))
        for mu in range(chart.base_dim):
            out = out + wedge(wedge(dy, _d(chart, chart.ipa(A, mu))), dnx(chart, mu))
    return out


def omega_E(model: LagrangianModel, pt: PontryaginPoint) -> ExteriorElement:
    chart = model.chart
    return canonical_omega_M(chart) + wedge(d_generalized_energy(model, pt), volume_form(chart))


def exterior_derivative_fd(form_at, z, eps: float = 1e-6) -> ExteriorElement:
    """Central-difference exterior derivative of a form field at ``z``.

    ``form_at(z)`` returns an :class:`ExteriorElement`; the result is
    ``sum_j sum_I (∂_j a_I) dz^j ∧ dz^I``.
    """
    z = np.asarray(z, dtype=float)
    base = form_at(z)
    dim, grade = base.dim, base.grade
    coeffs: dict[tuple[int, ...], float] = {}
    for j in range(dim):
        hi, lo = z.copy(), z.copy()
        hi[j] += eps
        lo[j] -= eps
        diff = (form_at(hi) - form_at(lo)) * (0.5 / eps)
        for mask, c in diff.terms.items():
            blade = (j,) + mask_to_blade(mask)
            if j not in blade[1:]:
                coeffs[blade] = coeffs.get(blade, 0.0) + c
    return ExteriorElement.from_blades(dim, FORM, coeffs, grade=grade + 1)


# ----------------------------------------------------- partial multivector fields
@dataclass
class PartialMultivectorCoeffs:
    """Coefficients of ``X = ∧_mu (∂_mu + C^A_mu ∂_{y^A} + C^nu_{A mu} ∂_{p_A^nu} + C_mu ∂_p)``.

    ``C[A, mu]``, ``Cp[A, nu, mu] = C^nu_{A mu}``, ``Cp0[mu] = C_mu``.
    """

    chart: ChartSpec
    C: np.ndarray
    Cp: np.ndarray
    Cp0: np.ndarray

    def __post_init__(self):
        b, N = self.chart.base_dim, self.chart.fiber_dim
        self.C = np.asarray(self.C, dtype=float)
        self.Cp = np.asarray(self.Cp, dtype=float)
        self.Cp0 = np.asarray(self.Cp0, dtype=float)
        if self.C.shape != (N, b) or self.Cp.shape != (N, b, b) or self.Cp0.shape != (b,):
            raise ExteriorError("partial multivector coefficient shapes do not match the chart")

    @classmethod
    def random(cls, chart: ChartSpec, rng) -> "PartialMultivectorCoeffs":
        b, N = chart.base_dim, chart.fiber_dim
        return cls(chart, rng.uniform(-1, 1, (N, b)), rng.uniform(-1, 1, (N, b, b)), rng.uniform(-1, 1, b))

    def factors(self) -> list[ExteriorElement]:
        chart = self.chart
        out = []
        for mu in range(chart.base_dim):
            comp = np.zeros(chart.pontryagin_dim)
            comp[chart.ix(mu)] = 1.0
            for A in range(chart.fiber_dim):
                comp[chart.iy(A)] = self.C[A, mu]
                for nu in range(chart.base_dim):
                    comp[chart.ipa(A, nu)] = self.Cp[A, nu, mu]
            comp[chart.ip] = self.Cp0[mu]
            out.append(ExteriorElement.vector(comp.tolist()))
        return out

    def decomposable(self) -> DecomposableMultivector:
        return DecomposableMultivector(self.factors())

    def expand(self) -> ExteriorElement:
        return self.decomposable().expand()


def _contract_components(X: PartialMultivectorCoeffs, dy_sign: float) -> np.ndarray:
    chart = X.chart
    b, N = chart.base_dim, chart.fiber_dim
    trace = np.einsum("all->a", X.Cp)
    comp = np.zeros(chart.pontryagin_dim)
    comp[:b] = X.C.T @ trace - np.einsum("al,alm->m", X.C, X.Cp) - X.Cp0
    comp[b : b + N] = dy_sign * trace
    comp[chart.ip] = 1.0
    comp[chart.ip + 1 :] = X.C.ravel()
    return (-1.0) ** chart.n * comp


def contract_partial(X: PartialMultivectorCoeffs) -> ExteriorElement:
    """Closed form of ``i_X Ω_M``::

        (-1)^{n+2} [(C^A_mu C^l_{Al} - C^A_l C^l_{A mu} - C_mu) dx^mu
                    + C^A_mu dp_A^mu - C^mu_{A mu} dy^A + dp]
    """
    return ExteriorElement.covector(_contract_components(X, -1.0).tolist())


def contract_partial_plus_dy(X: PartialMultivectorCoeffs) -> ExteriorElement:
    """Variant with ``+C^mu_{A mu} dy^A``; kept for reporting the sign gap."""
    return ExteriorElement.covector(_contract_components(X, +1.0).tolist())


def contract_partial_generic(X: PartialMultivectorCoeffs) -> ExteriorElement:
    """``i_X Ω_M`` by expanding the wedge of factors and contracting in the kernel."""
    return interior_left(X.expand(), canonical_omega_M(X.chart))


def contraction_equivalence(n: int, N: int, samples: int = 200, seed=None) -> CheckResult:
    chart = ChartSpec(n + 1, N)
    rng = rng_from(seed)
    worst = worst_plus = 0.0
    for _ in range(samples):
        X = PartialMultivectorCoeffs.random(chart, rng)
        generic = contract_partial_generic(X)
        scale = max(1.0, generic.norm_inf())
        worst = max(worst, (contract_partial(X) - generic).norm_inf() / scale)
        worst_plus = max(worst_plus, (contract_partial_plus_dy(X) - generic).norm_inf() / scale)
    return CheckResult(
        f"contraction_n{n}_N{N}", samples, worst, ISOTROPY_TOL, details={"plus_dy_variant_gap": worst_plus}
    )


# --------------------------------------------------------------------- pairings
@dataclass(frozen=True)
class GradedPair:
    """``(X, Σ)`` with ``grade(X) + grade(Σ) = n + 2``."""

    X: ExteriorElement
    Sigma: ExteriorElement
    n: int

    def __post_init__(self):
        if self.X.variance is not VECTOR or self.Sigma.variance is not FORM:
            raise ExteriorError("GradedPair expects (multivector, form)")
        if self.X.dim != self.Sigma.dim:
            raise ExteriorError("GradedPair dimension mismatch")
        if self.X.grade + self.Sigma.grade != self.n + 2:
            raise ExteriorError(f"grades {self.X.grade} + {self.Sigma.grade} != n + 2 = {self.n + 2}")

    @property
    def r(self) -> int:
        return self.X.grade

    @property
    def dim(self) -> int:
        return self.X.dim


def graph_pair(X: ExteriorElement, omega: ExteriorElement, n: int) -> GradedPair:
    return GradedPair(X, interior_left(X, omega), n)


def _pairing(a: GradedPair, b: GradedPair, sign: float) -> ExteriorElement:
    if a.dim != b.dim or a.n != b.n:
        raise ExteriorError("pairing: dimension or degree mismatch")
    r, s = a.r, b.r
    if r + s > a.n + 2:
        return ExteriorElement.zero(a.dim, 0, FORM)
    first = interior_left(b.X, a.Sigma)
    second = interior_left(a.X, b.Sigma)
    return 0.5 * (first + (sign * (-1.0) ** (r * s)) * second)


def pairing_minus(a: GradedPair, b: GradedPair) -> ExteriorElement:
    """``½(i_{X̄} Σ - (-1)^{rs} i_X Σ̄)``."""
    return _pairing(a, b, -1.0)


def pairing_plus(a: GradedPair, b: GradedPair) -> ExteriorElement:
    """``½(i_{X̄} Σ + (-1)^{rs} i_X Σ̄)``."""
    return _pairing(a, b, +1.0)


def graph_membership(pair: GradedPair, omega: ExteriorElement, tol: float = MEMBERSHIP_TOL):
    """``(‖Σ - i_X Ω‖∞ <= tol, residual)``."""
    residual = (pair.Sigma - interior_left(pair.X, omega)).norm_inf()
    return residual <= tol, residual


# ---------------------------------------------------------- constrained structure
class ConstraintSubspace:
    """Subspace ``S`` given by a basis of its annihilator ``S°`` (1-forms)."""

    def __init__(self, annihilator_basis, dim: int, rank_tol: float = 1e-12):
        basis = list(annihilator_basis)
        for f in basis:
            if f.variance is not FORM or f.grade != 1 or f.dim != dim:
                raise ExteriorError("annihilator basis must consist of 1-forms on the chart")
        self.dim = dim
        self.annihilator_basis = basis
        if basis:
            mat = np.array([[f.coeff((i,)) for i in range(dim)] for f in basis])
            _, sv, vt = np.linalg.svd(mat, full_matrices=False)
            if sv[-1] <= rank_tol * max(1.0, sv[0]):
                raise ExteriorError("degenerate constraint subspace: annihilator basis is linearly dependent")
            self._ortho = [ExteriorElement.covector(row.tolist()) for row in vt]
        else:
            self._ortho = []

    @property
    def codim(self) -> int:
        return len(self._ortho)

    def annihilator_wedges(self, grade: int) -> list[ExteriorElement]:
        """Orthonormal basis of ``∧^grade S°`` (empty when grade exceeds codim)."""
        if grade == 0:
            return [ExteriorElement.scalar(self.dim, 1.0)]
        if grade > self.codim:
            return []
        return [wedge_all([self._ortho[i] for i in J]) for J in itertools.combinations(range(self.codim), grade)]


def _dot(a: ExteriorElement, b: ExteriorElement) -> float:
    ta, tb = a.terms, b.terms
    return float(sum(c * tb[m] for m, c in ta.items() if m in tb))


def constrained_membership(S: ConstraintSubspace, omega: ExteriorElement, pair: GradedPair, r: int | None = None, tol: float = MEMBERSHIP_TOL):
    """Check ``X ∈ S ∧ (∧^{r-1}T)`` and ``Σ - i_X ω ∈ ∧^{deg ω - r} S°``.

    Returns ``(ok, (res_X, res_Sigma))``.  ``res_X`` is the norm of ``X``
    under the orthonormal basis of ``∧^r S°`` (the annihilator of
    ``S ∧ ∧^{r-1}T``); ``res_Sigma`` is the norm of the component of
    ``Σ - i_X ω`` orthogonal to ``∧^{deg ω - r} S°``.
    """
    r = pair.r if r is None else r
    if r != pair.r:
        raise ExteriorError("degree r does not match the pair")
    res_x = float(np.sqrt(sum(evaluate(phi, pair.X) ** 2 for phi in S.annihilator_wedges(r))))
    delta = pair.Sigma - interior_left(pair.X, omega)
    rest = delta
    for phi in S.annihilator_wedges(omega.grade - r):
        rest = rest - _dot(delta, phi) * phi
    res_s = float(np.sqrt(_dot(rest, rest)))
    return (res_x <= tol and res_s <= tol), (res_x, res_s)


# ------------------------------------------------------------------- isotropy
def _random_multivector(rng, dim: int, grade: int) -> ExteriorElement:
    return random_element(rng, dim, grade, VECTOR, nnz=24)


def isotropy_suite(
    omega: ExteriorElement, n: int, samples: int = 200, seed=None, perturbation: float = 1e-3, inject: float = 0.0
) -> list[CheckResult]:
    """Graph isotropy for every ``(r, s)`` with ``r + s <= n + 2`` plus
    non-member and perturbation witnesses.

    ``inject`` adds a random form of that max-norm to every first-slot
    ``Σ``, which must make the isotropy rows fail.  The perturbation
    witness perturbs ``Σ = i_X Ω`` by ``δ·dx^J`` and pairs it with the graph
    of ``∂_K`` (``K`` the first ``s`` indices of ``J``); the pairing is then
    ``±(δ/2) dx^{J-K}``, so ``2‖pairing‖`` recovers ``δ``.
    """
    rng = rng_from(seed)
    dim = omega.dim
    results = []
    nonmember_min = np.inf
    detect_gap = 0.0
    pairs = [(r, s) for r in range(1, n + 2) for s in range(1, n + 2) if r + s <= n + 2]
    for r, s in pairs:
        worst = 0.0
        for _ in range(samples):
            a = graph_pair(_random_multivector(rng, dim, r), omega, n)
            if inject:
                P = random_element(rng, dim, n + 2 - r, FORM)
                a = GradedPair(a.X, a.Sigma + (inject / P.norm_inf()) * P, n)
            b = graph_pair(_random_multivector(rng, dim, s), omega, n)
            worst = max(worst, pairing_minus(a, b).norm_inf())
        results.append(CheckResult("graph_isotropy", samples, worst, ISOTROPY_TOL, r=r, s=s))
        for _ in range(min(samples, 20)):
            a = GradedPair(_random_multivector(rng, dim, r), random_element(rng, dim, n + 2 - r, FORM), n)
            b = graph_pair(_random_multivector(rng, dim, s), omega, n)
            nonmember_min = min(nonmember_min, pairing_minus(a, b).norm_inf())
        X = _random_multivector(rng, dim, r)
        J = sorted(rng.choice(dim, size=n + 2 - r, replace=False).tolist())
        perturbed = GradedPair(X, interior_left(X, omega) + ExteriorElement.basis(dim, J, FORM, perturbation), n)
        probe = graph_pair(ExteriorElement.basis(dim, J[:s], VECTOR), omega, n)
        seen = 2.0 * pairing_minus(perturbed, probe).norm_inf()
        detect_gap = max(detect_gap, abs(seen - perturbation) / perturbation)
    results.append(
        CheckResult(
            "perturbation_detection",
            len(pairs),
            detect_gap,
            0.1,
            details={"injected": perturbation, "nonmember_min_pairing": float(nonmember_min)},
        )
    )
    return results


def pairing_matrix(omega: ExteriorElement, n: int = 0) -> np.ndarray:
    """Bilinear form of ``pairing_minus`` at ``r = s = 1`` on ``T ⊕ T*``
    (requires ``n = 0`` so the pairing is scalar)."""
    dim = omega.dim
    basis = [GradedPair(ExteriorElement.basis(dim, [i], VECTOR), ExteriorElement.zero(dim, n + 1, FORM), n) for i in range(dim)]
    if n != 0:
        raise ExteriorError("pairing_matrix only supports n = 0")
    basis += [GradedPair(ExteriorElement.zero(dim, 1, VECTOR), ExteriorElement.basis(dim, [i], FORM), n) for i in range(dim)]
    G = np.zeros((2 * dim, 2 * dim))
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            G[i, j] = pairing_minus(a, b).to_scalar()
    return G


def sampled_maximality(omega: ExteriorElement) -> CheckResult:
    """Dimension count ``dim D^⊥ == dim D`` for the graph of ``Ω`` at ``n = 0``."""
    dim = omega.dim
    G = pairing_matrix(omega, 0)
    B = np.zeros((2 * dim, dim))
    for i in range(dim):
        B[i, i] = 1.0
        flat = interior_left(ExteriorElement.basis(dim, [i], VECTOR), omega)
        for j in range(dim):
            B[dim + j, i] = flat.coeff((j,))
    iso = float(np.abs(B.T @ G @ B).max())
    perp_dim = 2 * dim - np.linalg.matrix_rank(B.T @ G)
    D_dim = np.linalg.matrix_rank(B)
    return CheckResult(
        "sampled_maximality",
        1,
        float(abs(perp_dim - D_dim)) + iso,
        ISOTROPY_TOL,
        r=1,
        s=1,
        details={"dim_D": int(D_dim), "dim_D_perp": int(perp_dim)},
    )


def standard_isotropy_suite(ns=(0, 1, 2), samples: int = 200, seed=None, fiber_dim: int = 1) -> list[CheckResult]:
    """Isotropy on the canonical Ω_M for each ``n`` and the dim-2 symplectic form."""
    base = np.random.SeedSequence(42 if seed is None else seed)
    streams = base.spawn(len(ns) + 1)
    out = []
    for n, ss in zip(ns, streams):
        chart = ChartSpec(n + 1, fiber_dim)
        for res in isotropy_suite(canonical_omega_M(chart), n, samples, np.random.default_rng(ss)):
            res.check = f"n{n}_{res.check}"
            out.append(res)
    if 0 in ns:
        symp = ExteriorElement.basis(2, [0, 1], FORM)
        for res in isotropy_suite(symp, 0, samples, np.random.default_rng(streams[-1])):
            res.check = f"symplectic_{res.check}"
            out.append(res)
        out.append(sampled_maximality(symp))
        mech = sampled_maximality(canonical_omega_M(ChartSpec(1, 1)))
        mech.check = "sampled_maximality_mechanics"
        out.append(mech)
    return out


# -------------------------------------------------------------- Lagrange-Dirac
def lagrange_dirac_coefficients(model: LagrangianModel, pt: PontryaginPoint, rng=None) -> PartialMultivectorCoeffs:
    """A partial multivector field solving ``i_X Ω_M = (-1)^{n+2} dE`` at ``pt``.

    ``C^A_mu = v^A_mu``, traces ``C^mu_{A mu} = ∂L/∂y^A`` (off-trace
    entries random when ``rng`` is given), ``C_mu`` fixed by the
    ``dx^mu`` balance.
    """
    chart = model.chart
    b, N = chart.base_dim, chart.fiber_dim
    Ly = np.asarray(model.dL_dy(pt.x, pt.y, pt.v), dtype=float)
    Lx = np.asarray(model.dL_dx(pt.x, pt.y, pt.v), dtype=float)
    Cp = rng.uniform(-1, 1, (N, b, b)) if rng is not None else np.zeros((N, b, b))
    trace = np.einsum("all->a", Cp)
    for A in range(N):
        Cp[A] += np.eye(b) * (Ly[A] - trace[A]) / b
    C = pt.v.copy()
    Cp0 = C.T @ Ly - np.einsum("al,alm->m", C, Cp) + Lx
    return PartialMultivectorCoeffs(chart, C, Cp, Cp0)


def lagrange_dirac_check(model: LagrangianModel, X: PartialMultivectorCoeffs, pt: PontryaginPoint, tol: float = MEMBERSHIP_TOL, path: str = "generic"):
    """``(ok, residual)`` for ``‖i_X Ω_M - (-1)^{n+2} dE‖∞ <= tol``.

    Both sides are 1-forms on the M-chart: the (n+1)-multivector ``X``
    contracts the (n+2)-form ``Ω_M`` down to grade 1.
    """
    contracted = contract_partial_generic(X) if path == "generic" else contract_partial(X)
    target = (-1.0) ** (model.chart.n + 2) * d_generalized_energy(model, pt)
    residual = (contracted - target).norm_inf()
    return residual <= tol, residual


def lagrange_dirac_grid(model: LagrangianModel, x, y, v, pa, spacings) -> np.ndarray:
    """Per-cell ``‖i_X Ω_M - (-1)^{n+2} dE‖∞`` for a gridded section.

    ``X`` is built from the section by stencil derivatives:
    ``C^A_mu = D_mu y^A``, ``C^nu_{A mu} = D_mu p_A^nu``, ``C_mu = D_mu p``,
    with ``p`` eliminated through ``E = 0``.  Shapes: ``x (n+1, *g)``,
    ``y (N, *g)``, ``v`` and ``pa (N, n+1, *g)``.
    """
    b = model.chart.base_dim
    N = model.chart.fiber_dim
    h = tuple(float(s) for s in spacings)
    p = affine_momentum(model, x, y, v, pa)
    C = np.stack([np.stack([stencil_derivative(y[A], mu, h[mu]) for mu in range(b)]) for A in range(N)])
    # Cp[A, nu, mu] = D_mu pa[A, nu]
    Cp = np.stack([np.stack([np.stack([stencil_derivative(pa[A, nu], mu, h[mu]) for mu in range(b)]) for nu in range(b)]) for A in range(N)])
    C0 = np.stack([stencil_derivative(p, mu, h[mu]) for mu in range(b)])
    Lx = np.asarray(model.dL_dx(x, y, v))
    Ly = np.asarray(model.dL_dy(x, y, v))
    Lv = np.asarray(model.dL_dv(x, y, v))
    trace = np.einsum("all...->a...", Cp)
    # bracket components minus the matching dE components (global sign cancels)
    r_dx = np.einsum("am...,a...->m...", C, trace) - np.einsum("al...,alm...->m...", C, Cp) - C0 + Lx
    r_dy = -trace + Ly
    r_dv = -(pa - Lv)
    r_dpa = C - v
    blocks = [np.abs(r_dx).max(axis=0), np.abs(r_dy).max(axis=0), np.abs(r_dv).max(axis=(0, 1)), np.abs(r_dpa).max(axis=(0, 1))]
    return np.max(np.stack(blocks), axis=0)


def grid_cell_coefficients(model: LagrangianModel, x, y, v, pa, spacings, index) -> tuple[PartialMultivectorCoeffs, PontryaginPoint]:
    """The pointwise objects behind one cell of :func:`lagrange_dirac_grid`."""
    b, N = model.chart.base_dim, model.chart.fiber_dim
    h = tuple(float(s) for s in spacings)
    p = affine_momentum(model, x, y, v, pa)
    sl = (slice(None),) + tuple(index)
    C = np.array([[stencil_derivative(y[A], mu, h[mu])[tuple(index)] for mu in range(b)] for A in range(N)])
    Cp = np.array([[[stencil_derivative(pa[A, nu], mu, h[mu])[tuple(index)] for mu in range(b)] for nu in range(b)] for A in range(N)])
    C0 = np.array([stencil_derivative(p, mu, h[mu])[tuple(index)] for mu in range(b)])
    pt = PontryaginPoint(x[sl], y[sl], v[(slice(None), slice(None)) + tuple(index)], p[tuple(index)], pa[(slice(None), slice(None)) + tuple(index)])
    return PartialMultivectorCoeffs(model.chart, C, Cp, C0), pt


def energy_conservation_residual(model: LagrangianModel, X: PartialMultivectorCoeffs, pt: PontryaginPoint) -> float:
    """``‖X ⨼ dE‖∞`` via the decomposable expansion."""
    return interior_right_decomposable(X.decomposable(), d_generalized_energy(model, pt)).norm_inf()
