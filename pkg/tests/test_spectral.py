import math

import numpy as np
import pytest

from errors import CapacityError, DimensionError, DomainError
from grid import Grid2D, GridFunction, inner_product, norm_l2
from operators import CoefficientField, EllipticOperator
from spectral import (
    analytic_eigenpairs, dense_eigenpairs, basis_for, forward, inverse,
    apply_semigroup, exact_fractional_inverse, MODE_ANALYTIC, MODE_DENSE
)


def test_single_mode_eigenvalue(single_mode_grid):
    basis = analytic_eigenpairs(single_mode_grid)
    assert basis.eigenvalues.tolist() == pytest.approx([16.0], rel=1e-15)


@pytest.mark.parametrize("N1, N2, l1, l2", [(4, 4, 1.0, 1.0), (16, 8, 2.0, 0.5), (64, 64, 1.0, 3.0)])
def test_extreme_eigenvalue_bounds(N1, N2, l1, l2):
    grid = Grid2D(N1, N2, l1, l2)
    basis = analytic_eigenpairs(grid)
    scale = 1 / l1 ** 2 + 1 / l2 ** 2
    # 4 N^2 sin^2(pi / 2N) grows from 8 at N = 2 towards pi^2
    assert 8 * scale * (1 - 1e-14) <= basis.mu_min < math.pi ** 2 * scale
    assert basis.mu_max < 4 * (1 / grid.h1 ** 2 + 1 / grid.h2 ** 2)
    assert np.all(np.diff(basis.eigenvalues) >= 0)


def test_ties_keep_lexicographic_order(basis8):
    assert basis8.mode_index(0) == (1, 1)
    assert basis8.eigenvalues[1] == basis8.eigenvalues[2]
    assert basis8.mode_index(1) == (1, 2)
    assert basis8.mode_index(2) == (2, 1)


def test_dense_matches_analytic(operator8, basis8):
    dense = dense_eigenpairs(operator8)
    assert dense.mode == MODE_DENSE
    np.testing.assert_allclose(dense.eigenvalues, basis8.eigenvalues, rtol=1e-9)


def test_dense_reaction_shift(grid8, basis8):
    dense = dense_eigenpairs(EllipticOperator(grid8, CoefficientField.constant(1.0, 1.0)))
    np.testing.assert_allclose(dense.eigenvalues, basis8.eigenvalues + 1.0, rtol=1e-9)


def test_dense_reconstructs_operator(grid8, random_field):
    coeffs = CoefficientField(a=lambda x1, x2: 1.0 + x1 ** 2, c=lambda x1, x2: 0.5 + 0.0 * x1)
    op = EllipticOperator(grid8, coeffs)
    basis = dense_eigenpairs(op)
    u = random_field(grid8)
    expected = op.apply(u).values
    np.testing.assert_allclose(basis.apply_multiplier(u, basis.eigenvalues).values, expected,
                               rtol=1e-9, atol=1e-9 * np.max(np.abs(expected)))


def test_roundtrip(random_field):
    grid = Grid2D(32, 32)
    basis = analytic_eigenpairs(grid)
    u = random_field(grid)
    back = inverse(basis, forward(basis, u))
    assert np.linalg.norm(back.values - u.values) <= 1e-11 * np.linalg.norm(u.values)


def test_dense_roundtrip(grid8, operator8, random_field):
    basis = dense_eigenpairs(operator8)
    u = random_field(grid8)
    np.testing.assert_allclose(basis.inverse(basis.forward(u)).values, u.values, rtol=1e-11, atol=1e-12)


def test_forward_of_eigenvector_is_unit_vector(basis8):
    for k in (0, 7, 48):
        coeffs = basis8.forward(basis8.eigenvector(k)).coefficients
        expected = np.zeros(basis8.K)
        expected[k] = 1.0
        np.testing.assert_allclose(coeffs, expected, atol=1e-10)


def test_forward_of_zero(basis8, grid8):
    assert not np.any(basis8.forward(GridFunction.zeros(grid8)).coefficients)


@pytest.mark.parametrize("N", [8, 32])
def test_parseval(random_field, N):
    grid = Grid2D.unit_square(N)
    basis = analytic_eigenpairs(grid)
    u = random_field(grid)
    assert basis.forward(u).energy() == pytest.approx(inner_product(u, u), rel=1e-12)


def test_inverse_rejects_foreign_coefficients(basis8, grid8):
    other = analytic_eigenpairs(grid8)
    with pytest.raises(DimensionError):
        basis8.inverse(other.forward(GridFunction.zeros(grid8)))


def test_semigroup_identity_and_composition(random_field):
    grid = Grid2D.unit_square(16)
    basis = analytic_eigenpairs(grid)
    u = random_field(grid)
    np.testing.assert_allclose(apply_semigroup(basis, u, 0.0).values, u.values, rtol=1e-12, atol=1e-12)

    once = apply_semigroup(basis, u, 0.02).values
    twice = apply_semigroup(basis, apply_semigroup(basis, u, 0.01), 0.01).values
    assert np.linalg.norm(once - twice) <= 1e-11 * np.linalg.norm(once)


def test_semigroup_single_mode(single_mode_grid):
    basis = analytic_eigenpairs(single_mode_grid)
    w = basis.apply_semigroup(GridFunction(single_mode_grid, [1.0]), 0.1)
    assert w.values[0] == pytest.approx(math.exp(-1.6), rel=1e-13)


def test_semigroup_rejects_negative_time(basis8, grid8):
    with pytest.raises(DomainError):
        basis8.apply_semigroup(GridFunction.zeros(grid8), -0.5)


def test_fractional_inverse_power_law(basis8, random_field, grid8):
    b = random_field(grid8)
    half = basis8.exact_fractional_inverse(basis8.exact_fractional_inverse(b, 0.3), 0.3)
    full = exact_fractional_inverse(basis8, b, 0.6)
    np.testing.assert_allclose(half.values, full.values, rtol=1e-10, atol=1e-12)


def test_fractional_inverse_single_mode(single_mode_grid):
    basis = analytic_eigenpairs(single_mode_grid)
    u = basis.exact_fractional_inverse(GridFunction(single_mode_grid, [1.0]), 0.5)
    assert u.values[0] == pytest.approx(0.25, rel=1e-14)


def test_fractional_inverse_of_eigenvector(basis8):
    psi = basis8.eigenvector(0)
    u = basis8.exact_fractional_inverse(psi, 0.75)
    np.testing.assert_allclose(u.values, basis8.mu_min ** -0.75 * psi.values, rtol=1e-12, atol=1e-14)


@pytest.mark.parametrize("alpha", [0.0, 1.0, -0.2, 1.5])
def test_fractional_inverse_rejects_alpha(basis8, grid8, alpha):
    with pytest.raises(DomainError):
        basis8.exact_fractional_inverse(GridFunction.zeros(grid8), alpha)


def test_apply_power_matches_stencil(basis8, operator8, random_field, grid8):
    u = random_field(grid8)
    expected = operator8.apply_power(u, 2).values
    np.testing.assert_allclose(basis8.apply_power(u, 2).values, expected,
                               rtol=1e-10, atol=1e-10 * np.max(np.abs(expected)))


def test_basis_selection(grid8, operator8):
    assert basis_for(operator8).mode == MODE_ANALYTIC
    assert basis_for(operator8, "dense").mode == MODE_DENSE

    variable = EllipticOperator(grid8, CoefficientField(a=lambda x1, x2: 1.0 + x2, c=lambda x1, x2: 0.0 * x1))
    assert basis_for(variable).mode == MODE_DENSE
    with pytest.raises(DomainError):
        basis_for(variable, "analytic")
    with pytest.raises(DomainError):
        basis_for(operator8, "fft")
    with pytest.raises(CapacityError):
        basis_for(operator8, "dense", cap=10)
    with pytest.raises(DomainError):
        basis_for(variable, "auto").mode_index(0)


def test_semigroup_decay_bound(random_field):
    grid = Grid2D.unit_square(16)
    basis = analytic_eigenpairs(grid)
    u = random_field(grid)
    start = norm_l2(u)

    norms = []
    for t in (0.0, 1e-4, 1e-3, 0.01, 0.05, 0.1):
        norm = norm_l2(basis.apply_semigroup(u, t))
        assert norm <= math.exp(-basis.mu_min * t) * start * (1 + 1e-12)
        norms.append(norm)
    assert all(a >= b for a, b in zip(norms, norms[1:]))


@pytest.mark.parametrize("alpha, t", [(0.25, 0.01), (0.75, 0.002)])
def test_fractional_inverse_commutes_with_semigroup(random_field, alpha, t):
    grid = Grid2D.unit_square(16)
    basis = analytic_eigenpairs(grid)
    b = random_field(grid)
    first = basis.exact_fractional_inverse(basis.apply_semigroup(b, t), alpha)
    second = basis.apply_semigroup(basis.exact_fractional_inverse(b, alpha), t)
    assert norm_l2(first - second) <= 1e-11 * norm_l2(first)


@pytest.mark.parametrize("alpha", [0.1, 0.5, 0.9])
def test_dense_and_analytic_fractional_inverse_agree(grid8, operator8, basis8, random_field, alpha):
    b = random_field(grid8)
    dense = dense_eigenpairs(operator8).exact_fractional_inverse(b, alpha)
    analytic = basis8.exact_fractional_inverse(b, alpha)
    assert norm_l2(dense - analytic) <= 1e-8 * norm_l2(analytic)
