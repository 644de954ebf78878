import numpy as np
import pytest

from src.squeezing_measure.errors import DimensionError, NotSymmetricError, NotSymplecticError
from src.squeezing_measure.sampling import random_covariance, random_orthogonal_symplectic, random_symplectic
from src.squeezing_measure.symplectic import (
    Basis,
    CovarianceMatrix,
    build_form,
    euler,
    form_matrix,
    is_symplectic,
    is_valid_covariance,
    mode_order,
    permute_basis,
    sym_sqrt,
    symplectic_eigenvalues,
    williamson,
)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.mark.parametrize("n, basis, expected", [
    (1, Basis.SIGMA, [[0, 1], [-1, 0]]),
    (1, Basis.J, [[0, 1], [-1, 0]]),
    (2, Basis.J, [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]),
])
def test_build_form_examples(n, basis, expected):
    assert np.array_equal(build_form(n, basis).matrix, np.array(expected, dtype=float))


def test_build_form_rejects_zero_modes():
    with pytest.raises(DimensionError):
        build_form(0)


def test_sigma_form_permutes_to_j_form():
    sigma = build_form(3, "sigma").matrix
    assert np.array_equal(permute_basis(sigma, Basis.SIGMA, Basis.J), form_matrix(3))
    assert list(mode_order(3)) == [0, 2, 4, 1, 3, 5]


@pytest.mark.parametrize("S, expected", [
    (np.eye(2), True),
    (np.diag([2.0, 0.5]), True),
    (np.diag([2.0, 2.0]), False),
    (np.eye(3), False),
])
def test_is_symplectic_examples(S, expected):
    assert is_symplectic(S) is expected


@pytest.mark.parametrize("gamma, expected", [
    (np.diag([2.0, 0.5]), [1.0]),
    (3.0 * np.eye(4), [3.0, 3.0]),
    (np.diag([4.0, 1.0]), [2.0]),
])
def test_symplectic_eigenvalue_examples(gamma, expected):
    assert np.allclose(symplectic_eigenvalues(gamma), expected, atol=1e-12)


@pytest.mark.parametrize("gamma, expected", [
    (np.eye(2), True),
    (np.diag([2.0, 0.5]), True),
    (np.diag([0.5, 0.5]), False),
    (np.diag([1.0, -1.0]), False),
])
def test_is_valid_covariance_examples(gamma, expected):
    assert is_valid_covariance(gamma) is expected


def test_covariance_matrix_validation():
    with pytest.raises(DimensionError):
        CovarianceMatrix.from_array(np.eye(3))
    with pytest.raises(NotSymmetricError):
        CovarianceMatrix.from_array([[1.0, 0.1], [0.0, 1.0]])
    gamma = CovarianceMatrix.from_array(np.diag([1.0, 2.0, 3.0, 4.0]), "sigma")
    assert gamma.n == 2
    assert np.array_equal(gamma.in_j(), np.diag([1.0, 3.0, 2.0, 4.0]))


def test_williamson_of_vacuum_is_trivial():
    form = williamson(np.eye(4))
    assert np.allclose(form.D, np.eye(4), atol=1e-12)
    assert np.allclose(form.S.T @ form.S, np.eye(4), atol=1e-10)


def test_williamson_single_mode_thermal_squeezed():
    form = williamson(np.diag([4.0, 1.0]))
    assert np.allclose(form.spectrum, [2.0])
    assert np.allclose(form.S.T @ form.S, np.diag([2.0, 0.5]), atol=1e-10)
    assert form.residual(np.diag([4.0, 1.0])) <= 1e-12


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_williamson_recovers_random_spectrum(rng, n):
    S_true = random_symplectic(n, rng)
    d_true = np.sort(1.0 + rng.uniform(0.0, 2.0, size=n))[::-1]
    gamma = S_true.T @ np.diag(np.concatenate([d_true, d_true])) @ S_true
    form = williamson(0.5 * (gamma + gamma.T))
    assert np.allclose(form.spectrum, d_true, atol=1e-8)
    assert form.residual(0.5 * (gamma + gamma.T)) <= 1e-8
    assert is_symplectic(form.S, 1e-8 * max(1.0, np.linalg.norm(form.S, 2) ** 2))


def test_euler_of_identity_and_single_squeezer():
    assert np.allclose(euler(np.eye(4)).squeeze_params, [1.0, 1.0])
    form = euler(np.diag([3.0, 1.0 / 3.0]))
    assert np.allclose(form.squeeze_params, [3.0])
    assert np.allclose(np.abs(form.K), np.eye(2), atol=1e-12)
    assert np.allclose(np.abs(form.K_prime), np.eye(2), atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 4, 5])
def test_euler_reconstructs_random_symplectic(rng, n):
    S = random_symplectic(n, rng)
    form = euler(S)
    assert np.max(np.abs(form.reconstruct() - S)) <= 1e-8
    assert np.all(form.squeeze_params >= 1.0 - 1e-12)
    assert np.all(np.diff(form.squeeze_params) <= 1e-12)
    for K in (form.K, form.K_prime):
        assert np.allclose(K.T @ K, np.eye(2 * n), atol=1e-8)
        assert is_symplectic(K)


def test_euler_rejects_non_symplectic():
    with pytest.raises(NotSymplecticError):
        euler(np.diag([2.0, 2.0]))


def test_sym_sqrt_examples(rng):
    assert np.allclose(sym_sqrt(np.eye(2)), np.eye(2))
    assert np.allclose(sym_sqrt(np.diag([4.0, 0.25])), np.diag([2.0, 0.5]))
    S = random_symplectic(3, rng)
    R = sym_sqrt(S.T @ S)
    assert np.allclose(R @ R, S.T @ S, atol=1e-8)
    assert is_symplectic(R)


def test_orthogonal_symplectic_sampler_is_orthogonal(rng):
    K = random_orthogonal_symplectic(3, rng)
    assert np.allclose(K.T @ K, np.eye(6), atol=1e-12)
    assert is_symplectic(K)
    assert is_valid_covariance(random_covariance(3, rng))
