import numpy as np
import pytest

from src.squeezing_measure.cayley import (
    HPoint,
    H_to_params,
    cayley,
    cayley_matrix,
    embed,
    in_H,
    inverse_cayley,
    param_count,
    params_adjoint,
    params_to_H,
    structure_residual,
    top_singular_values,
)
from src.squeezing_measure.errors import DimensionError, NotSymplecticError, OutsideDomainError
from src.squeezing_measure.sampling import random_covariance, random_H_point, random_symplectic
from src.squeezing_measure.solver import starting_point
from src.squeezing_measure.symplectic import is_symplectic, symplectic_eigenvalues


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def test_embed_examples():
    assert np.array_equal(embed(HPoint.zeros(2)), np.zeros((4, 4)))
    w = np.linalg.eigvalsh(embed(HPoint.from_blocks([[0.3]], [[0.4]])))
    assert np.allclose(w, [-0.5, 0.5])


def test_top_singular_values_examples():
    assert np.allclose(top_singular_values(HPoint.zeros(3)), 0.0)
    assert np.allclose(top_singular_values(HPoint.from_blocks([[0.6]], [[0.0]])), [0.6])


def test_top_singular_values_match_complex_svd(rng):
    H = random_H_point(2, rng)
    expected = np.linalg.svd(H.A + 1j * H.B, compute_uv=False)
    assert np.allclose(top_singular_values(H), expected, atol=1e-10)


def test_cayley_examples():
    assert np.allclose(cayley(HPoint.zeros(2)), np.eye(4))
    S = cayley(HPoint.from_blocks([[1.0 / 3.0]], [[0.0]]))
    assert np.allclose(np.linalg.eigvalsh(S), [0.5, 2.0])


def test_cayley_image_is_symmetric_symplectic(rng):
    S = cayley(random_H_point(3, rng))
    assert np.allclose(S, S.T)
    assert np.linalg.eigvalsh(S)[0] > 0
    assert is_symplectic(S)


def test_cayley_maps_H_onto_pure_covariance_matrices(rng):
    for k in range(1000):
        S = cayley(random_H_point(1 + k % 4, rng))
        assert is_symplectic(S, 1e-8)
        assert symplectic_eigenvalues(S).min() >= 1 - 1e-8

    for k in range(200):
        S = random_symplectic(1 + k % 4, rng)
        assert in_H(inverse_cayley(S.T @ S))


def test_cayley_matrix_is_operator_monotone(rng):
    for _ in range(100):
        dim = int(rng.integers(1, 7))
        Q, _ = np.linalg.qr(rng.standard_normal((dim, dim)))
        Y = Q @ np.diag(rng.uniform(-0.9, 0.4, size=dim)) @ Q.T
        P, _ = np.linalg.qr(rng.standard_normal((dim, dim)))
        X = Y + P @ np.diag(rng.uniform(0.0, 0.4, size=dim)) @ P.T
        diff = cayley_matrix(X) - cayley_matrix(Y)
        assert np.linalg.eigvalsh(0.5 * (diff + diff.T))[0] >= -1e-9


def test_cayley_matrix_agrees_with_embedded_cayley(rng):
    H = random_H_point(2, rng)
    assert np.allclose(cayley_matrix(embed(H)), cayley(H))


def test_cayley_singular_raises():
    with pytest.raises(OutsideDomainError):
        cayley(HPoint.from_blocks([[1.0]], [[0.0]]))


def test_inverse_cayley_examples():
    H = inverse_cayley(np.eye(4))
    assert np.allclose(H.A, 0.0) and np.allclose(H.B, 0.0)
    H = inverse_cayley(np.diag([2.0, 0.5]))
    assert np.allclose(H.A, [[1.0 / 3.0]])
    assert np.allclose(H.B, [[0.0]])


def test_inverse_cayley_roundtrips(rng):
    S = random_symplectic(3, rng)
    P = S.T @ S
    H = inverse_cayley(0.5 * (P + P.T))
    assert structure_residual(embed(H)) <= 1e-9
    assert np.max(np.abs(cayley(H) - P)) <= 1e-10 * max(1.0, np.max(np.abs(P)))

    H = random_H_point(3, rng)
    back = inverse_cayley(cayley(H))
    assert np.max(np.abs(back.A - H.A)) <= 1e-10
    assert np.max(np.abs(back.B - H.B)) <= 1e-10


def test_inverse_cayley_rejects_non_symplectic():
    with pytest.raises(NotSymplecticError):
        inverse_cayley(np.diag([2.0, 3.0, 0.5, 4.0]))


def test_in_H_examples(rng):
    assert in_H(HPoint.zeros(2)) is True
    assert in_H(HPoint.from_blocks([[1.0]], [[0.0]])) is False
    gamma = random_covariance(2, rng, max_thermal=1.0) + 0.1 * np.eye(4)
    assert in_H(starting_point(gamma)) is True


def test_params_to_H_examples():
    H = params_to_H(np.zeros(param_count(2)), 2)
    assert np.array_equal(H.A, np.zeros((2, 2))) and np.array_equal(H.B, np.zeros((2, 2)))

    x = np.zeros(param_count(2))
    x[1] = 1.0
    H = params_to_H(x, 2)
    assert np.array_equal(H.A, np.diag([0.0, 1.0]))
    assert np.array_equal(H.B, np.zeros((2, 2)))

    # Off-diagonal slot fills both entries
    x = np.zeros(param_count(2))
    x[2] = 1.0
    H = params_to_H(x, 2)
    assert np.array_equal(H.A, [[0.0, 1.0], [1.0, 0.0]])


def test_params_roundtrip_and_length_check(rng):
    H = random_H_point(3, rng)
    back = params_to_H(H_to_params(H), 3)
    assert np.array_equal(back.A, H.A) and np.array_equal(back.B, H.B)
    with pytest.raises(DimensionError):
        params_to_H(np.zeros(5), 2)


def test_params_adjoint_is_the_adjoint(rng):
    n = 3
    W = rng.standard_normal((2 * n, 2 * n))
    x = rng.standard_normal(param_count(n))
    lhs = float(np.sum(W * embed(params_to_H(x, n))))
    assert lhs == pytest.approx(float(x @ params_adjoint(W, n)), abs=1e-12)


def test_scalar_cayley_is_log_convex(rng):
    def log_c(v):
        return np.log(cayley(HPoint.from_blocks([[v]], [[0.0]]))[0, 0])

    for _ in range(50):
        x, y = np.sort(rng.uniform(0.0, 0.99, size=2))
        t = rng.uniform()
        assert log_c(t * x + (1 - t) * y) <= t * log_c(x) + (1 - t) * log_c(y) + 1e-12
