import numpy as np
import pytest

from src.squeezing_measure.errors import (
    BasisMismatchError,
    DimensionError,
    NotPositiveDefiniteError,
    NotSymplecticError,
    ParameterDomainError,
)
from src.squeezing_measure.gaussian_ops import (
    GaussianState,
    MeasurementSpec,
    add_noise,
    conjugate,
    direct_sum,
    measure_gaussian,
    mista_korolkova,
    mix,
    partial_trace,
    protocol_cost,
    x_sep,
)
from src.squeezing_measure.config import SolveOptions
from src.squeezing_measure.measure import F, spectral_bounds
from src.squeezing_measure.sampling import (
    random_covariance,
    random_orthogonal_symplectic,
    random_pure_covariance,
    random_symplectic,
)
from src.squeezing_measure.solver import minimize_G
from src.squeezing_measure.symplectic import (
    Basis,
    CovarianceMatrix,
    is_valid_covariance,
    sym_sqrt,
    symplectic_eigenvalues,
)


@pytest.fixture
def rng():
    return np.random.default_rng(99)


def test_direct_sum_with_vacuum(rng):
    gamma = random_covariance(2, rng)
    out = direct_sum(gamma, np.eye(2))
    assert out.entries.shape == (6, 6)
    assert np.allclose(partial_trace(out, [0, 1]).entries, gamma)
    spectrum = np.sort(symplectic_eigenvalues(out))
    expected = np.sort(np.concatenate([symplectic_eigenvalues(gamma), [1.0]]))
    assert np.allclose(spectrum, expected, atol=1e-8)


def test_direct_sum_rejects_basis_mismatch():
    a = CovarianceMatrix.from_array(np.eye(2), Basis.SIGMA)
    b = CovarianceMatrix.from_array(np.eye(2), Basis.J)
    with pytest.raises(BasisMismatchError):
        direct_sum(a, b)


def test_add_noise_examples():
    assert np.array_equal(add_noise(np.eye(2), np.zeros((2, 2))).entries, np.eye(2))
    out = add_noise(np.eye(2), np.eye(2))
    assert np.array_equal(out.entries, 2.0 * np.eye(2))
    assert is_valid_covariance(out)
    with pytest.raises(NotPositiveDefiniteError):
        add_noise(np.eye(2), np.diag([1.0, -0.1]))


def test_conjugate_preserves_symplectic_spectrum(rng):
    gamma = random_covariance(2, rng)
    assert np.allclose(conjugate(gamma, np.eye(4)).entries, gamma)
    out = conjugate(gamma, random_symplectic(2, rng))
    assert not np.allclose(np.linalg.eigvalsh(out.entries), np.linalg.eigvalsh(gamma))
    assert np.allclose(symplectic_eigenvalues(out), symplectic_eigenvalues(gamma), atol=1e-8)


def test_conjugate_rejects_non_symplectic():
    with pytest.raises(NotSymplecticError):
        conjugate(np.eye(2), np.diag([2.0, 2.0]))


def test_measure_block_diagonal_state(rng):
    A = random_covariance(1, rng)
    B = random_covariance(1, rng)
    homodyne = measure_gaussian(direct_sum(A, np.eye(2)), MeasurementSpec(mode=1))
    assert np.allclose(homodyne.entries, A)
    finite = measure_gaussian(direct_sum(A, B), MeasurementSpec(mode=1, squeeze_param=2.0))
    assert np.allclose(finite.entries, A)


def test_measurements_cannot_squeeze(rng):
    for _ in range(200):
        n = int(rng.integers(2, 5))
        gamma = random_covariance(n, rng)
        spec = MeasurementSpec(mode=int(rng.integers(0, n)),
                               squeeze_param=float(rng.choice([0.5, 1.0, 3.0, np.inf])))
        out = measure_gaussian(gamma, spec)
        assert out.n == n - 1
        assert is_valid_covariance(out, 1e-8)
        assert F(sym_sqrt(out.entries)) <= F(sym_sqrt(gamma)) + 1e-9


def test_homodyne_is_the_infinite_squeezing_limit(rng):
    gamma = random_covariance(2, rng, max_log_squeeze=0.5)
    limit = measure_gaussian(gamma, MeasurementSpec(mode=0, squeeze_param=1e8))
    exact = measure_gaussian(gamma, MeasurementSpec(mode=0))
    assert np.max(np.abs(limit.entries - exact.entries)) <= 1e-6


def test_measure_gaussian_errors():
    with pytest.raises(DimensionError):
        measure_gaussian(np.eye(2), MeasurementSpec(mode=0))
    with pytest.raises(DimensionError):
        measure_gaussian(np.eye(4), MeasurementSpec(mode=2))
    with pytest.raises(ParameterDomainError):
        MeasurementSpec(mode=0, squeeze_param=0.0)


def test_partial_trace_examples(rng):
    gamma = random_covariance(3, rng)
    assert np.allclose(partial_trace(gamma, [0, 1, 2]).entries, gamma)
    A = random_covariance(2, rng)
    assert np.allclose(partial_trace(direct_sum(A, np.eye(2)), [0, 1]).entries, A)
    assert is_valid_covariance(partial_trace(gamma, [2]))
    with pytest.raises(DimensionError):
        partial_trace(gamma, [])
    with pytest.raises(DimensionError):
        partial_trace(gamma, [0, 0])


def test_mix_examples(rng):
    g1 = random_covariance(2, rng)
    g2 = random_covariance(2, rng)
    same = mix(GaussianState(g1), GaussianState(g1), 0.3)
    assert np.allclose(same.gamma, g1)

    centered = mix(GaussianState(g1), GaussianState(g2), 0.25)
    assert np.allclose(centered.gamma, 0.25 * g1 + 0.75 * g2)

    d = np.array([1.0, 0.0, 0.0, 0.0])
    shifted = mix(GaussianState(g1, d), GaussianState(g1), 0.5)
    assert np.allclose(shifted.gamma, g1 + 0.5 * np.outer(d, d))
    assert np.allclose(shifted.displacement, 0.5 * d)

    with pytest.raises(ParameterDomainError):
        mix(GaussianState(g1), GaussianState(g2), 1.5)
    with pytest.raises(DimensionError):
        mix(GaussianState(g1), GaussianState(np.eye(2)), 0.5)


def test_mista_korolkova_state_is_valid_boundary_state():
    r, d = 0.15, 0.18
    x = x_sep(r, d)
    assert x > 0
    gamma = mista_korolkova(r, d, x)
    G = gamma.entries
    assert G.shape == (6, 6)
    assert np.allclose(G, G.T)
    spectrum = symplectic_eigenvalues(gamma)
    assert spectrum[-1] >= 1.0 - 1e-8
    assert abs(spectrum[-1] - 1.0) <= 1e-6
    assert spectral_bounds(gamma)[0] < protocol_cost(d)


@pytest.mark.parametrize("r, d, x", [(0.0, 0.1, 0.0), (0.2, 0.1, 0.0), (0.1, 0.2, -1.0)])
def test_mista_korolkova_rejects_bad_parameters(r, d, x):
    with pytest.raises(ParameterDomainError):
        mista_korolkova(r, d, x)


def test_pure_state_generator_is_pure(rng):
    gamma = random_pure_covariance(3, rng)
    assert np.allclose(symplectic_eigenvalues(gamma), 1.0, atol=1e-8)


# Solver cross-checks

@pytest.fixture
def options():
    return SolveOptions({"seed": 0})


def random_noise(n: int, rng) -> np.ndarray:
    X = rng.standard_normal((2 * n, 2 * n))
    return 0.2 * X @ X.T


def test_noise_never_increases_G(rng, options):
    for n in (1, 2, 3):
        gamma = random_covariance(n, rng)
        noisy = add_noise(gamma, random_noise(n, rng))
        assert minimize_G(noisy, options).value <= minimize_G(gamma, options).value + 1e-4


def test_partial_trace_never_increases_G(rng, options):
    for n in (2, 3):
        gamma = random_covariance(n, rng)
        keep = sorted(rng.choice(n, size=n - 1, replace=False).tolist())
        reduced = partial_trace(gamma, keep)
        assert minimize_G(reduced, options).value <= minimize_G(gamma, options).value + 1e-4


def test_mixing_is_bounded_by_the_average(rng, options):
    for _ in range(3):
        g1 = random_covariance(2, rng)
        g2 = random_covariance(2, rng)
        weight = float(rng.uniform(0.1, 0.9))
        mixed = mix(GaussianState(g1, rng.standard_normal(4)), GaussianState(g2, rng.standard_normal(4)), weight)
        expected = weight * minimize_G(g1, options).value + (1 - weight) * minimize_G(g2, options).value
        assert minimize_G(mixed.gamma, options).value <= expected + 1e-4


def apply_random_operation(gamma: np.ndarray, rng) -> tuple:
    """One free or symplectic step; returns the new matrix and the squeezing spent"""
    n = gamma.shape[0] // 2
    choices = ["noise", "passive", "squeeze", "mix"]
    if n < 4:
        choices.append("vacuum")
    if n >= 2:
        choices += ["trace", "measure"]
    op = choices[int(rng.integers(len(choices)))]
    if op == "vacuum":
        return direct_sum(gamma, np.eye(2)).entries, 0.0
    if op == "noise":
        return add_noise(gamma, random_noise(n, rng)).entries, 0.0
    if op == "passive":
        return conjugate(gamma, random_orthogonal_symplectic(n, rng)).entries, 0.0
    if op == "squeeze":
        S = random_symplectic(n, rng, max_log_squeeze=0.3)
        return conjugate(gamma, S).entries, F(S)
    if op == "mix":
        shift = rng.standard_normal(2 * n)
        state = mix(GaussianState(gamma, shift), GaussianState(gamma), float(rng.uniform(0.1, 0.9)))
        return state.gamma, 0.0
    if op == "trace":
        keep = sorted(rng.choice(n, size=int(rng.integers(1, n)), replace=False).tolist())
        return partial_trace(gamma, keep).entries, 0.0
    spec = MeasurementSpec(mode=int(rng.integers(n)), squeeze_param=float(rng.choice([0.5, 2.0, np.inf])))
    return measure_gaussian(gamma, spec).entries, 0.0


def test_operation_pipelines_never_beat_the_squeezing_spent(rng, options):
    for _ in range(50):
        start = random_covariance(int(rng.integers(1, 4)), rng)
        gamma, spent = start, 0.0
        for _ in range(3):
            gamma, cost = apply_random_operation(gamma, rng)
            spent += cost
            assert is_valid_covariance(gamma, 1e-8)
        assert minimize_G(gamma, options).value <= minimize_G(start, options).value + spent + 1e-4
