#!filepath squeezing_measure/gaussian_ops.py
"""
Gaussian operations as maps on covariance matrices, and the three-mode
state family used in the parameter sweep.

Every operation accepts a CovarianceMatrix or a J-basis array and returns a
CovarianceMatrix. Mode-local operations are carried out in the sigma basis.
"""
import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.linalg import block_diag

from .config import PINV_RCOND, RECON_TOL
from .errors import (
    BasisMismatchError,
    DimensionError,
    NotPositiveDefiniteError,
    NotSymplecticError,
    ParameterDomainError,
)
from .symplectic import (
    Basis,
    CovarianceMatrix,
    as_matrix,
    is_symplectic,
    permute_basis,
)

logger = logging.getLogger(__name__)

NOISE_TOL = 1e-10


@dataclass(eq=False)
class GaussianState:
    """Covariance matrix and displacement, both in the J basis"""
    gamma: np.ndarray
    displacement: np.ndarray = field(default=None)

    def __post_init__(self) -> None:
        self.gamma = as_matrix(self.gamma)
        if self.displacement is None:
            self.displacement = np.zeros(self.gamma.shape[0])
        self.displacement = np.asarray(self.displacement, dtype=float)
        if self.displacement.shape != (self.gamma.shape[0],):
            raise DimensionError(f"Displacement must have length {self.gamma.shape[0]}, "
                                 f"got shape {self.displacement.shape}")
        if not np.all(np.isfinite(self.displacement)):
            raise ParameterDomainError("Displacement must be finite")

    @property
    def n(self) -> int:
        return self.gamma.shape[0] // 2


@dataclass(frozen=True)
class MeasurementSpec:
    """Projection of one mode onto a squeezed state; squeeze_param = inf is homodyne of x"""
    mode: int
    squeeze_param: float = float("inf")

    def __post_init__(self) -> None:
        if not self.squeeze_param > 0:
            raise ParameterDomainError(f"Squeeze parameter must be positive, got {self.squeeze_param}")

    @property
    def homodyne(self) -> bool:
        return bool(np.isinf(self.squeeze_param))


def _sigma(gamma) -> np.ndarray:
    return permute_basis(as_matrix(gamma), Basis.J, Basis.SIGMA)


def _from_sigma(matrix: np.ndarray) -> CovarianceMatrix:
    return CovarianceMatrix(permute_basis(0.5 * (matrix + matrix.T), Basis.SIGMA, Basis.J), Basis.J)


def direct_sum(gamma1, gamma2) -> CovarianceMatrix:
    """
    Covariance matrix of two independent systems, modes of gamma1 first

    Raises:
        BasisMismatchError: If two tagged inputs use different bases
    """
    if (isinstance(gamma1, CovarianceMatrix) and isinstance(gamma2, CovarianceMatrix)
            and gamma1.basis is not gamma2.basis):
        raise BasisMismatchError(f"Cannot combine {gamma1.basis.value} and {gamma2.basis.value} matrices")
    return _from_sigma(block_diag(_sigma(gamma1), _sigma(gamma2)))


def add_noise(gamma, noise) -> CovarianceMatrix:
    """
    Add a positive semidefinite noise matrix

    Raises:
        NotPositiveDefiniteError: If the noise has an eigenvalue below -1e-10
        DimensionError: If the shapes differ
    """
    G = as_matrix(gamma)
    N = as_matrix(noise)
    if G.shape != N.shape:
        raise DimensionError(f"Noise shape {N.shape} does not match {G.shape}")
    lam_min = float(np.linalg.eigvalsh(N)[0])
    if lam_min < -NOISE_TOL:
        raise NotPositiveDefiniteError(f"Noise matrix is not positive semidefinite: eigenvalue {lam_min:.3e}")
    return CovarianceMatrix(G + N, Basis.J)


def conjugate(gamma, S) -> CovarianceMatrix:
    """
    Apply a symplectic transformation: gamma -> S^T gamma S

    Raises:
        NotSymplecticError: If S is not symplectic
    """
    G = as_matrix(gamma)
    S = np.asarray(S, dtype=float)
    if S.shape != G.shape:
        raise DimensionError(f"Symplectic matrix shape {S.shape} does not match {G.shape}")
    scale = max(1.0, float(np.linalg.norm(S, 2)) ** 2)
    if not is_symplectic(S, RECON_TOL * scale):
        raise NotSymplecticError("Conjugation needs a symplectic matrix")
    out = S.T @ G @ S
    return CovarianceMatrix(0.5 * (out + out.T), Basis.J)


def _check_modes(modes: Sequence[int], n: int) -> None:
    for m in modes:
        if not 0 <= int(m) < n:
            raise DimensionError(f"Mode index {m} out of range for n={n}")


def measure_gaussian(gamma, spec: MeasurementSpec) -> CovarianceMatrix:
    """
    Post-measurement covariance matrix of the remaining modes

    Projecting mode k onto a Gaussian state with covariance diag(1/d, d)
    maps gamma to A - C (B + diag(1/d, d))^-1 C^T, with B the block of mode
    k, A the rest and C the coupling. For d = inf (homodyne detection of x)
    the inverse becomes the pseudoinverse of diag(1, 0) B diag(1, 0).

    Raises:
        DimensionError: If gamma has fewer than two modes or the mode is out of range
    """
    sigma = _sigma(gamma)
    n = sigma.shape[0] // 2
    if n < 2:
        raise DimensionError("Measurement needs at least two modes")
    _check_modes([spec.mode], n)

    idx = np.array([2 * spec.mode, 2 * spec.mode + 1])
    rest = np.setdiff1d(np.arange(2 * n), idx)
    A = sigma[np.ix_(rest, rest)]
    B = sigma[np.ix_(idx, idx)]
    C = sigma[np.ix_(rest, idx)]

    if spec.homodyne:
        proj = np.diag([1.0, 0.0])
        inner = np.linalg.pinv(proj @ B @ proj, rcond=PINV_RCOND)
    else:
        d = float(spec.squeeze_param)
        inner = np.linalg.inv(B + np.diag([1.0 / d, d]))
    return _from_sigma(A - C @ inner @ C.T)


def partial_trace(gamma, keep: Iterable[int]) -> CovarianceMatrix:
    """
    Reduced covariance matrix of the kept modes, in the order given

    Raises:
        DimensionError: If keep is empty, repeats a mode or is out of range
    """
    keep = [int(m) for m in keep]
    sigma = _sigma(gamma)
    n = sigma.shape[0] // 2
    if not keep:
        raise DimensionError("Partial trace must keep at least one mode")
    if len(set(keep)) != len(keep):
        raise DimensionError(f"Repeated modes in {keep}")
    _check_modes(keep, n)
    idx = np.array([[2 * m, 2 * m + 1] for m in keep]).ravel()
    return _from_sigma(sigma[np.ix_(idx, idx)])


def mix(state1: GaussianState, state2: GaussianState, weight: float) -> GaussianState:
    """
    Gaussian state with the first two moments of weight * state1 + (1 - weight) * state2

    Raises:
        ParameterDomainError: If weight is outside [0, 1]
        DimensionError: If the states have different mode counts
    """
    if not 0.0 <= weight <= 1.0:
        raise ParameterDomainError(f"Mixing weight must lie in [0, 1], got {weight}")
    if state1.gamma.shape != state2.gamma.shape:
        raise DimensionError(f"Cannot mix states with {state1.n} and {state2.n} modes")
    delta = state1.displacement - state2.displacement
    gamma = (weight * state1.gamma + (1.0 - weight) * state2.gamma
             + 2.0 * weight * (1.0 - weight) * np.outer(delta, delta))
    displacement = weight * state1.displacement + (1.0 - weight) * state2.displacement
    return GaussianState(gamma=gamma, displacement=displacement)


def _mista_angle(r: float, d: float) -> float:
    s = np.sinh(2.0 * d)
    return float(np.arctan(np.exp(-2.0 * r) * s + np.sqrt(1.0 + np.exp(-4.0 * r) * s ** 2)))


def _check_mista_params(r: float, d: float) -> None:
    if not (r > 0 and d >= r):
        raise ParameterDomainError(f"Need d >= r > 0, got r={r}, d={d}")


def x_sep(r: float, d: float) -> float:
    """Noise level above which the three-mode state is fully separable"""
    _check_mista_params(r, d)
    phi = _mista_angle(r, d)
    return float(2.0 * np.sinh(2.0 * r)
                 / (np.exp(2.0 * d) * np.sin(phi) ** 2 + np.exp(-2.0 * d) * np.cos(phi) ** 2))


def protocol_cost(d: float) -> float:
    """Squeezing spent by preparing modes A and B as pure squeezed states"""
    return 2.0 * d


def mista_korolkova(r: float, d: float, x: float) -> CovarianceMatrix:
    """
    Three-mode state gamma_AB (+) I_C + x (q1 q1^T + q2 q2^T)

    Built in the sigma basis (xA, pA, xB, pB, xC, pC) and returned in the J basis.

    Raises:
        ParameterDomainError: Unless d >= r > 0 and x >= 0
    """
    _check_mista_params(r, d)
    if not x >= 0:
        raise ParameterDomainError(f"Need x >= 0, got {x}")
    a = np.cosh(2.0 * r)
    c = np.sinh(2.0 * r)
    up = np.exp(2.0 * d)
    down = np.exp(-2.0 * d)
    gamma_ab = np.array([
        [up * a, 0.0, -up * c, 0.0],
        [0.0, down * a, 0.0, down * c],
        [-up * c, 0.0, up * a, 0.0],
        [0.0, down * c, 0.0, down * a],
    ])
    phi = _mista_angle(r, d)
    root2 = np.sqrt(2.0)
    q1 = np.array([0.0, np.sin(phi), 0.0, -np.sin(phi), root2, root2])
    q2 = np.array([np.cos(phi), 0.0, np.cos(phi), 0.0, root2, root2])
    sigma = block_diag(gamma_ab, np.eye(2)) + x * (np.outer(q1, q1) + np.outer(q2, q2))
    return _from_sigma(sigma)
