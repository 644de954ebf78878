#!filepath squeezing_measure/symplectic.py
"""
Symplectic linear algebra for n-mode covariance matrices.

The canonical basis inside the package is the J basis, coordinates
(x1, ..., xn, p1, ..., pn) with J = [[0, I], [-I, 0]]. The sigma basis
interleaves the modes, (x1, p1, x2, p2, ...), and is only used on ingestion
and by state constructors that are naturally written per mode.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Union

import numpy as np
from scipy.linalg import block_diag, polar, schur

from .config import EIG_TOL, RECON_TOL, SYM_TOL, VALIDITY_TOL
from .errors import (
    DimensionError,
    NotPositiveDefiniteError,
    NotSymmetricError,
    NotSymplecticError,
)

logger = logging.getLogger(__name__)


class Basis(str, Enum):
    """Ordering of the phase-space coordinates"""
    SIGMA = "sigma"
    J = "J"

    @classmethod
    def parse(cls, value: Union[str, 'Basis']) -> 'Basis':
        """Accept 'sigma' / 'J' in any letter case"""
        if isinstance(value, Basis):
            return value
        key = str(value).strip().lower()
        if key == "sigma":
            return cls.SIGMA
        if key == "j":
            return cls.J
        raise ValueError(f"Unknown basis '{value}', expected 'sigma' or 'J'")


@dataclass(frozen=True, eq=False)
class SymplecticForm:
    n: int
    basis: Basis
    matrix: np.ndarray


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    """
    Second-moment matrix of an n-mode state, tagged with its basis

    Use `CovarianceMatrix.from_array` to build one; it checks the shape and
    symmetry and stores the symmetrized entries.
    """
    entries: np.ndarray
    basis: Basis = Basis.J

    @property
    def n(self) -> int:
        return self.entries.shape[0] // 2

    @classmethod
    def from_array(cls, matrix, basis: Union[str, Basis] = Basis.J,
                   sym_tol: float = SYM_TOL) -> 'CovarianceMatrix':
        """
        Validate and symmetrize a raw matrix

        Args:
            matrix: 2n x 2n array-like
            basis: Basis the entries are written in
            sym_tol (float): Allowed asymmetry, relative to the largest entry

        Returns:
            CovarianceMatrix: The validated matrix

        Raises:
            DimensionError: If the matrix is not square with even dimension
            NotSymmetricError: If the asymmetry exceeds sym_tol
        """
        entries = symmetrize(matrix, sym_tol)
        return cls(entries=entries, basis=Basis.parse(basis))

    def in_j(self) -> np.ndarray:
        """Entries in the J basis"""
        return permute_basis(self.entries, self.basis, Basis.J)


@dataclass(frozen=True, eq=False)
class WilliamsonForm:
    """Gamma = S^T D S with S symplectic and D = diag(d, d)"""
    S: np.ndarray
    D: np.ndarray
    spectrum: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return self.S.T @ self.D @ self.S

    def residual(self, gamma) -> float:
        """Largest absolute entry of S^T D S - gamma"""
        return float(np.max(np.abs(self.reconstruct() - as_matrix(gamma))))


@dataclass(frozen=True, eq=False)
class EulerForm:
    """S = K Z K' with K, K' orthogonal symplectic and Z = diag(s, 1/s)"""
    K: np.ndarray
    squeeze_params: np.ndarray
    K_prime: np.ndarray
    Z: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        s = np.asarray(self.squeeze_params, dtype=float)
        object.__setattr__(self, "Z", np.diag(np.concatenate([s, 1.0 / s])))

    def reconstruct(self) -> np.ndarray:
        return self.K @ self.Z @ self.K_prime


def check_square_even(matrix) -> np.ndarray:
    """
    Return the input as a float array, raising if it is not 2n x 2n

    Raises:
        DimensionError: On non-square, odd or empty input
    """
    M = np.asarray(matrix, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"Expected a square matrix, got shape {M.shape}")
    if M.shape[0] == 0 or M.shape[0] % 2 != 0:
        raise DimensionError(f"Expected an even, nonzero dimension, got {M.shape[0]}")
    return M


def symmetrize(matrix, sym_tol: float = SYM_TOL) -> np.ndarray:
    """
    Check symmetry to a relative tolerance and return (M + M^T) / 2

    Raises:
        DimensionError: If the matrix is not 2n x 2n
        NotSymmetricError: If max|M - M^T| exceeds sym_tol * max(1, max|M|)
    """
    M = check_square_even(matrix)
    scale = max(1.0, float(np.max(np.abs(M))))
    asym = float(np.max(np.abs(M - M.T)))
    if asym > sym_tol * scale:
        raise NotSymmetricError(f"Matrix is not symmetric: max asymmetry {asym:.3e}")
    return 0.5 * (M + M.T)


def as_matrix(gamma, sym_tol: float = SYM_TOL) -> np.ndarray:
    """J-basis symmetric array from a CovarianceMatrix or a raw J-basis array"""
    if isinstance(gamma, CovarianceMatrix):
        return gamma.in_j()
    return symmetrize(gamma, sym_tol)


def mode_order(n: int) -> np.ndarray:
    """Sigma-basis index of each J-basis coordinate: [0, 2, 4, ..., 1, 3, 5, ...]"""
    return np.concatenate([np.arange(0, 2 * n, 2), np.arange(1, 2 * n, 2)])


def build_form(n: int, basis: Union[str, Basis] = Basis.J) -> SymplecticForm:
    """
    Standard symplectic form for n modes

    Args:
        n (int): Number of modes
        basis: Basis.SIGMA for the direct sum of [[0, 1], [-1, 0]] blocks,
            Basis.J for [[0, I], [-I, 0]]

    Returns:
        SymplecticForm: The form

    Raises:
        DimensionError: If n < 1
    """
    basis = Basis.parse(basis)
    if int(n) < 1:
        raise DimensionError(f"Mode count must be at least 1, got {n}")
    n = int(n)
    if basis is Basis.SIGMA:
        block = np.array([[0.0, 1.0], [-1.0, 0.0]])
        matrix = block_diag(*([block] * n))
    else:
        eye = np.eye(n)
        zero = np.zeros((n, n))
        matrix = np.block([[zero, eye], [-eye, zero]])
    return SymplecticForm(n=n, basis=basis, matrix=matrix)


def form_matrix(n: int) -> np.ndarray:
    """J-basis form as a plain array"""
    return build_form(n, Basis.J).matrix


def permute_basis(matrix, from_basis: Union[str, Basis], to_basis: Union[str, Basis]) -> np.ndarray:
    """
    Rewrite a 2n x 2n matrix in another basis by conjugating with the
    mode-interleaving permutation

    Raises:
        DimensionError: If the matrix is not 2n x 2n
    """
    M = check_square_even(matrix)
    from_basis, to_basis = Basis.parse(from_basis), Basis.parse(to_basis)
    if from_basis is to_basis:
        return M.copy()
    order = mode_order(M.shape[0] // 2)
    if to_basis is Basis.SIGMA:
        order = np.argsort(order)
    return M[np.ix_(order, order)]


def is_symplectic(S, tol: float = RECON_TOL, basis: Union[str, Basis] = Basis.J) -> bool:
    """
    Check S^T Omega S = Omega entrywise to tol

    Returns False rather than raising on malformed input.
    """
    try:
        M = check_square_even(S)
    except DimensionError:
        return False
    omega = build_form(M.shape[0] // 2, basis).matrix
    return bool(np.max(np.abs(M.T @ omega @ M - omega)) <= tol)


def _eigh_positive(P: np.ndarray, what: str):
    w, V = np.linalg.eigh(P)
    if w[0] <= 0:
        raise NotPositiveDefiniteError(f"{what} is not positive definite: smallest eigenvalue {w[0]:.3e}")
    return w, V


def sym_sqrt(P) -> np.ndarray:
    """
    Symmetric positive square root through the eigendecomposition

    Raises:
        NotPositiveDefiniteError: If P has a nonpositive eigenvalue
    """
    P = symmetrize(P, max(SYM_TOL, RECON_TOL))
    w, V = _eigh_positive(P, "Matrix")
    R = (V * np.sqrt(w)) @ V.T
    return 0.5 * (R + R.T)


def sym_inv_sqrt(P) -> np.ndarray:
    P = symmetrize(P, max(SYM_TOL, RECON_TOL))
    w, V = _eigh_positive(P, "Matrix")
    R = (V / np.sqrt(w)) @ V.T
    return 0.5 * (R + R.T)


def sym_log(P) -> np.ndarray:
    """Principal logarithm of a symmetric positive definite matrix"""
    P = symmetrize(P, max(SYM_TOL, RECON_TOL))
    w, V = _eigh_positive(P, "Matrix")
    L = (V * np.log(w)) @ V.T
    return 0.5 * (L + L.T)


def symplectic_eigenvalues(gamma) -> np.ndarray:
    """
    Symplectic eigenvalues of a positive definite covariance matrix

    Computed as the positive eigenvalues of the Hermitian matrix
    i * G^(1/2) J G^(1/2).

    Args:
        gamma: CovarianceMatrix or J-basis array

    Returns:
        np.ndarray: n values in decreasing order

    Raises:
        NotPositiveDefiniteError: If gamma is not positive definite
    """
    G = as_matrix(gamma)
    n = G.shape[0] // 2
    R = sym_sqrt(G)
    w = np.linalg.eigvalsh(1j * (R @ form_matrix(n) @ R))
    return np.sort(w[n:])[::-1].copy()


def is_valid_covariance(gamma, tol: float = VALIDITY_TOL) -> bool:
    """
    True iff every symplectic eigenvalue is at least 1 - tol

    A matrix that is not positive definite is never valid.

    Raises:
        NotSymmetricError: If gamma is not symmetric
    """
    G = as_matrix(gamma)
    try:
        d = symplectic_eigenvalues(G)
    except NotPositiveDefiniteError:
        return False
    return bool(d[-1] >= 1.0 - tol)


def williamson(gamma) -> WilliamsonForm:
    """
    Williamson normal form gamma = S^T D S

    The real Schur form of G^(-1/2) J G^(-1/2) is block diagonal with blocks
    [[0, t], [-t, 0]]; the symplectic eigenvalues are d = 1/t and
    S^T = G^(1/2) K D^(-1/2) with K the (reordered) Schur vectors.

    Args:
        gamma: CovarianceMatrix or J-basis array

    Returns:
        WilliamsonForm: S, D = diag(d, d) and d in decreasing order

    Raises:
        NotPositiveDefiniteError: If gamma is singular or indefinite
    """
    G = as_matrix(gamma)
    n = G.shape[0] // 2
    J = form_matrix(n)
    R = sym_sqrt(G)
    R_inv = sym_inv_sqrt(G)

    _, K = schur(R_inv @ J @ R_inv, output="real")
    T = K.T @ R_inv @ J @ R_inv @ K
    K = K.copy()
    for i in range(n):
        if T[2 * i, 2 * i + 1] < 0:
            K[:, [2 * i, 2 * i + 1]] = K[:, [2 * i + 1, 2 * i]]
    K = K[:, mode_order(n)]

    t = np.diag((K.T @ R_inv @ J @ R_inv @ K)[:n, n:])
    if np.any(t <= EIG_TOL):
        raise NotPositiveDefiniteError("Williamson decomposition failed: degenerate Schur blocks")
    d = 1.0 / t
    idx = np.argsort(-d, kind="stable")
    d = d[idx]
    K = K[:, np.concatenate([idx, idx + n])]

    D = np.diag(np.concatenate([d, d]))
    S = (R @ K @ np.diag(np.concatenate([d, d]) ** -0.5)).T
    logger.debug(f"Williamson form for n={n}: spectrum {d}")
    return WilliamsonForm(S=S, D=D, spectrum=d)


def _symplectic_frame(P: np.ndarray, n: int) -> np.ndarray:
    """
    Orthogonal symplectic O = [X, J^T X] whose columns are eigenvectors of
    the symmetric symplectic matrix P
    """
    J = form_matrix(n)
    w, V = np.linalg.eigh(P)
    candidates = [V[:, k] for k in np.argsort(-w, kind="stable")]
    accepted: List[np.ndarray] = []

    for _ in range(n):
        best_vec: Optional[np.ndarray] = None
        best_norm = -1.0
        best_pos = -1
        for pos, v in enumerate(candidates):
            r = v.copy()
            for c in accepted:
                for u in (c, J.T @ c):
                    r -= (u @ r) * u
            norm = float(np.linalg.norm(r))
            if norm >= 0.5:
                best_vec, best_norm, best_pos = r, norm, pos
                break
            if norm > best_norm:
                best_vec, best_norm, best_pos = r, norm, pos
        candidates.pop(best_pos)
        accepted.append(best_vec / best_norm)

    X = np.column_stack(accepted)
    return np.hstack([X, J.T @ X])


def euler(S, tol: float = RECON_TOL) -> EulerForm:
    """
    Euler (Bloch-Messiah) decomposition S = K Z K'

    The polar factors S = U P are both symplectic; P is diagonalised by an
    orthogonal symplectic frame and U is absorbed into K.

    Args:
        S: Symplectic J-basis matrix
        tol (float): Symplecticity tolerance, scaled by max(1, |S|^2)

    Returns:
        EulerForm: K, squeeze parameters s1 >= ... >= sn >= 1, K'

    Raises:
        NotSymplecticError: If S is not symplectic
    """
    M = check_square_even(S)
    n = M.shape[0] // 2
    scale = max(1.0, float(np.linalg.norm(M, 2)) ** 2)
    if not is_symplectic(M, tol * scale):
        raise NotSymplecticError("Euler decomposition needs a symplectic matrix")

    U, P = polar(M)
    P = 0.5 * (P + P.T)
    J = form_matrix(n)
    O = _symplectic_frame(P, n)

    s = np.array([O[:, k] @ P @ O[:, k] for k in range(n)])
    for k in range(n):
        if s[k] < 1.0:
            c = O[:, k].copy()
            O[:, k] = J.T @ c
            O[:, n + k] = -c
            s[k] = O[:, k] @ P @ O[:, k]
    idx = np.argsort(-s, kind="stable")
    s = s[idx]
    O = O[:, np.concatenate([idx, idx + n])]

    return EulerForm(K=U @ O, squeeze_params=s, K_prime=O.T)
