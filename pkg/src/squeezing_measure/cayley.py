#!filepath squeezing_measure/cayley.py
"""
Cayley transform between the domain H of block matrices [[A, B], [B, -A]]
with spectrum in (-1, 1) and symplectic positive definite matrices.

Points of H are flattened into parameter vectors of length n(n+1):
diagonal of A, strict upper triangle of A row-major, then the same for B.
Off-diagonal slots fill both symmetric entries.
"""
import logging
from dataclasses import dataclass

import numpy as np

from .config import IN_H_MARGIN, RECON_TOL, STRUCT_TOL, SYM_TOL
from .errors import DimensionError, NotSymmetricError, NotSymplecticError, OutsideDomainError
from .symplectic import symmetrize

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class HPoint:
    """Pair of symmetric n x n blocks (A, B)"""
    A: np.ndarray
    B: np.ndarray

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @classmethod
    def from_blocks(cls, A, B, sym_tol: float = SYM_TOL) -> 'HPoint':
        """
        Validate and symmetrize the blocks

        Raises:
            DimensionError: If the blocks are not square of equal size
            NotSymmetricError: If a block is not symmetric within sym_tol
        """
        A = np.atleast_2d(np.asarray(A, dtype=float))
        B = np.atleast_2d(np.asarray(B, dtype=float))
        if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape != B.shape or A.shape[0] == 0:
            raise DimensionError(f"Blocks must be square and of equal size, got {A.shape} and {B.shape}")
        for name, block in (("A", A), ("B", B)):
            scale = max(1.0, float(np.max(np.abs(block))))
            if np.max(np.abs(block - block.T)) > sym_tol * scale:
                raise NotSymmetricError(f"Block {name} is not symmetric")
        return cls(A=0.5 * (A + A.T), B=0.5 * (B + B.T))

    @classmethod
    def zeros(cls, n: int) -> 'HPoint':
        return cls(A=np.zeros((n, n)), B=np.zeros((n, n)))


def param_count(n: int) -> int:
    return n * (n + 1)


def embed(H: HPoint) -> np.ndarray:
    """Real 2n x 2n matrix [[A, B], [B, -A]]"""
    return np.block([[H.A, H.B], [H.B, -H.A]])


def top_singular_values(H: HPoint) -> np.ndarray:
    """
    Singular values of A + iB, decreasing

    They are the n largest eigenvalues of embed(H), whose spectrum is
    symmetric about zero.
    """
    w = np.linalg.eigvalsh(embed(H))
    return w[H.n:][::-1].copy()


def in_H(H: HPoint, margin: float = IN_H_MARGIN) -> bool:
    """True iff the largest eigenvalue of embed(H) is at most 1 - margin"""
    return bool(np.linalg.eigvalsh(embed(H))[-1] <= 1.0 - margin)


def _solve(lhs: np.ndarray, rhs: np.ndarray, what: str) -> np.ndarray:
    try:
        X = np.linalg.solve(lhs, rhs)
    except np.linalg.LinAlgError as e:
        raise OutsideDomainError(f"{what} is singular") from e
    if not np.all(np.isfinite(X)):
        raise OutsideDomainError(f"{what} is singular")
    return 0.5 * (X + X.T)


def cayley_matrix(X) -> np.ndarray:
    """
    (I + X)(I - X)^-1 for a symmetric X

    Raises:
        OutsideDomainError: If I - X is singular
    """
    X = np.asarray(X, dtype=float)
    eye = np.eye(X.shape[0])
    return _solve(eye - X, eye + X, "I - X")


def cayley(H: HPoint) -> np.ndarray:
    """(I + H)(I - H)^-1 for the embedded H"""
    return cayley_matrix(embed(H))


def inverse_cayley_matrix(S) -> np.ndarray:
    """
    (S - I)(S + I)^-1 without any structure check

    Raises:
        OutsideDomainError: If S + I is singular
    """
    S = symmetrize(S, max(SYM_TOL, RECON_TOL))
    eye = np.eye(S.shape[0])
    return _solve(S + eye, S - eye, "S + I")


def structure_residual(X: np.ndarray) -> float:
    """Distance of X from the [[A, B], [B, -A]] pattern"""
    n = X.shape[0] // 2
    A = 0.5 * (X[:n, :n] - X[n:, n:])
    B = 0.5 * (X[:n, n:] + X[n:, :n])
    return float(np.max(np.abs(X - np.block([[A, B], [B, -A]]))))


def inverse_cayley(S, struct_tol: float = STRUCT_TOL) -> HPoint:
    """
    Map a symmetric symplectic matrix back to its point of H

    Args:
        S: Symmetric 2n x 2n matrix, expected symplectic
        struct_tol (float): Allowed deviation from the block pattern

    Returns:
        HPoint: Blocks A, B of (S - I)(S + I)^-1

    Raises:
        OutsideDomainError: If S + I is singular
        NotSymplecticError: If the result does not have the block pattern
    """
    X = inverse_cayley_matrix(S)
    n = X.shape[0] // 2
    residual = structure_residual(X)
    if residual > struct_tol:
        raise NotSymplecticError(f"Inverse Cayley image violates the block structure by {residual:.3e}")
    A = 0.5 * (X[:n, :n] - X[n:, n:])
    B = 0.5 * (X[:n, n:] + X[n:, :n])
    return HPoint(A=0.5 * (A + A.T), B=0.5 * (B + B.T))


def params_to_H(x, n: int) -> HPoint:
    """
    Unflatten a parameter vector

    Raises:
        DimensionError: If len(x) != n(n+1)
    """
    x = np.asarray(x, dtype=float)
    if n < 1 or x.ndim != 1 or x.size != param_count(n):
        raise DimensionError(f"Expected {param_count(max(n, 0))} parameters for n={n}, got shape {x.shape}")
    half = param_count(n) // 2
    iu = np.triu_indices(n, 1)
    blocks = []
    for part in (x[:half], x[half:]):
        M = np.zeros((n, n))
        M[np.diag_indices(n)] = part[:n]
        M[iu] = part[n:]
        M[iu[1], iu[0]] = part[n:]
        blocks.append(M)
    return HPoint(A=blocks[0], B=blocks[1])


def H_to_params(H: HPoint) -> np.ndarray:
    n = H.n
    iu = np.triu_indices(n, 1)
    return np.concatenate([np.diag(H.A), H.A[iu], np.diag(H.B), H.B[iu]])


def params_adjoint(W, n: int) -> np.ndarray:
    """
    Gradient of x -> <W, embed(params_to_H(x))> for a 2n x 2n matrix W

    Pulls a matrix-space subgradient back to parameter space.
    """
    W = np.asarray(W, dtype=float)
    if W.shape != (2 * n, 2 * n):
        raise DimensionError(f"Expected a {2 * n}x{2 * n} matrix, got {W.shape}")
    iu = np.triu_indices(n, 1)
    GA = W[:n, :n] - W[n:, n:]
    GB = W[:n, n:] + W[n:, :n]
    return np.concatenate([
        np.diag(GA), GA[iu] + GA.T[iu],
        np.diag(GB), GB[iu] + GB.T[iu],
    ])
