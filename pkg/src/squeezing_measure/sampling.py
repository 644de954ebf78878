#!filepath squeezing_measure/sampling.py
"""Random instances for tests and gradient checks. All matrices are in the J basis."""
from typing import Optional

import numpy as np
from scipy.stats import unitary_group

from .cayley import HPoint, top_singular_values


def _rng(rng: Optional[np.random.Generator]) -> np.random.Generator:
    return rng if rng is not None else np.random.default_rng()


def random_orthogonal_symplectic(n: int, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """Realification [[Re U, -Im U], [Im U, Re U]] of a Haar-random unitary"""
    rng = _rng(rng)
    if n == 1:
        U = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)) * np.ones((1, 1))
    else:
        U = unitary_group.rvs(n, random_state=rng)
    return np.block([[U.real, -U.imag], [U.imag, U.real]])


def random_symplectic(n: int, rng: Optional[np.random.Generator] = None,
                      max_log_squeeze: float = 1.0) -> np.ndarray:
    """Product K Z K' of random orthogonal symplectic factors and squeezers"""
    rng = _rng(rng)
    s = np.exp(rng.uniform(0.0, max_log_squeeze, size=n))
    Z = np.diag(np.concatenate([s, 1.0 / s]))
    return random_orthogonal_symplectic(n, rng) @ Z @ random_orthogonal_symplectic(n, rng)


def random_pure_covariance(n: int, rng: Optional[np.random.Generator] = None,
                           max_log_squeeze: float = 1.0) -> np.ndarray:
    rng = _rng(rng)
    S = random_symplectic(n, rng, max_log_squeeze)
    G = S.T @ S
    return 0.5 * (G + G.T)


def random_covariance(n: int, rng: Optional[np.random.Generator] = None,
                      max_log_squeeze: float = 1.0, max_thermal: float = 2.0) -> np.ndarray:
    """S^T D S with random symplectic S and symplectic eigenvalues in [1, 1 + max_thermal]"""
    rng = _rng(rng)
    S = random_symplectic(n, rng, max_log_squeeze)
    d = 1.0 + rng.uniform(0.0, max_thermal, size=n)
    G = S.T @ np.diag(np.concatenate([d, d])) @ S
    return 0.5 * (G + G.T)


def random_H_point(n: int, rng: Optional[np.random.Generator] = None, radius: float = 0.9) -> HPoint:
    """Point of the Cayley domain whose top singular value is uniform in (0, radius)"""
    rng = _rng(rng)
    A = rng.standard_normal((n, n))
    B = rng.standard_normal((n, n))
    H = HPoint(A=0.5 * (A + A.T), B=0.5 * (B + B.T))
    top = top_singular_values(H)[0]
    scale = rng.uniform(0.05, 1.0) * radius / top
    return HPoint(A=scale * H.A, B=scale * H.B)
