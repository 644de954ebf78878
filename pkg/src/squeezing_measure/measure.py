#!filepath squeezing_measure/measure.py
"""
Squeezing functionals, closed forms of the squeezing measure and its bounds.

All values are in nats; `to_decibel` converts for display.
"""
import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .cayley import HPoint, embed, params_adjoint, params_to_H, H_to_params, top_singular_values
from .config import EIG_TOL, IN_H_MARGIN, PURE_TOL, SolveOptions, VALIDITY_TOL
from .errors import (
    DimensionError,
    InvalidCovarianceError,
    NotPositiveDefiniteError,
    NotPureError,
    OutsideDomainError,
)
from .ralgorithm import minimize_exact_penalty
from .symplectic import as_matrix, form_matrix, is_valid_covariance, sym_log, williamson

logger = logging.getLogger(__name__)

try:
    import cvxpy as cp
except ImportError:  # pragma: no cover
    cp = None


@dataclass
class BoundsReport:
    """Lower and upper bounds on the squeezing measure, in nats"""
    spectral_lower: float
    spectral_upper: float
    williamson_lower: float
    williamson_upper: float
    sdp_lower: Optional[float] = None
    best_lower: float = field(init=False)
    best_upper: float = field(init=False)

    def __post_init__(self) -> None:
        lowers = [self.spectral_lower, self.williamson_lower]
        if self.sdp_lower is not None:
            lowers.append(self.sdp_lower)
        self.best_lower = max(lowers)
        self.best_upper = min(self.spectral_upper, self.williamson_upper)

    def to_dict(self) -> dict:
        return {
            "spectral_lower": self.spectral_lower,
            "spectral_upper": self.spectral_upper,
            "williamson_lower": self.williamson_lower,
            "williamson_upper": self.williamson_upper,
            "sdp_lower": self.sdp_lower,
            "best_lower": self.best_lower,
            "best_upper": self.best_upper,
        }


def to_decibel(value: float) -> float:
    return 10.0 * value / np.log(10.0)


def _valid_matrix(gamma) -> np.ndarray:
    G = as_matrix(gamma)
    if not is_valid_covariance(G, VALIDITY_TOL):
        raise InvalidCovarianceError("Matrix is not a valid covariance matrix")
    return G


def F(S) -> float:
    """
    Sum of the logarithms of the n largest singular values of S

    Raises:
        DimensionError: If S is not 2n x 2n
        NotPositiveDefiniteError: If S is singular
    """
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1] or S.shape[0] % 2 != 0 or S.shape[0] == 0:
        raise DimensionError(f"Expected a 2n x 2n matrix, got shape {S.shape}")
    s = np.linalg.svd(S, compute_uv=False)
    if s[-1] <= 0:
        raise NotPositiveDefiniteError("Matrix is singular")
    return float(np.sum(np.log(s[: S.shape[0] // 2])))


def objective_f(H: HPoint) -> float:
    """
    Sum over the singular values s of A + iB of (1/2) log((1 + s) / (1 - s))

    Raises:
        OutsideDomainError: If H is not in the Cayley domain
    """
    s = top_singular_values(H)
    if s[0] > 1.0 - IN_H_MARGIN:
        raise OutsideDomainError(f"Point outside the Cayley domain: top singular value {s[0]:.6g}")
    return float(np.sum(np.arctanh(s)))


def G_exact_n1(gamma) -> float:
    """
    Squeezing measure of a single-mode covariance matrix: -(1/2) log of the
    smallest eigenvalue, clamped at 0

    Raises:
        DimensionError: If gamma is not 2 x 2
        InvalidCovarianceError: If gamma is not valid
    """
    G = _valid_matrix(gamma)
    if G.shape[0] != 2:
        raise DimensionError(f"Closed form needs a single mode, got n={G.shape[0] // 2}")
    lam_min = float(np.linalg.eigvalsh(G)[0])
    return max(0.0, -0.5 * np.log(lam_min))


def G_exact_pure(gamma, pure_tol: float = PURE_TOL) -> float:
    """
    Squeezing measure of a pure state: half the sum of the logs of the n
    largest eigenvalues

    Raises:
        NotPureError: If |det gamma - 1| exceeds pure_tol
        InvalidCovarianceError: If gamma is not valid
    """
    G = as_matrix(gamma)
    det = float(np.linalg.det(G))
    if abs(det - 1.0) > pure_tol:
        raise NotPureError(f"Covariance matrix is not pure: det = {det:.12g}")
    G = _valid_matrix(G)
    lam = np.linalg.eigvalsh(G)[::-1]
    return float(0.5 * np.sum(np.log(lam[: G.shape[0] // 2])))


def spectral_bounds(gamma) -> Tuple[float, float]:
    """Bounds from the ordinary eigenvalues: (-(1/2) sum_{l<1} log l, (1/2) sum of top-n log l)"""
    G = as_matrix(gamma)
    lam = np.linalg.eigvalsh(G)
    if lam[0] <= 0:
        raise NotPositiveDefiniteError("Covariance matrix is not positive definite")
    n = G.shape[0] // 2
    small = lam[lam < 1.0 - EIG_TOL]
    lower = float(-0.5 * np.sum(np.log(small))) if small.size else 0.0
    upper = float(0.5 * np.sum(np.log(lam[::-1][:n])))
    return lower, upper


def minimal_eigenvalue_squeezing(gamma) -> float:
    """Single-quadrature squeezing -(1/2) log of the smallest eigenvalue, clamped at 0"""
    lam_min = float(np.linalg.eigvalsh(as_matrix(gamma))[0])
    return max(0.0, -0.5 * np.log(lam_min))


def log_squeezing_product(gamma) -> float:
    """(1/2) log of the product of 1/l over the eigenvalues l < 1"""
    lam = np.linalg.eigvalsh(as_matrix(gamma))
    small = lam[lam < 1.0 - EIG_TOL]
    return float(0.5 * np.log(np.prod(1.0 / small))) if small.size else 0.0


def williamson_bounds(gamma) -> Tuple[float, float]:
    """
    Bounds from the Williamson form gamma = S^T D S

    upper = F(S) since S^T S <= gamma; lower = F(S) - (1/2) log det gamma,
    clamped at 0.
    """
    G = as_matrix(gamma)
    form = williamson(G)
    upper = F(form.S)
    _, logdet = np.linalg.slogdet(G)
    lower = max(0.0, upper - 0.5 * logdet)
    return lower, upper


def _sdp_cvxpy(log_gamma: np.ndarray) -> Optional[float]:
    """Trace-norm program over block matrices [[A, B], [B, -A]] below log gamma"""
    if cp is None:
        logger.warning("cvxpy is not installed, SDP bound unavailable through cvxpy")
        return None
    dim = log_gamma.shape[0]
    n = dim // 2
    G0 = cp.Variable((dim, dim), symmetric=True)
    constraints = [
        G0[:n, :n] == -G0[n:, n:],
        G0[:n, n:] == G0[n:, :n],
        log_gamma - G0 >> 0,
    ]
    problem = cp.Problem(cp.Minimize(0.25 * cp.normNuc(G0)), constraints)
    solve_kwargs = {}
    if "CLARABEL" in cp.installed_solvers():
        solve_kwargs["solver"] = cp.CLARABEL
    try:
        problem.solve(**solve_kwargs)
    except cp.error.SolverError as e:
        logger.warning(f"SDP solver failed: {e}")
        return None
    if problem.status not in ["optimal"]:
        logger.warning(f"SDP bound did not converge: {problem.status}")
        return None
    return max(0.0, float(problem.value))


def _sdp_subgradient(G: np.ndarray, log_gamma: np.ndarray, options: SolveOptions) -> Optional[float]:
    """Same program as _sdp_cvxpy, solved by the exact-penalty r-algorithm"""
    n = G.shape[0] // 2
    form = williamson(G)
    start = sym_log(form.S.T @ form.S)
    x0 = H_to_params(HPoint(A=0.5 * (start[:n, :n] - start[n:, n:]),
                            B=0.5 * (start[:n, n:] + start[n:, :n])))

    def objective(x: np.ndarray, _c: float) -> Tuple[float, np.ndarray]:
        lam, V = np.linalg.eigh(embed(params_to_H(x, n)))
        return 0.25 * float(np.sum(np.abs(lam))), 0.25 * params_adjoint((V * np.sign(lam)) @ V.T, n)

    def residual(x: np.ndarray) -> Tuple[float, np.ndarray]:
        lam, V = np.linalg.eigh(embed(params_to_H(x, n)) - log_gamma)
        if lam[-1] <= 0:
            return 0.0, np.zeros_like(x)
        v = V[:, -1]
        return float(lam[-1]), params_adjoint(np.outer(v, v), n)

    f0, _ = objective(x0, 1.0)
    result = minimize_exact_penalty(objective, residual, x0, options, 10.0 * (f0 + 1.0))
    if result.residual > options.constraint_tol:
        logger.warning(f"Subgradient SDP bound ended infeasible (residual {result.residual:.3e})")
        return None
    return max(0.0, result.objective)


def sdp_lower_bound(gamma, options: Optional[SolveOptions] = None) -> Optional[float]:
    """
    Lower bound (1/4) min |g0|_1 over block matrices g0 = [[A, B], [B, -A]]
    with g0 <= log gamma

    Args:
        gamma: Valid covariance matrix
        options (SolveOptions, optional): sdp_method selects cvxpy, the
            subgradient engine, or cvxpy with the engine as fallback

    Returns:
        float or None: The bound, or None when no method produced a certified value
    """
    options = options or SolveOptions()
    G = _valid_matrix(gamma)
    log_gamma = sym_log(G)
    value = None
    if options.sdp_method in ("auto", "cvxpy"):
        value = _sdp_cvxpy(log_gamma)
    if value is None and options.sdp_method in ("auto", "subgradient"):
        value = _sdp_subgradient(G, log_gamma, options)
    return value


def achieves_lower_check(gamma, rel_tol: float = 1e-9) -> bool:
    """
    True iff gamma has an orthonormal eigenbasis made of symplectic pairs

    Equivalent to gamma commuting with J^T gamma J; then the spectral lower
    bound is attained.
    """
    G = as_matrix(gamma)
    J = form_matrix(G.shape[0] // 2)
    partner = J.T @ G @ J
    commutator = G @ partner - partner @ G
    scale = max(1.0, float(np.linalg.norm(G, 2)) ** 2)
    return bool(np.max(np.abs(commutator)) <= rel_tol * scale)


def bounds(gamma, options: Optional[SolveOptions] = None, with_sdp: bool = True) -> BoundsReport:
    """
    All computable bounds of a valid covariance matrix

    Raises:
        InvalidCovarianceError: If gamma is not valid
    """
    G = _valid_matrix(gamma)
    spectral_lower, spectral_upper = spectral_bounds(G)
    williamson_lower, williamson_upper = williamson_bounds(G)
    sdp = sdp_lower_bound(G, options) if with_sdp else None
    report = BoundsReport(spectral_lower, spectral_upper, williamson_lower, williamson_upper, sdp)
    logger.debug(f"Bounds: {report.to_dict()}")
    return report
