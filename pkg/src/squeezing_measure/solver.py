#!filepath squeezing_measure/solver.py
"""
Squeezing measure by nonsmooth convex minimisation.

G(gamma) is the minimum of f(H) = sum_i artanh(s_i(A + iB)) over points H of
the Cayley domain with H <= C^-1(gamma). The constraint is handled by exact
penalisation and the penalised problem by the r-algorithm; outside the
domain the objective is replaced by a large sentinel value.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Tuple

import numpy as np

from .cayley import (
    HPoint,
    H_to_params,
    cayley,
    embed,
    in_H,
    inverse_cayley,
    inverse_cayley_matrix,
    params_adjoint,
    params_to_H,
)
from .config import IN_H_MARGIN, SENTINEL_FACTOR, SolveOptions
from .errors import InactiveConstraintError, NotPositiveDefiniteError, OutsideDomainError
from .measure import BoundsReport, bounds, objective_f
from .ralgorithm import minimize_exact_penalty
from .symplectic import as_matrix, is_valid_covariance, sym_sqrt, williamson

logger = logging.getLogger(__name__)

FAILURE_MARGIN = 1e-4


class GradientMode(str, Enum):
    ANALYTIC = "analytic"
    NUMERIC = "numeric"
    HYBRID = "hybrid"


class SolveStatus(str, Enum):
    CONVERGED = "converged"
    MAX_ITER = "max_iter"
    INFEASIBLE = "infeasible"
    NUMERICAL_FAILURE = "numerical_failure"


@dataclass
class SolveResult:
    value: float
    H_opt: Optional[HPoint]
    S_opt: Optional[np.ndarray]
    prep_error: float
    residual: float
    iterations: int
    status: SolveStatus
    gradient_mode: GradientMode = GradientMode.ANALYTIC
    bounds: Optional[BoundsReport] = None

    @property
    def ok(self) -> bool:
        return self.status is SolveStatus.CONVERGED


def finite_diff_subgradient(fn: Callable[[np.ndarray], float], x: np.ndarray, h: float = 1e-7) -> np.ndarray:
    """Central differences (fn(x + h e_i) - fn(x - h e_i)) / 2h"""
    x = np.asarray(x, dtype=float)
    grad = np.zeros_like(x)
    for i in range(x.size):
        step = np.zeros_like(x)
        step[i] = h
        grad[i] = (fn(x + step) - fn(x - step)) / (2.0 * h)
    return grad


def starting_point(gamma) -> HPoint:
    """
    Cayley preimage of S^T S for the Williamson form gamma = S^T D S

    Feasible because S^T S <= gamma for valid gamma.
    """
    form = williamson(as_matrix(gamma))
    P = form.S.T @ form.S
    return inverse_cayley(0.5 * (P + P.T))


def preparation_error(gamma, S) -> float:
    """
    How far S is from preparing gamma with added noise

    With T = S^-T gamma S^-1, the state is reprepared as
    S^T (T + (1 - min(1, lambda_min(T))) I) S and the spectral norm of the
    difference to gamma is returned.

    Raises:
        NotPositiveDefiniteError: If S is singular
    """
    G = as_matrix(gamma)
    S = np.asarray(S, dtype=float)
    try:
        S_inv = np.linalg.inv(S)
    except np.linalg.LinAlgError as e:
        raise NotPositiveDefiniteError("Symplectic matrix is singular") from e
    T = S_inv.T @ G @ S_inv
    T = 0.5 * (T + T.T)
    lam_min = float(np.linalg.eigvalsh(T)[0])
    shifted = T + (1.0 - min(1.0, lam_min)) * np.eye(T.shape[0])
    return float(np.linalg.norm(S.T @ shifted @ S - G, 2))


class SqueezingProblem:
    """Objective, constraint and their subgradients for one covariance matrix"""

    def __init__(self, gamma, options: Optional[SolveOptions] = None) -> None:
        self.gamma = as_matrix(gamma)
        self.n = self.gamma.shape[0] // 2
        self.options = options or SolveOptions()
        self.cayley_bound = inverse_cayley_matrix(self.gamma)
        self.H0 = starting_point(self.gamma)
        self.x0 = H_to_params(self.H0)
        self.f0 = objective_f(self.H0)
        self.sentinel = SENTINEL_FACTOR * max(self.f0, 1.0)

    def _spectrum(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return np.linalg.eigh(embed(params_to_H(x, self.n)))

    def objective_safe(self, x: np.ndarray) -> float:
        """Objective inside the domain, the sentinel outside"""
        w, _ = self._spectrum(x)
        if w[-1] > 1.0 - IN_H_MARGIN:
            return self.sentinel
        return float(np.sum(np.arctanh(w[self.n:])))

    def objective_subgradient(self, x: np.ndarray) -> np.ndarray:
        """
        Sum of the eigenvalue gradients v v^T weighted by 1 / (1 - l^2)

        Raises:
            OutsideDomainError: If x is outside the domain
        """
        w, V = self._spectrum(x)
        if w[-1] > 1.0 - IN_H_MARGIN:
            raise OutsideDomainError(f"Subgradient requested outside the domain (top eigenvalue {w[-1]:.6g})")
        top = V[:, self.n:]
        weights = 1.0 / (1.0 - w[self.n:] ** 2)
        return params_adjoint((top * weights) @ top.T, self.n)

    def _residual_terms(self, x: np.ndarray):
        E = embed(params_to_H(x, self.n))
        w_dom, V_dom = np.linalg.eigh(E)
        w_gap, V_gap = np.linalg.eigh(E - self.cayley_bound)
        return (w_dom[-1] - 1.0, V_dom[:, -1]), (w_gap[-1], V_gap[:, -1])

    def constraint_residual(self, x: np.ndarray) -> float:
        """max(0, lambda_max(H) - 1, lambda_max(H - C^-1(gamma)))"""
        (t_dom, _), (t_gap, _) = self._residual_terms(x)
        return float(max(0.0, t_dom, t_gap))

    def constraint_subgradient(self, x: np.ndarray) -> np.ndarray:
        """
        Gradient of the active residual term through its top eigenvector

        Raises:
            InactiveConstraintError: If x is feasible
        """
        (t_dom, v_dom), (t_gap, v_gap) = self._residual_terms(x)
        if max(t_dom, t_gap) <= 0:
            raise InactiveConstraintError("Constraint subgradient requested at a feasible point")
        v = v_gap if t_gap >= t_dom else v_dom
        return params_adjoint(np.outer(v, v), self.n)

    def objective_oracle(self, mode: GradientMode) -> Callable[[np.ndarray, float], Tuple[float, np.ndarray]]:
        """(x, c) -> (value, subgradient) for the penalty driver"""
        h = self.options.fd_step

        def oracle(x: np.ndarray, c: float) -> Tuple[float, np.ndarray]:
            w, V = self._spectrum(x)
            if w[-1] > 1.0 - IN_H_MARGIN:
                v = V[:, -1]
                return self.sentinel, max(c, 1.0) * params_adjoint(np.outer(v, v), self.n)
            value = float(np.sum(np.arctanh(w[self.n:])))
            if mode is GradientMode.NUMERIC:
                return value, finite_diff_subgradient(self.objective_safe, x, h)
            top = V[:, self.n:]
            weights = 1.0 / (1.0 - w[self.n:] ** 2)
            return value, params_adjoint((top * weights) @ top.T, self.n)

        return oracle

    def residual_oracle(self, mode: GradientMode) -> Callable[[np.ndarray], Tuple[float, np.ndarray]]:
        h = self.options.fd_step

        def oracle(x: np.ndarray) -> Tuple[float, np.ndarray]:
            (t_dom, v_dom), (t_gap, v_gap) = self._residual_terms(x)
            r = max(0.0, t_dom, t_gap)
            if r <= 0:
                return 0.0, np.zeros_like(x)
            if mode is GradientMode.ANALYTIC:
                v = v_gap if t_gap >= t_dom else v_dom
                return float(r), params_adjoint(np.outer(v, v), self.n)
            return float(r), finite_diff_subgradient(self.constraint_residual, x, h)

        return oracle


def _solve_with_mode(problem: SqueezingProblem, mode: GradientMode) -> SolveResult:
    options = problem.options
    penalty = 10.0 * (problem.f0 + 1.0)
    logger.debug(f"Starting {mode.value} solve: n={problem.n}, f(H0)={problem.f0:.10g}, c0={penalty:.3e}")
    result = minimize_exact_penalty(
        problem.objective_oracle(mode),
        problem.residual_oracle(mode),
        problem.x0,
        options,
        penalty,
    )

    H_opt = params_to_H(result.x, problem.n)
    if not in_H(H_opt):
        logger.warning("Solver ended outside the Cayley domain")
        return SolveResult(value=float("nan"), H_opt=H_opt, S_opt=None, prep_error=float("inf"),
                           residual=result.residual, iterations=result.iterations,
                           status=SolveStatus.NUMERICAL_FAILURE, gradient_mode=mode)

    value = objective_f(H_opt)
    S_opt = sym_sqrt(cayley(H_opt))
    status = SolveStatus.CONVERGED
    if not result.converged or result.residual > options.constraint_tol:
        status = SolveStatus.MAX_ITER
    return SolveResult(
        value=value,
        H_opt=H_opt,
        S_opt=S_opt,
        prep_error=preparation_error(problem.gamma, S_opt),
        residual=result.residual,
        iterations=result.iterations,
        status=status,
        gradient_mode=mode,
    )


def minimize_G(gamma, options: Optional[SolveOptions] = None) -> SolveResult:
    """
    Compute the squeezing measure of a covariance matrix

    Args:
        gamma: CovarianceMatrix or J-basis array
        options (SolveOptions, optional): Solver options

    Returns:
        SolveResult: Value in nats, optimal point, extracted symplectic
            matrix and diagnostics. Invalid input gives status INFEASIBLE
            and value inf.
    """
    options = options or SolveOptions()
    G = as_matrix(gamma)
    if not is_valid_covariance(G):
        logger.warning("Covariance matrix violates the uncertainty relation, no feasible point")
        return SolveResult(value=float("inf"), H_opt=None, S_opt=None, prep_error=float("inf"),
                           residual=float("inf"), iterations=0, status=SolveStatus.INFEASIBLE,
                           gradient_mode=GradientMode(options.gradient_mode))

    report = bounds(G, options, with_sdp=False)
    problem = SqueezingProblem(G, options)
    mode = GradientMode(options.gradient_mode)
    logger.info(f"Solving n={problem.n} instance with {mode.value} gradients, "
                f"bounds [{report.best_lower:.6g}, {report.best_upper:.6g}]")

    result = _solve_with_mode(problem, mode)
    failed = (result.status is SolveStatus.NUMERICAL_FAILURE
              or result.value < report.best_lower - FAILURE_MARGIN)
    if failed and mode is not GradientMode.NUMERIC:
        logger.warning(f"Value {result.value:.6g} below lower bound {report.best_lower:.6g}, "
                       f"rerunning with numeric gradients")
        result = _solve_with_mode(problem, GradientMode.NUMERIC)
        failed = (result.status is SolveStatus.NUMERICAL_FAILURE
                  or result.value < report.best_lower - FAILURE_MARGIN)
    if failed:
        result.status = SolveStatus.NUMERICAL_FAILURE

    result.bounds = report
    logger.info(f"Solve finished: value={result.value:.10g}, status={result.status.value}, "
                f"iterations={result.iterations}, prep_error={result.prep_error:.3e}")
    return result


@dataclass
class GradientCheckReport:
    n: int
    samples: int
    seed: int
    max_objective_error: float
    max_constraint_error: float
    tolerance: float = 1e-4

    @property
    def passed(self) -> bool:
        return max(self.max_objective_error, self.max_constraint_error) <= self.tolerance


def _relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    scale = max(float(np.max(np.abs(analytic))), 1e-12)
    return float(np.max(np.abs(analytic - numeric)) / scale)


def gradient_check(n: int, samples: int = 20, seed: int = 0, h: float = 1e-6,
                   tolerance: float = 1e-4) -> GradientCheckReport:
    """
    Compare analytic subgradients with central differences at random points

    Objective points are random interior points of the Cayley domain. For the
    constraint a pure state is used, whose Cayley bound is the starting
    point itself, and the point is pushed off it by a small random step so
    the constraint is active.
    """
    from .sampling import random_H_point, random_pure_covariance

    rng = np.random.default_rng(seed)
    worst_objective = 0.0
    worst_constraint = 0.0
    for _ in range(samples):
        problem = SqueezingProblem(random_pure_covariance(n, rng, max_log_squeeze=0.5))

        x = H_to_params(random_H_point(n, rng, radius=0.8))
        worst_objective = max(worst_objective, _relative_error(
            problem.objective_subgradient(x),
            finite_diff_subgradient(problem.objective_safe, x, h)))

        step = H_to_params(random_H_point(n, rng, radius=0.05))
        x = problem.x0 + step
        worst_constraint = max(worst_constraint, _relative_error(
            problem.constraint_subgradient(x),
            finite_diff_subgradient(problem.constraint_residual, x, h)))

    report = GradientCheckReport(n=n, samples=samples, seed=seed, max_objective_error=worst_objective,
                                 max_constraint_error=worst_constraint, tolerance=tolerance)
    logger.info(f"Gradient check n={n}: objective {worst_objective:.3e}, constraint {worst_constraint:.3e}")
    return report
