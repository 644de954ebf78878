#!filepath squeezing_measure/ralgorithm.py
"""
Nonsmooth minimisation engine.

`ralgorithm` is a space-dilation subgradient method (Shor's r-algorithm with
an adaptive step and a line search along the dilated antigradient).
`minimize_exact_penalty` wraps it into an exact-penalty scheme for problems
of the form min f(x) subject to r(x) = 0 with r >= 0.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from .config import SolveOptions

logger = logging.getLogger(__name__)

Oracle = Callable[[np.ndarray], Tuple[float, np.ndarray]]
PenaltyOracle = Callable[[np.ndarray, float], Tuple[float, np.ndarray]]

# Line search tuning
MAX_LINE_SEARCH_CALLS = 500
STEP_GROWTH_EVERY = 3
STEP_GROWTH = 1.1
STEP_SHRINK = 0.95
TINY = 1e-16


@dataclass
class RAlgorithmResult:
    x: np.ndarray
    value: float
    iterations: int
    evaluations: int
    converged: bool


@dataclass
class PenaltyResult:
    x: np.ndarray
    objective: float
    residual: float
    penalty: float
    iterations: int
    evaluations: int
    rounds: int
    converged: bool


def ralgorithm(oracle: Oracle, x0: np.ndarray, step_tol: float = 1e-6, f_tol: float = 1e-8,
               max_iter: int = 20000, dilation: float = 3.0,
               initial_step: float = 0.1) -> RAlgorithmResult:
    """
    Minimise a convex, possibly nonsmooth function

    Args:
        oracle: Returns (value, subgradient) at a point
        x0 (np.ndarray): Starting point
        step_tol (float): Stop once a line search moves less than this
        f_tol (float): ... and the best value stopped improving by more than this
        max_iter (int): Iteration budget
        dilation (float): Space dilation coefficient, > 1
        initial_step (float): First line search step

    Returns:
        RAlgorithmResult: Best point seen, its value and counters
    """
    x = np.array(x0, dtype=float)
    p = x.size
    B = np.eye(p)
    f, g0 = oracle(x)
    evaluations = 1
    best_x, best_f = x.copy(), f
    hs = initial_step
    shrink = 1.0 / dilation - 1.0
    stall_limit = 2 * p + 10
    stall = 0

    if np.linalg.norm(g0) < TINY:
        return RAlgorithmResult(best_x, best_f, 0, evaluations, True)

    for iteration in range(1, max_iter + 1):
        g1 = B.T @ g0
        norm_g1 = np.linalg.norm(g1)
        if norm_g1 < TINY:
            return RAlgorithmResult(best_x, best_f, iteration, evaluations, True)
        dx = B @ (g1 / norm_g1)
        norm_dx = np.linalg.norm(dx)

        previous_best = best_f
        d = 1.0
        calls = 0
        deltax = 0.0
        while d > 0 and calls < MAX_LINE_SEARCH_CALLS:
            x = x - hs * dx
            deltax += hs * norm_dx
            calls += 1
            f, g1 = oracle(x)
            evaluations += 1
            if f < best_f:
                best_x, best_f = x.copy(), f
            if calls % STEP_GROWTH_EVERY == 0:
                hs *= STEP_GROWTH
            d = float(dx @ g1)
        if calls == 1:
            hs *= STEP_SHRINK

        stall = stall + 1 if previous_best - best_f <= f_tol else 0
        if deltax < step_tol and previous_best - best_f <= f_tol:
            logger.debug(f"r-algorithm converged after {iteration} iterations, f={best_f:.12g}")
            return RAlgorithmResult(best_x, best_f, iteration, evaluations, True)
        if stall >= stall_limit and deltax < np.sqrt(step_tol):
            logger.debug(f"r-algorithm stagnated after {iteration} iterations, f={best_f:.12g}")
            return RAlgorithmResult(best_x, best_f, iteration, evaluations, True)

        dg = B.T @ (g1 - g0)
        norm_dg = np.linalg.norm(dg)
        if norm_dg > TINY:
            xi = dg / norm_dg
            B = B + shrink * np.outer(B @ xi, xi)
        g0 = g1

    logger.debug(f"r-algorithm hit the iteration budget {max_iter}, f={best_f:.12g}")
    return RAlgorithmResult(best_x, best_f, max_iter, evaluations, False)


def minimize_exact_penalty(objective: PenaltyOracle, residual: Oracle, x0: np.ndarray,
                           options: SolveOptions, penalty: float) -> PenaltyResult:
    """
    Minimise objective + c * residual, growing c until the minimiser is feasible

    Each round restarts the r-algorithm from the best point of the previous
    round with a fresh (identity) dilation matrix.

    Args:
        objective: (x, c) -> (value, subgradient); c lets out-of-domain
            oracles scale their subgradient with the penalty
        residual: x -> (r, subgradient) with r >= 0, zero iff feasible
        x0 (np.ndarray): Starting point
        options (SolveOptions): Tolerances, budgets, penalty growth
        penalty (float): Initial penalty weight

    Returns:
        PenaltyResult: Final point and its diagnostics
    """
    x = np.array(x0, dtype=float)
    iterations = 0
    evaluations = 0
    rounds = 0
    converged = False
    c = penalty

    for rounds in range(1, options.max_penalty_rounds + 1):
        weight = c

        def penalized(z: np.ndarray) -> Tuple[float, np.ndarray]:
            f, gf = objective(z, weight)
            r, gr = residual(z)
            return f + weight * r, gf + weight * gr

        result = ralgorithm(
            penalized, x,
            step_tol=options.step_tol,
            f_tol=options.f_tol,
            max_iter=max(1, options.max_iter - iterations),
            dilation=options.dilation,
            initial_step=options.initial_step,
        )
        iterations += result.iterations
        evaluations += result.evaluations
        x = result.x
        r, _ = residual(x)
        logger.debug(f"Penalty round {rounds}: c={c:.3e}, phi={result.value:.12g}, residual={r:.3e}")

        if r <= options.constraint_tol:
            converged = result.converged
            break
        if iterations >= options.max_iter:
            break
        c *= options.penalty_growth
        logger.info(f"Residual {r:.3e} above tolerance, raising penalty to {c:.3e}")

    f, _ = objective(x, c)
    r, _ = residual(x)
    return PenaltyResult(x=x, objective=f, residual=r, penalty=c, iterations=iterations,
                         evaluations=evaluations, rounds=rounds, converged=converged)
