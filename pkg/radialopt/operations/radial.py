# radialopt/operations/radial.py

"""
Module: radial.py

Perspective function and radial reformulation of a canonical problem.

For gamma > 0 the perspective of f is f^p(x, gamma) = gamma * f(x / gamma). Because
f(0) < 0, f^p is strictly decreasing in gamma and tends to -inf, so the set of gamma
with f^p(x, gamma) <= z is an upper interval. Its left endpoint is the radial
reformulation

    gamma_z(x) = inf{gamma > 0 | f^p(x, gamma) <= z},

a convex function that is Lipschitz with constant 1/R even when f is neither smooth
nor Lipschitz. gamma_z(x) = 1 - lambda(x, 1, z) for the conic-extension function of
the epigraph; the cone itself is never materialized here.

Functions:
- perspective_value(problem, x, gamma) -> ExtendedValue: gamma * f(x / gamma).
- eval_gamma(problem, z, x, cfg) -> GammaResult: gamma_z(x) by bracketing and bisection.
- gamma_subgradient(problem, z, x, gamma) -> Point: one element of the subdifferential.
- gamma_grid_oracle(problem, z, x, lo, hi, steps) -> float: brute-force scan used by tests.
"""

import math
from typing import Optional

import numpy as np

from radialopt.core.config import get_settings
from radialopt.core.exceptions import (
    DegenerateNormalError,
    GridSearchError,
    LineSearchError,
    LineSearchStall,
    UsageError,
)
from radialopt.models.problem import (
    ExtendedValue,
    GammaResult,
    Point,
    Positive,
    ProblemInstance,
    ValueOracle,
    ZeroDetected,
    as_point,
    boundary_normal,
    checked_value,
)
from radialopt.schemas.solver import LineSearchConfig


def _perspective(value_oracle: ValueOracle, x: Point, gamma: float) -> ExtendedValue:
    # gamma * (+inf) stays +inf for gamma > 0
    return gamma * checked_value(value_oracle(x / gamma))


def perspective_value(problem: ProblemInstance, x, gamma: float) -> ExtendedValue:
    """
    Evaluate the perspective function f^p(x, gamma) = gamma * f(x / gamma).

    Parameters:
    - problem (ProblemInstance): The canonical problem.
    - x (Point): Point of the problem's dimension.
    - gamma (float): Strictly positive scale.

    Returns:
    - ExtendedValue: gamma * f(x / gamma), or +inf when x / gamma is outside dom f.

    Raises:
    - UsageError: If gamma <= 0 or x has the wrong dimension.

    Example:
    For f(x) = x - 1 on x <= 2, perspective_value(problem, [1.0], 2.0) == 2 * f(0.5) == -1.0.
    """
    if not gamma > 0:
        raise UsageError(f"gamma must be positive, got {gamma}")
    x = as_point(x, problem.dimension)
    return _perspective(problem.value_oracle, x, float(gamma))


def _bisect(value_oracle: ValueOracle, x: Point, z: float, lo: float, hi: float, tol: float) -> Positive:
    # Invariant: f^p(x, lo) > z >= f^p(x, hi)
    while hi - lo > tol * hi:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            raise LineSearchStall(f"gamma bracket [{lo!r}, {hi!r}] cannot be refined further")
        if _perspective(value_oracle, x, mid) <= z:
            hi = mid
        else:
            lo = mid
    return Positive(gamma=hi, bracket_width=hi - lo)


def eval_gamma(
    problem: ProblemInstance,
    z: float,
    x,
    cfg: Optional[LineSearchConfig] = None,
    initial_guess: Optional[float] = None,
) -> GammaResult:
    """
    Evaluate the radial reformulation gamma_z(x) by monotone line search.

    Starting from the initial guess, gamma is halved while f^p(x, gamma) <= z or
    doubled while f^p(x, gamma) > z until the level is bracketed, then the bracket
    is bisected to a relative width of cfg.gamma_tol. The upper endpoint is
    returned, so f^p(x, gamma * (1 + gamma_tol)) <= z and
    f^p(x, gamma * (1 - gamma_tol)) > z both hold.

    Parameters:
    - problem (ProblemInstance): The canonical problem.
    - z (float): Negative level.
    - x (Point): Point of the problem's dimension.
    - cfg (LineSearchConfig): Tolerances; defaults come from the settings.
    - initial_guess (float, optional): Warm start overriding cfg.initial_guess.

    Returns:
    - Positive(gamma, bracket_width) in the regular case.
    - ZeroDetected(witness_gamma) when halving reaches cfg.gamma_min with
      f^p still <= z. This is numerical evidence that f is unbounded below
      along the ray through x, not a proof.

    Raises:
    - UsageError: If z >= 0.
    - LineSearchError: If doubling never reaches the level (impossible for a
      valid canonical instance, since f^p -> -inf as gamma grows).
    - LineSearchStall: If the bracket hits float resolution before gamma_tol.
    - OracleError: If the value oracle returns NaN.

    Example:
    For any instance, eval_gamma(problem, f(0), 0) == Positive(gamma=1.0, ...).
    """
    if not z < 0:
        raise UsageError(f"level z must be negative, got {z}")
    cfg = cfg or LineSearchConfig()
    x = as_point(x, problem.dimension)
    oracle = problem.value_oracle
    z = float(z)

    guess = cfg.initial_guess
    if initial_guess is not None and initial_guess > cfg.gamma_min and math.isfinite(initial_guess):
        guess = float(initial_guess)

    if _perspective(oracle, x, guess) <= z:
        hi, lo = guess, None
        for _ in range(cfg.max_expansions):
            candidate = max(0.5 * hi, cfg.gamma_min)
            if _perspective(oracle, x, candidate) > z:
                lo = candidate
                break
            if candidate <= cfg.gamma_min:
                return ZeroDetected(witness_gamma=candidate)
            hi = candidate
        if lo is None:
            # halving cap hit far above gamma_min: test the threshold directly
            if _perspective(oracle, x, cfg.gamma_min) <= z:
                return ZeroDetected(witness_gamma=cfg.gamma_min)
            lo = cfg.gamma_min
    else:
        lo, hi = guess, None
        for _ in range(cfg.max_expansions):
            candidate = 2.0 * lo
            if _perspective(oracle, x, candidate) <= z:
                hi = candidate
                break
            lo = candidate
        if hi is None:
            raise LineSearchError(
                f"f^p(x, gamma) stayed above z = {z} after {cfg.max_expansions} doublings"
            )

    return _bisect(oracle, x, z, lo, hi, cfg.gamma_tol)


def gamma_subgradient(problem: ProblemInstance, z: float, x, gamma: float) -> Point:
    """
    Return one subgradient of gamma_z at x.

    With (zeta, delta) a normal of epi f at the boundary point (x/gamma, z/gamma),
    the subgradient is gamma / (<zeta, x> + delta * z) * zeta. The normal is asked
    for at height min(z/gamma, f(x/gamma)), the boundary point the line search
    actually reached.

    Parameters:
    - problem (ProblemInstance): The canonical problem.
    - z (float): Negative level.
    - x (Point): Point of the problem's dimension.
    - gamma (float): gamma_z(x) as returned by eval_gamma (Positive case).

    Returns:
    - Point: A subgradient whose norm is at most 1/R.

    Raises:
    - DegenerateNormalError: If <zeta, x> + delta * z is not safely positive,
      which signals an invalid normal from the oracle.
    - ContractViolationError: If (x/gamma, z/gamma) is not on the boundary of epi f.
    """
    if not gamma > 0:
        raise UsageError(f"gamma must be positive, got {gamma}")
    x = as_point(x, problem.dimension)
    u = x / gamma
    height = min(z / gamma, checked_value(problem.value_oracle(u)))
    normal = boundary_normal(problem, u, height)
    denominator = float(normal.zeta @ x) + normal.delta * z
    if not denominator > get_settings().DENOMINATOR_FLOOR:
        raise DegenerateNormalError(f"<zeta, x> + delta*z = {denominator} is not positive")
    return (gamma / denominator) * normal.zeta


def gamma_grid_oracle(problem: ProblemInstance, z: float, x, lo: float, hi: float, steps: int) -> float:
    """
    Smallest gamma on an evenly spaced grid over [lo, hi] with f^p(x, gamma) <= z.

    A brute-force reference for eval_gamma that relies on nothing but the
    definition. Raises GridSearchError when even hi fails the level test.
    """
    if not 0 < lo < hi:
        raise UsageError("grid bounds must satisfy 0 < lo < hi")
    if steps < 2:
        raise UsageError("grid needs at least two points")
    x = as_point(x, problem.dimension)
    for gamma in np.linspace(lo, hi, steps):
        if _perspective(problem.value_oracle, x, float(gamma)) <= z:
            return float(gamma)
    raise GridSearchError(f"no gamma in [{lo}, {hi}] reaches level {z}")
