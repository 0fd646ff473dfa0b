# radialopt/operations/bounds.py
"""
Iteration guarantees for the radial method and the two baselines.

The *_bound functions return the ceiling on the first iteration that reaches a
relative accuracy of epsilon. The *_rate functions give the accuracy guaranteed
after k steps, which is what the ceilings are derived from.
"""

import math
from typing import TYPE_CHECKING, Optional

from radialopt.core.exceptions import UsageError

if TYPE_CHECKING:
    from radialopt.operations.solvers import RunTrace


def _ceil(value: float) -> int:
    # absorb float noise such as 1 / 0.1**2 = 99.99999999999999
    return math.ceil(round(value, 9))


def _check_geometry(dist: float, R: float, epsilon: float) -> None:
    if not dist >= 0:
        raise UsageError(f"distance must be nonnegative, got {dist}")
    if not R > 0:
        raise UsageError(f"R must be positive, got {R}")
    if not epsilon > 0:
        raise UsageError(f"epsilon must be positive, got {epsilon}")


def eps_target_bound(dist: float, R: float, epsilon: float) -> int:
    """ceil((4/3) (dist/R)^2 / epsilon^2) for the epsilon-target step size."""
    _check_geometry(dist, R, epsilon)
    return _ceil(4.0 / 3.0 * (dist / R) ** 2 / epsilon ** 2)


def known_optimum_bound(dist: float, R: float, epsilon: float) -> int:
    """ceil((dist/R)^2 / epsilon^2) for the known-optimum step size."""
    _check_geometry(dist, R, epsilon)
    return _ceil((dist / R) ** 2 / epsilon ** 2)


def renegar_a_bound(D: float, R: float, epsilon: float) -> int:
    """ceil(8 (D/R)^2 (1/epsilon^2 + (1/epsilon) log_{4/3}(1 + D/R)))."""
    _check_geometry(D, R, epsilon)
    ratio = D / R
    return _ceil(8.0 * ratio ** 2 * (1.0 / epsilon ** 2 + math.log(1.0 + ratio, 4.0 / 3.0) / epsilon))


def renegar_b_bound(D: float, R: float, epsilon: float) -> int:
    """
    ceil(4 (D/R)^2 ((4/3) q^2 + 4q + log2 q + log2(D/R) + 1)) with q = (1 - epsilon)/epsilon.

    Only defined for 0 < epsilon < 1.
    """
    _check_geometry(D, R, epsilon)
    if not epsilon < 1:
        raise UsageError(f"renegar_b bound needs epsilon < 1, got {epsilon}")
    if not D > 0:
        raise UsageError(f"D must be positive, got {D}")
    ratio = D / R
    q = (1.0 - epsilon) / epsilon
    return _ceil(4.0 * ratio ** 2 * (4.0 / 3.0 * q ** 2 + 4.0 * q + math.log2(q) + math.log2(ratio) + 1.0))


def known_optimum_rate(dist: float, R: float, k: int) -> float:
    """Best relative accuracy guaranteed within the first k steps: dist / (R sqrt(k + 1))."""
    _check_geometry(dist, R, 1.0)
    return dist / (R * math.sqrt(k + 1))


def eps_target_rate(dist: float, R: float, epsilon: float, k: int) -> float:
    """dist^2 / (epsilon R^2 (k + 1)) + epsilon / 4."""
    _check_geometry(dist, R, epsilon)
    return dist ** 2 / (epsilon * R ** 2 * (k + 1)) + epsilon / 4.0


def general_rate(trace: "RunTrace", f_hat: float, dist: float, R: float, k: Optional[int] = None) -> float:
    """
    Right-hand side of the guarantee that holds for any step sizes:

        min_{i<=k} (f(x_i) - f_hat) / (0 - f(x_i))
            <= (dist^2 + R^-2 sum_j alpha_j^2 (f_hat/z_j)^2) / (2 sum_j alpha_j f_hat/z_j),

    with the sums over the steps j <= k recorded in the trace. dist is the
    distance from the origin to the level set {f = f_hat}.
    """
    if not f_hat < 0:
        raise UsageError(f"f_hat must be negative, got {f_hat}")
    _check_geometry(dist, R, 1.0)
    stepped = [r for r in trace.records if r.alpha is not None and (k is None or r.iter <= k)]
    if not stepped:
        return math.inf
    numerator = dist ** 2 + sum(r.alpha ** 2 * (f_hat / r.z) ** 2 for r in stepped) / R ** 2
    denominator = 2.0 * sum(r.alpha * f_hat / r.z for r in stepped)
    return numerator / denominator
