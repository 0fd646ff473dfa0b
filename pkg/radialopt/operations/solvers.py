# radialopt/operations/solvers.py
"""
Module: solvers.py

The radial subgradient method and two function-oriented baselines that share its
oracles, plus the per-iteration trace they all produce.

Functions:
- radial_subgradient_run(problem, policy, cfg) -> RunTrace: subgradient step on
  gamma_{z_i}, then a radial update of (x, z) every iteration.
- renegar_a_run(problem, epsilon, cfg) -> RunTrace: fixed level, radial update only
  when gamma_z(x) <= 3/4.
- renegar_b_run(problem, f_star, cfg) -> RunTrace: level fixed at f*, no radial updates.
- relative_accuracy(f_x, f_ref) -> float: (f_x - f_ref) / (0 - f_ref).
- best_so_far(trace) -> list: running minimum of the relative accuracy.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional

import numpy as np

from radialopt.core.config import get_settings
from radialopt.core.exceptions import (
    LineSearchStall,
    NonPositiveStepError,
    RadialOptError,
    SolverError,
    StationaryPointError,
    UsageError,
)
from radialopt.models.problem import (
    GammaResult,
    Point,
    ProblemInstance,
    ZeroDetected,
    evaluate,
)
from radialopt.operations.bounds import eps_target_bound
from radialopt.operations.radial import eval_gamma, gamma_subgradient
from radialopt.operations.steps import (
    Custom,
    EpsilonTarget,
    StepPolicy,
    StepState,
    step_size,
)
from radialopt.schemas.solver import SolverConfig

logger = logging.getLogger(__name__)

PROGRESS_EVERY = 1000
RENEGAR_A_THRESHOLD = 0.75


class RunStatus(str, Enum):
    MAX_ITERS = "MaxIters"
    TARGET_REACHED = "TargetReached"
    UNBOUNDED = "UnboundedDetected"
    NUMERICAL_STALL = "NumericalStall"


@dataclass
class IterateRecord:
    """
    One row of a run trace.

    For the radial method x is the iterate itself; for the baselines it is the
    radially scaled point x_i / gamma_{z_i}(x_i) whose value the guarantees are
    about. alpha and subgrad_norm are absent on the record no step was taken from.
    """
    iter: int
    x: Point
    z: float
    f_x: float
    alpha: Optional[float] = None
    subgrad_norm: Optional[float] = None
    gamma_residual: Optional[float] = None
    rel_accuracy: Optional[float] = None
    descent_slack: Optional[float] = None


@dataclass
class RunTrace:
    records: List[IterateRecord]
    status: RunStatus
    algorithm: str = "radial"
    policy: Optional[str] = None
    ray: Optional[Point] = None
    best_value: float = math.inf
    best_point: Optional[Point] = None
    violations: Dict[str, int] = field(default_factory=dict)

    @property
    def iterations(self) -> int:
        return max(len(self.records) - 1, 0)

    @property
    def best_relative_accuracy(self) -> Optional[float]:
        values = [r.rel_accuracy for r in self.records if r.rel_accuracy is not None]
        return min(values) if values else None

    def achieved_iteration(self, epsilon: float) -> Optional[int]:
        """First iteration whose relative accuracy is <= epsilon."""
        for record in self.records:
            if record.rel_accuracy is not None and record.rel_accuracy <= epsilon:
                return record.iter
        return None


def relative_accuracy(f_x: float, f_ref: float) -> float:
    """
    Return (f_x - f_ref) / (0 - f_ref).

    A result below epsilon is the same statement as f_x < f_ref * (1 - epsilon).

    Example:
    >>> relative_accuracy(0.0, -2.0)
    1.0
    """
    if not f_ref < 0:
        raise UsageError(f"reference value must be negative, got {f_ref}")
    return (f_x - f_ref) / (0.0 - f_ref)


def best_so_far(trace: RunTrace) -> List[Optional[float]]:
    """Running minimum of the relative accuracy; None until the first measured record."""
    best = None
    out = []
    for record in trace.records:
        if record.rel_accuracy is not None and (best is None or record.rel_accuracy < best):
            best = record.rel_accuracy
        out.append(best)
    return out


def descent_slack(
    f_y: float, y: Point, x_k: Point, z_k: float, x_next: Point, z_next: float, alpha: float, subgrad_norm: float
) -> float:
    """
    Right-hand side minus left-hand side of the per-iteration descent inequality

        ||(f(y)/z_{k+1}) x_{k+1} - y||^2 <= ||(f(y)/z_k) x_k - y||^2
            - 2 alpha_k (f(y)/z_k) (z_k - f(y)) / (0 - z_k) + alpha_k^2 (f(y)/z_k)^2 ||zeta_k||^2,

    valid for any y with f(y) < 0. A negative result is a violation.
    """
    s_k = f_y / z_k
    s_next = f_y / z_next
    lhs = float(np.sum((s_next * x_next - y) ** 2))
    rhs = (
        float(np.sum((s_k * x_k - y) ** 2))
        - 2.0 * alpha * s_k * (z_k - f_y) / (0.0 - z_k)
        + alpha ** 2 * s_k ** 2 * subgrad_norm ** 2
    )
    return rhs - lhs


class _InvariantMonitor:
    """Counts runtime invariant violations of a radial run and logs each one."""

    def __init__(self, enabled: bool, f_star: Optional[float], gamma_tol: float):
        settings = get_settings()
        self.enabled = enabled
        self.f_star = f_star
        self.residual_limit = settings.RESIDUAL_FACTOR * gamma_tol
        self.tol = settings.INVARIANT_TOL
        self.slack_tol = settings.DESCENT_SLACK_TOL
        self.counts = {"gamma_residual": 0, "ordering": 0, "descent": 0}

    def _flag(self, name: str, record: IterateRecord, detail: str) -> None:
        self.counts[name] += 1
        logger.warning("invariant %s violated at iteration %d: %s", name, record.iter, detail)

    def check_record(self, record: IterateRecord) -> None:
        if not self.enabled:
            return
        if record.gamma_residual is not None and record.gamma_residual > self.residual_limit:
            self._flag("gamma_residual", record, f"|gamma - 1| = {record.gamma_residual:.3e}")
        tol = self.tol * max(1.0, abs(record.z))
        ordered = record.f_x <= record.z + tol and record.z < 0
        if self.f_star is not None:
            ordered = ordered and self.f_star <= record.f_x + tol
        if not ordered:
            self._flag("ordering", record, f"f = {record.f_x!r}, z = {record.z!r}, f* = {self.f_star!r}")

    def check_descent(self, record: IterateRecord) -> None:
        if self.enabled and record.descent_slack is not None and record.descent_slack < -self.slack_tol:
            self._flag("descent", record, f"slack = {record.descent_slack:.3e}")


def _gamma_evaluator(problem: ProblemInstance, cfg: SolverConfig) -> Callable[..., GammaResult]:
    if cfg.closed_form:
        if problem.closed_form_gamma is not None:
            closed_form = problem.closed_form_gamma
            return lambda z, x, guess=None: closed_form(x, z)
        logger.warning("%s instance has no closed-form gamma; using the line search", problem.kind)
    return lambda z, x, guess=None: eval_gamma(problem, z, x, cfg.line_search, initial_guess=guess)


def _reference_value(problem: ProblemInstance) -> Optional[float]:
    f_star = problem.metadata.f_star
    if f_star is None or not f_star < 0:
        return None
    return f_star


def _new_record(i: int, x: Point, z: float, f_x: float, f_ref: Optional[float]) -> IterateRecord:
    rel = relative_accuracy(f_x, f_ref) if f_ref is not None else None
    return IterateRecord(iter=i, x=x, z=z, f_x=f_x, rel_accuracy=rel)


def _target_hit(record: IterateRecord, target_epsilon: Optional[float]) -> bool:
    return (
        target_epsilon is not None
        and record.rel_accuracy is not None
        and record.rel_accuracy <= target_epsilon
    )


def _resolve_max_iters(problem: ProblemInstance, policy: Optional[StepPolicy], cfg: SolverConfig) -> int:
    if cfg.max_iters is not None:
        return cfg.max_iters
    meta = problem.metadata
    if isinstance(policy, EpsilonTarget) and meta.dist_to_opt is not None and meta.radius_R is not None:
        return eps_target_bound(meta.dist_to_opt, meta.radius_R, policy.epsilon)
    return get_settings().DEFAULT_MAX_ITERS


def _finish(trace: RunTrace) -> RunTrace:
    if trace.records:
        best = min(trace.records, key=lambda r: r.f_x)
        trace.best_value = best.f_x
        trace.best_point = best.x
    logger.info(
        "%s run finished: status=%s iterations=%d best_value=%.6g",
        trace.algorithm, trace.status.value, trace.iterations, trace.best_value,
    )
    return trace


def radial_subgradient_run(
    problem: ProblemInstance, policy: StepPolicy, cfg: Optional[SolverConfig] = None
) -> RunTrace:
    """
    Run the radial subgradient method from x_0 = 0, z_0 = f(0).

    Each iteration selects zeta_i in the subdifferential of gamma_{z_i} at x_i,
    steps to x~ = x_i - alpha_i zeta_i, evaluates gamma = gamma_{z_i}(x~) and
    rescales (x_{i+1}, z_{i+1}) = (x~, z_i) / gamma. A zero gamma ends the run
    with UnboundedDetected and the ray x~.

    The run stops at max_iters, when the relative accuracy of an iterate reaches
    cfg.target_epsilon (only when metadata carries f*), or when the step rule
    reports a stationary point. A stalled line search ends the run with
    NumericalStall; any other library error is re-raised as SolverError naming
    the iteration.
    """
    cfg = cfg or SolverConfig()
    max_iters = _resolve_max_iters(problem, policy, cfg)
    f_ref = _reference_value(problem)
    gamma_of = _gamma_evaluator(problem, cfg)
    monitor = _InvariantMonitor(cfg.check_invariants, f_ref, cfg.line_search.gamma_tol)

    optimum = problem.optimum
    f_y = evaluate(problem, optimum) if optimum is not None else None
    if f_y is not None and not f_y < 0:
        optimum = None

    x = np.zeros(problem.dimension)
    z = problem.f_origin
    record = _new_record(0, x, z, z, f_ref)
    record.gamma_residual = 0.0
    monitor.check_record(record)
    trace = RunTrace(records=[record], status=RunStatus.MAX_ITERS, algorithm="radial", policy=policy.name)
    logger.info("radial run started: policy=%r max_iters=%d dimension=%d", policy, max_iters, problem.dimension)

    i = 0
    try:
        while not _target_hit(record, cfg.target_epsilon) and i < max_iters:
            zeta = gamma_subgradient(problem, z, x, 1.0)
            norm = float(np.linalg.norm(zeta))
            record.subgrad_norm = norm
            alpha = step_size(policy, StepState(iter=i, z=z, subgrad_norm=norm))
            record.alpha = alpha

            x_tilde = x - alpha * zeta
            result = gamma_of(z, x_tilde)
            if isinstance(result, ZeroDetected):
                trace.status = RunStatus.UNBOUNDED
                trace.ray = x_tilde
                logger.warning("objective unbounded along ray %s (iteration %d)", x_tilde.tolist(), i)
                break

            gamma = result.gamma
            x_next = x_tilde / gamma
            z_next = z / gamma
            if optimum is not None:
                record.descent_slack = descent_slack(f_y, optimum, x, z, x_next, z_next, alpha, norm)
                monitor.check_descent(record)

            i += 1
            x, z = x_next, z_next
            record = _new_record(i, x, z, evaluate(problem, x), f_ref)
            if cfg.check_invariants:
                check = gamma_of(z, x, 1.0)
                record.gamma_residual = abs(check.gamma - 1.0) if not isinstance(check, ZeroDetected) else 1.0
            else:
                record.gamma_residual = result.bracket_width / gamma
            monitor.check_record(record)
            trace.records.append(record)
            if i % PROGRESS_EVERY == 0:
                logger.debug("iteration %d: f=%.10g z=%.10g alpha=%.3e", i, record.f_x, z, alpha)
        else:
            if _target_hit(record, cfg.target_epsilon):
                trace.status = RunStatus.TARGET_REACHED
    except (StationaryPointError, NonPositiveStepError) as e:
        trace.status = RunStatus.TARGET_REACHED
        logger.info("stopping at iteration %d: %s", i, e)
    except LineSearchStall as e:
        trace.status = RunStatus.NUMERICAL_STALL
        logger.warning("line search stalled at iteration %d: %s", i, e)
    except RadialOptError as e:
        raise SolverError(str(e), iteration=i) from e

    trace.violations = dict(monitor.counts)
    return _finish(trace)


def renegar_a_run(problem: ProblemInstance, epsilon: float, cfg: Optional[SolverConfig] = None) -> RunTrace:
    """
    Fixed-level baseline with conditional radial updates.

    Steps alpha_i = epsilon / (2 ||zeta_i||^2) on gamma_{z_i} and keeps z_{i+1} = z_i;
    only when gamma_{z_{i+1}}(x_{i+1}) <= 3/4 is the pair (x_{i+1}, z_{i+1}) rescaled.
    Records report the scaled point x_i / gamma_{z_i}(x_i).
    """
    cfg = cfg or SolverConfig()
    policy = EpsilonTarget(epsilon)
    max_iters = cfg.max_iters if cfg.max_iters is not None else get_settings().DEFAULT_MAX_ITERS
    f_ref = _reference_value(problem)
    gamma_of = _gamma_evaluator(problem, cfg)

    x = np.zeros(problem.dimension)
    z = problem.f_origin
    gamma = 1.0
    trace = RunTrace(records=[], status=RunStatus.MAX_ITERS, algorithm="renegar-a")
    logger.info("renegar-a run started: epsilon=%g max_iters=%d", epsilon, max_iters)

    i = 0
    try:
        while True:
            scaled = x / gamma
            record = _new_record(i, scaled, z, evaluate(problem, scaled), f_ref)
            trace.records.append(record)
            if _target_hit(record, cfg.target_epsilon):
                trace.status = RunStatus.TARGET_REACHED
                break
            if i >= max_iters:
                break

            zeta = gamma_subgradient(problem, z, x, gamma)
            norm = float(np.linalg.norm(zeta))
            record.subgrad_norm = norm
            record.alpha = step_size(policy, StepState(iter=i, z=z, subgrad_norm=norm))
            x = x - record.alpha * zeta

            result = gamma_of(z, x, gamma)
            if isinstance(result, ZeroDetected):
                trace.status = RunStatus.UNBOUNDED
                trace.ray = x
                logger.warning("objective unbounded along ray %s (iteration %d)", x.tolist(), i)
                break
            gamma = result.gamma
            if gamma <= RENEGAR_A_THRESHOLD:
                x, z, gamma = x / gamma, z / gamma, 1.0
            i += 1
    except (StationaryPointError, NonPositiveStepError) as e:
        trace.status = RunStatus.TARGET_REACHED
        logger.info("stopping at iteration %d: %s", i, e)
    except LineSearchStall as e:
        trace.status = RunStatus.NUMERICAL_STALL
        logger.warning("line search stalled at iteration %d: %s", i, e)
    except RadialOptError as e:
        raise SolverError(str(e), iteration=i) from e

    return _finish(trace)


def renegar_b_run(problem: ProblemInstance, f_star: float, cfg: Optional[SolverConfig] = None) -> RunTrace:
    """
    Known-optimum baseline: level fixed at z = f*, no radial updates.

    Steps alpha_i = (gamma_z(x_i) - 1) / ||zeta_i||^2. gamma_z(x_i) <= 1 means the
    scaled point already attains f* and ends the run with TargetReached.
    """
    if not (f_star < 0 and math.isfinite(f_star)):
        raise UsageError(f"renegar-b needs a finite negative f_star, got {f_star}")
    cfg = cfg or SolverConfig()
    max_iters = cfg.max_iters if cfg.max_iters is not None else get_settings().DEFAULT_MAX_ITERS
    f_ref = _reference_value(problem) or f_star
    gamma_of = _gamma_evaluator(problem, cfg)

    z = float(f_star)
    x = np.zeros(problem.dimension)
    guess = None
    trace = RunTrace(records=[], status=RunStatus.MAX_ITERS, algorithm="renegar-b")
    logger.info("renegar-b run started: f_star=%g max_iters=%d", f_star, max_iters)

    i = 0
    try:
        while True:
            result = gamma_of(z, x, guess)
            if isinstance(result, ZeroDetected):
                trace.status = RunStatus.UNBOUNDED
                trace.ray = x
                logger.warning("objective unbounded along ray %s (iteration %d)", x.tolist(), i)
                break
            gamma = guess = result.gamma
            scaled = x / gamma
            record = _new_record(i, scaled, z, evaluate(problem, scaled), f_ref)
            trace.records.append(record)
            if _target_hit(record, cfg.target_epsilon):
                trace.status = RunStatus.TARGET_REACHED
                break
            if i >= max_iters:
                break

            zeta = gamma_subgradient(problem, z, x, gamma)
            norm = float(np.linalg.norm(zeta))
            record.subgrad_norm = norm
            rule = Custom(lambda s, g=gamma: (g - 1.0) / s.subgrad_norm ** 2, name="renegar-b")
            record.alpha = step_size(rule, StepState(iter=i, z=z, subgrad_norm=norm))
            x = x - record.alpha * zeta
            i += 1
    except (StationaryPointError, NonPositiveStepError) as e:
        trace.status = RunStatus.TARGET_REACHED
        logger.info("stopping at iteration %d: %s", i, e)
    except LineSearchStall as e:
        trace.status = RunStatus.NUMERICAL_STALL
        logger.warning("line search stalled at iteration %d: %s", i, e)
    except RadialOptError as e:
        raise SolverError(str(e), iteration=i) from e

    return _finish(trace)
