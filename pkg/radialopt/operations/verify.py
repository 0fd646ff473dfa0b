# radialopt/operations/verify.py
"""Run an algorithm for exactly its guaranteed number of iterations and check the guarantee."""

import logging
from typing import Optional, Tuple

from radialopt.core.exceptions import MissingMetadataError
from radialopt.models.problem import ProblemInstance
from radialopt.operations.bounds import (
    eps_target_bound,
    known_optimum_bound,
    renegar_a_bound,
    renegar_b_bound,
)
from radialopt.operations.solvers import (
    RunTrace,
    radial_subgradient_run,
    renegar_a_run,
    renegar_b_run,
)
from radialopt.operations.steps import EpsilonTarget, KnownOptimum
from radialopt.schemas.report import BoundCheckReport, Theorem
from radialopt.schemas.solver import SolverConfig

logger = logging.getLogger(__name__)

# metadata each guarantee is stated in terms of
REQUIRED_FIELDS = {
    Theorem.EPS_TARGET: ("f_star", "dist_to_opt", "radius_R"),
    Theorem.KNOWN_OPTIMUM: ("f_star", "dist_to_opt", "radius_R"),
    Theorem.RENEGAR_A: ("f_star", "diameter_D", "radius_R"),
    Theorem.RENEGAR_B: ("f_star", "diameter_D", "radius_R"),
}


def bound_for(theorem: Theorem, problem: ProblemInstance, epsilon: float) -> int:
    """Guaranteed iteration ceiling of the theorem on this instance."""
    theorem = Theorem(theorem)
    meta = problem.metadata
    for name in REQUIRED_FIELDS[theorem]:
        if getattr(meta, name) is None:
            raise MissingMetadataError(name, f"the {theorem.value} bound")
    if theorem is Theorem.EPS_TARGET:
        return eps_target_bound(meta.dist_to_opt, meta.radius_R, epsilon)
    if theorem is Theorem.KNOWN_OPTIMUM:
        return known_optimum_bound(meta.dist_to_opt, meta.radius_R, epsilon)
    if theorem is Theorem.RENEGAR_A:
        return renegar_a_bound(meta.diameter_D, meta.radius_R, epsilon)
    return renegar_b_bound(meta.diameter_D, meta.radius_R, epsilon)


def check_bound(
    theorem: Theorem,
    problem: ProblemInstance,
    epsilon: float,
    cfg: Optional[SolverConfig] = None,
    stop_early: bool = False,
) -> Tuple[BoundCheckReport, RunTrace]:
    """
    Compute the ceiling from metadata, run the matching algorithm for that many
    iterations and report whether an iterate reached relative accuracy <= epsilon
    in time. With stop_early the run ends at the first such iterate.
    """
    theorem = Theorem(theorem)
    bound = bound_for(theorem, problem, epsilon)
    cfg = (cfg or SolverConfig()).model_copy(
        update={"max_iters": bound, "target_epsilon": epsilon if stop_early else None}
    )
    f_star = problem.metadata.f_star
    logger.info("checking %s bound on %s instance: epsilon=%g bound=%d", theorem.value, problem.kind, epsilon, bound)

    if theorem is Theorem.EPS_TARGET:
        trace = radial_subgradient_run(problem, EpsilonTarget(epsilon), cfg)
    elif theorem is Theorem.KNOWN_OPTIMUM:
        trace = radial_subgradient_run(problem, KnownOptimum(f_star), cfg)
    elif theorem is Theorem.RENEGAR_A:
        trace = renegar_a_run(problem, epsilon, cfg)
    else:
        trace = renegar_b_run(problem, f_star, cfg)

    achieved = trace.achieved_iteration(epsilon)
    report = BoundCheckReport(
        theorem=theorem,
        epsilon=epsilon,
        bound_iterations=bound,
        achieved_iteration=achieved,
        passed=achieved is not None and achieved <= bound,
    )
    if not report.passed:
        logger.warning("%s bound not met: achieved=%s bound=%d", theorem.value, achieved, bound)
    return report, trace
