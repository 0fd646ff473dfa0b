# radialopt/main.py
"""
Command-line harness: solve a problem file, verify an iteration bound, or
compare the radial method against the fixed-level baselines.

Exit codes: 0 success, 1 error or failed bound check, 2 unbounded objective.
"""

import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, Optional

import click
from pydantic import ValidationError

from radialopt import __version__
from radialopt.core.config import get_settings
from radialopt.core.exceptions import MissingMetadataError, RadialOptError, UsageError
from radialopt.models.library import load_problem_file
from radialopt.models.problem import ProblemInstance
from radialopt.operations.solvers import (
    RunStatus,
    RunTrace,
    radial_subgradient_run,
    renegar_a_run,
    renegar_b_run,
)
from radialopt.operations.steps import EpsilonTarget, create_policy
from radialopt.operations.verify import bound_for, check_bound
from radialopt.schemas.report import RunReport, Theorem
from radialopt.schemas.solver import LineSearchConfig, SolverConfig
from radialopt.traces import write_compare_csv, write_trace_csv

logger = logging.getLogger(__name__)

ALGORITHMS = ("radial", "renegar-a", "renegar-b")
POLICIES = ("sqsum", "eps-target", "known-opt")
DEFAULT_EPSILON = 0.1
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def _configure_logging(level: Optional[str]) -> None:
    logging.basicConfig(
        level=getattr(logging, (level or get_settings().LOG_LEVEL).upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        force=True,
    )


def common_options(func):
    """Flags shared by every subcommand."""
    settings = get_settings()
    options = [
        click.option("--problem", "problem_path", required=True,
                     type=click.Path(dir_okay=False), help="JSON problem file"),
        click.option("--max-iters", type=click.IntRange(min=0), default=None,
                     help="Iteration cap (default: from metadata for eps-target, else settings)"),
        click.option("--gamma-tol", type=float, default=settings.GAMMA_TOL, show_default=True,
                     help="Relative bracket width of the gamma line search"),
        click.option("--gamma-min", type=float, default=settings.GAMMA_MIN, show_default=True,
                     help="gamma below which the objective is declared unbounded"),
        click.option("--closed-form/--line-search", default=False,
                     help="Evaluate gamma_z in closed form when the problem family has one"),
        click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False), default=None),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _solver_config(max_iters, gamma_tol, gamma_min, closed_form, target_epsilon=None) -> SolverConfig:
    return SolverConfig(
        max_iters=max_iters,
        target_epsilon=target_epsilon,
        line_search=LineSearchConfig(gamma_tol=gamma_tol, gamma_min=gamma_min),
        closed_form=closed_form,
    )


def _require_f_star(problem: ProblemInstance, purpose: str) -> float:
    if problem.metadata.f_star is None:
        raise MissingMetadataError("f_star", purpose)
    return problem.metadata.f_star


def _format_ray(trace: RunTrace) -> str:
    return "[" + ", ".join(f"{v:.17g}" for v in trace.ray) + "]"


@click.group()
@click.version_option(version=__version__, prog_name="radialopt")
def cli():
    """Radial subgradient method benchmark harness."""


@cli.command()
@common_options
@click.option("--algorithm", type=click.Choice(ALGORITHMS), default="radial", show_default=True)
@click.option("--policy", type=click.Choice(POLICIES), default="sqsum", show_default=True,
              help="Step-size policy of the radial method")
@click.option("--epsilon", type=click.FloatRange(min=0, min_open=True), default=None,
              help="Target relative accuracy (default 0.1 where the algorithm needs one)")
@click.option("--beta0", type=click.FloatRange(min=0, min_open=True), default=1.0, show_default=True,
              help="Scale of the square-summable schedule beta_i = beta0/(i+1)")
@click.option("--trace", "trace_path", type=click.Path(dir_okay=False), default=None, help="Trace CSV output")
@click.option("--report", "report_path", type=click.Path(dir_okay=False), default=None, help="Report JSON output")
def solve(problem_path, max_iters, gamma_tol, gamma_min, closed_form, log_level,
          algorithm, policy, epsilon, beta0, trace_path, report_path):
    """Run one algorithm on a problem file."""
    _configure_logging(log_level)
    problem = load_problem_file(problem_path)

    needs_epsilon = algorithm == "renegar-a" or (algorithm == "radial" and policy in ("eps-target", "known-opt"))
    if epsilon is None and needs_epsilon:
        epsilon = DEFAULT_EPSILON
    cfg = _solver_config(max_iters, gamma_tol, gamma_min, closed_form, target_epsilon=epsilon)

    started = time.perf_counter()
    if algorithm == "radial":
        f_star = _require_f_star(problem, "the known-opt policy") if policy == "known-opt" else None
        step_policy = create_policy(policy, epsilon=epsilon, beta0=beta0, f_star=f_star)
        trace = radial_subgradient_run(problem, step_policy, cfg)
    elif algorithm == "renegar-a":
        trace = renegar_a_run(problem, epsilon, cfg)
    else:
        trace = renegar_b_run(problem, _require_f_star(problem, "renegar-b"), cfg)
    wall_time = time.perf_counter() - started

    if trace_path:
        write_trace_csv(trace, trace_path)
    report = RunReport(
        problem_id=Path(problem_path).stem,
        algorithm=algorithm,
        policy=policy if algorithm == "radial" else None,
        config={**cfg.model_dump(mode="json"), "epsilon": epsilon, "beta0": beta0},
        status=trace.status.value,
        ray=trace.ray.tolist() if trace.ray is not None else None,
        best_value=trace.best_value,
        best_relative_accuracy=trace.best_relative_accuracy,
        achieved_iteration=trace.achieved_iteration(epsilon) if epsilon is not None else None,
        iterations=trace.iterations,
        wall_time_s=wall_time,
        violations=trace.violations,
    )
    if report_path:
        Path(report_path).write_text(report.model_dump_json(indent=2), encoding="utf-8")

    accuracy = report.best_relative_accuracy
    click.echo(
        f"{report.status} after {report.iterations} iterations: best f = {report.best_value:.10g}"
        + (f", best relative accuracy = {accuracy:.3e}" if accuracy is not None else "")
    )
    if trace.status is RunStatus.UNBOUNDED:
        click.echo(f"unbounded along ray {_format_ray(trace)}")
        return 2
    return 0


@cli.command("verify-bounds")
@common_options
@click.option("--theorem", type=click.Choice([t.value for t in Theorem]), required=True)
@click.option("--epsilon", type=click.FloatRange(min=0, min_open=True), default=DEFAULT_EPSILON, show_default=True)
@click.option("--trace", "trace_path", type=click.Path(dir_okay=False), default=None, help="Trace CSV output")
@click.option("--report", "report_path", type=click.Path(dir_okay=False), default=None, help="Report JSON output")
def verify_bounds(problem_path, max_iters, gamma_tol, gamma_min, closed_form, log_level,
                  theorem, epsilon, trace_path, report_path):
    """Run for exactly the guaranteed number of iterations and check the guarantee."""
    _configure_logging(log_level)
    if max_iters is not None:
        logger.info("--max-iters is ignored by verify-bounds; the bound fixes the iteration count")
    problem = load_problem_file(problem_path)
    cfg = _solver_config(None, gamma_tol, gamma_min, closed_form)
    report, trace = check_bound(Theorem(theorem), problem, epsilon, cfg)
    if trace_path:
        write_trace_csv(trace, trace_path)
    text = report.model_dump_json(indent=2)
    if report_path:
        Path(report_path).write_text(text, encoding="utf-8")
    click.echo(text)
    return 0 if report.passed else 1


def _budget(theorem: Theorem, problem: ProblemInstance, epsilon: float, max_iters: Optional[int]) -> int:
    if max_iters is not None:
        return max_iters
    try:
        return bound_for(theorem, problem, epsilon)
    except (MissingMetadataError, UsageError):
        return get_settings().DEFAULT_MAX_ITERS


@cli.command()
@common_options
@click.option("--epsilon", type=click.FloatRange(min=0, max=1, min_open=True, max_open=True),
              default=DEFAULT_EPSILON, show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None, help="CSV output (default stdout)")
def compare(problem_path, max_iters, gamma_tol, gamma_min, closed_form, log_level, epsilon, output):
    """Run the radial method and both baselines with matched epsilon; emit best-so-far accuracy."""
    _configure_logging(log_level)
    problem = load_problem_file(problem_path)
    f_star = _require_f_star(problem, "compare")

    def config_for(theorem: Theorem) -> SolverConfig:
        return _solver_config(_budget(theorem, problem, epsilon, max_iters), gamma_tol, gamma_min,
                              closed_form, target_epsilon=epsilon)

    jobs = {
        "radial": lambda: radial_subgradient_run(problem, EpsilonTarget(epsilon), config_for(Theorem.EPS_TARGET)),
        "renegar_a": lambda: renegar_a_run(problem, epsilon, config_for(Theorem.RENEGAR_A)),
        "renegar_b": lambda: renegar_b_run(problem, f_star, config_for(Theorem.RENEGAR_B)),
    }
    with ThreadPoolExecutor(max_workers=len(jobs)) as executor:
        futures = {name: executor.submit(job) for name, job in jobs.items()}
        traces: Dict[str, RunTrace] = {name: future.result() for name, future in futures.items()}

    with click.open_file(output or "-", "w") as out:
        rows = write_compare_csv(traces, out)
    for name, trace in traces.items():
        logger.info("%s: status=%s best relative accuracy=%s", name, trace.status.value, trace.best_relative_accuracy)
    logger.info("compare wrote %d rows", rows)
    return 0


def main(argv=None) -> int:
    """Run the CLI and return its exit code instead of exiting."""
    try:
        result = cli.main(args=argv, prog_name="radialopt", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return 1
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1
    except (RadialOptError, ValidationError, OSError) as e:
        click.echo(f"error: {e}", err=True)
        return 1
    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    sys.exit(main())
