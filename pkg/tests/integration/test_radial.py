# tests/integration/test_radial.py
"""Properties of the perspective function and the radial reformulation on the built-in families."""

import math

import numpy as np
import pytest

from radialopt.core.exceptions import (
    DegenerateNormalError,
    GridSearchError,
    LineSearchError,
    LineSearchStall,
    OracleError,
    UsageError,
)
from radialopt.models.problem import EpigraphNormal, Positive, ProblemInstance, ZeroDetected
from radialopt.operations.radial import (
    eval_gamma,
    gamma_grid_oracle,
    gamma_subgradient,
    perspective_value,
)
from radialopt.schemas.solver import LineSearchConfig
from tests.conftest import is_midpoint_convex

FAMILIES = ["ball", "lp_1d", "lp_2d", "kinked_pieces"]


def _gamma(problem, z, x, cfg=None) -> float:
    result = eval_gamma(problem, z, x, cfg)
    assert isinstance(result, Positive), f"expected a positive gamma at x={x}, got {result}"
    return result.gamma


def _random_point(rng, problem, scale=2.0) -> np.ndarray:
    return rng.uniform(-scale, scale, size=problem.dimension)


# ---------------------------------------------
# Perspective function
# ---------------------------------------------

def test_perspective_value(lp_1d):
    # f(x) = -x - 1 on x <= 2
    assert perspective_value(lp_1d, [1.0], 2.0) == pytest.approx(2.0 * (-0.5 - 1.0))
    assert perspective_value(lp_1d, [5.0], 2.0) == math.inf


def test_perspective_rejects_non_positive_gamma(ball):
    with pytest.raises(UsageError):
        perspective_value(ball, [0.0, 0.0], 0.0)


@pytest.mark.parametrize("family", FAMILIES)
def test_perspective_decreasing_in_gamma(family, request, rng):
    problem = request.getfixturevalue(family)
    for _ in range(20):
        x = _random_point(rng, problem)
        gammas = np.geomspace(0.05, 50.0, 30)
        values = [perspective_value(problem, x, g) for g in gammas]
        finite = [v for v in values if math.isfinite(v)]
        assert all(a >= b - 1e-12 for a, b in zip(finite, finite[1:]))
        # once finite, the perspective stays finite as gamma grows
        first = next(i for i, v in enumerate(values) if math.isfinite(v))
        assert all(math.isfinite(v) for v in values[first:])


# ---------------------------------------------
# Line search
# ---------------------------------------------

@pytest.mark.parametrize("family", FAMILIES)
def test_gamma_at_origin_level_is_one(family, request):
    problem = request.getfixturevalue(family)
    result = eval_gamma(problem, problem.f_origin, np.zeros(problem.dimension))
    assert isinstance(result, Positive)
    assert result.gamma == 1.0


@pytest.mark.parametrize("family", FAMILIES)
def test_line_search_matches_closed_form(family, request, rng):
    problem = request.getfixturevalue(family)
    cfg = LineSearchConfig()
    for _ in range(100):
        x = _random_point(rng, problem)
        z = -rng.uniform(0.1, 3.0)
        exact = problem.closed_form_gamma(x, z).gamma
        found = _gamma(problem, z, x, cfg)
        assert found >= exact * (1 - 1e-13)
        assert found <= exact * (1 + 2 * cfg.gamma_tol) + 1e-15


@pytest.mark.parametrize("family", FAMILIES)
def test_bracket_certifies_gamma(family, request, rng):
    """The returned gamma is feasible and gamma (1 - tol) is not."""
    problem = request.getfixturevalue(family)
    cfg = LineSearchConfig(gamma_tol=1e-8)
    for _ in range(50):
        x = _random_point(rng, problem)
        z = -rng.uniform(0.1, 3.0)
        gamma = _gamma(problem, z, x, cfg)
        assert perspective_value(problem, x, gamma * (1 + cfg.gamma_tol)) <= z
        assert perspective_value(problem, x, gamma * (1 - cfg.gamma_tol)) > z


def test_minimum_value_of_gamma(ball):
    """gamma_z attains its minimum z/f* at (z/f*) times the optimum."""
    z = -0.5
    x = (z / -1.0) * ball.optimum
    assert _gamma(ball, z, x) == pytest.approx(z / -1.0, rel=1e-9)


def test_gamma_bounded_below_by_level_ratio(ball, rng):
    for _ in range(50):
        z = -rng.uniform(0.1, 2.0)
        assert _gamma(ball, z, _random_point(rng, ball)) >= z / -1.0 * (1 - 1e-12)


def test_gamma_rejects_non_negative_level(ball):
    with pytest.raises(UsageError, match="level z must be negative"):
        eval_gamma(ball, 0.0, [0.0, 0.0])


def test_gamma_rejects_wrong_dimension(ball):
    with pytest.raises(UsageError):
        eval_gamma(ball, -1.0, [0.0, 0.0, 0.0])


def test_zero_detected_on_unbounded_ray(unbounded_lp):
    cfg = LineSearchConfig()
    result = eval_gamma(unbounded_lp, -1.0, [1.0], cfg)
    assert isinstance(result, ZeroDetected)
    assert result.witness_gamma <= cfg.gamma_min
    assert perspective_value(unbounded_lp, [1.0], result.witness_gamma) <= -1.0


def test_zero_detected_after_halving_cap(unbounded_lp):
    """With few halvings allowed the threshold is tested directly."""
    cfg = LineSearchConfig(max_expansions=3)
    result = eval_gamma(unbounded_lp, -1.0, [1.0], cfg)
    assert result == ZeroDetected(witness_gamma=cfg.gamma_min)


def test_positive_gamma_on_bounded_side_of_unbounded_problem(unbounded_lp):
    # f^p(-1, gamma) = 1 - gamma <= -1 needs gamma >= 2
    assert _gamma(unbounded_lp, -1.0, [-1.0]) == pytest.approx(2.0, rel=1e-9)


def test_doubling_exhausted(ball):
    with pytest.raises(LineSearchError):
        eval_gamma(ball, -0.5, [100.0, 0.0], LineSearchConfig(max_expansions=1))


def test_bisection_stall(ball):
    with pytest.raises(LineSearchStall):
        eval_gamma(ball, -0.5, [0.3, 0.2], LineSearchConfig(gamma_tol=1e-17))


def test_warm_start_gives_same_gamma(ball, rng):
    for _ in range(20):
        x = _random_point(rng, ball)
        cold = _gamma(ball, -0.7, x)
        warm = eval_gamma(ball, -0.7, x, initial_guess=cold * 1.3).gamma
        assert warm == pytest.approx(cold, rel=1e-9)


def test_nan_value_is_an_oracle_error():
    problem = ProblemInstance(
        dimension=1,
        value_oracle=lambda x: -1.0 if not np.any(x) else math.nan,
        normal_oracle=lambda x, t: EpigraphNormal(zeta=np.array([1.0]), delta=-1.0),
    )
    with pytest.raises(OracleError, match="NaN"):
        eval_gamma(problem, -1.0, [1.0])


# ---------------------------------------------
# Geometry of gamma_z
# ---------------------------------------------

@pytest.mark.parametrize("family", FAMILIES)
def test_gamma_lipschitz_with_constant_one_over_r(family, request, rng):
    problem = request.getfixturevalue(family)
    R = problem.metadata.radius_R
    cfg = LineSearchConfig()
    violations = 0
    for _ in range(1000):
        z = -rng.uniform(0.1, 3.0)
        x, y = _random_point(rng, problem), _random_point(rng, problem)
        gx, gy = _gamma(problem, z, x, cfg), _gamma(problem, z, y, cfg)
        slack = 2 * cfg.gamma_tol * max(gx, gy)
        if abs(gx - gy) > np.linalg.norm(x - y) / R + slack:
            violations += 1
    assert violations == 0


@pytest.mark.parametrize("family", FAMILIES)
def test_gamma_convex(family, request, rng):
    problem = request.getfixturevalue(family)
    cfg = LineSearchConfig()
    for _ in range(200):
        z = -rng.uniform(0.1, 3.0)
        x, y = _random_point(rng, problem), _random_point(rng, problem)
        assert is_midpoint_convex(lambda p: _gamma(problem, z, p, cfg), x, y, tol=1e-8)


@pytest.mark.parametrize("family", FAMILIES)
def test_grid_oracle_agrees_with_line_search(family, request, rng):
    problem = request.getfixturevalue(family)
    steps = 4000
    for _ in range(50):
        z = -rng.uniform(0.1, 3.0)
        x = _random_point(rng, problem)
        gamma = _gamma(problem, z, x)
        lo, hi = 0.5 * gamma, 2.0 * gamma
        grid = gamma_grid_oracle(problem, z, x, lo, hi, steps)
        spacing = (hi - lo) / (steps - 1)
        assert gamma - 1e-9 * gamma <= grid <= gamma + spacing + 1e-12


def test_grid_oracle_without_feasible_point(ball):
    with pytest.raises(GridSearchError):
        gamma_grid_oracle(ball, -0.5, [0.0, 0.0], 0.01, 0.5, 10)


@pytest.mark.parametrize(
    "lo, hi, steps",
    [(0.0, 1.0, 10), (1.0, 0.5, 10), (0.1, 1.0, 1)],
    ids=["zero_lo", "reversed", "single_point"]
)
def test_grid_oracle_arguments(ball, lo, hi, steps):
    with pytest.raises(UsageError):
        gamma_grid_oracle(ball, -0.5, [0.0, 0.0], lo, hi, steps)


def test_grid_oracle_sees_unbounded_ray(unbounded_lp):
    assert gamma_grid_oracle(unbounded_lp, -1.0, [1.0], 1e-6, 1.0, 100) == pytest.approx(1e-6)


# ---------------------------------------------
# Subgradients of gamma_z
# ---------------------------------------------

@pytest.mark.parametrize("family", FAMILIES)
def test_subgradient_norm_at_most_one_over_r(family, request, rng):
    problem = request.getfixturevalue(family)
    R = problem.metadata.radius_R
    for _ in range(200):
        z = -rng.uniform(0.1, 3.0)
        x = _random_point(rng, problem)
        g = gamma_subgradient(problem, z, x, _gamma(problem, z, x))
        assert np.linalg.norm(g) <= 1.0 / R * (1 + 1e-8)


@pytest.mark.parametrize("family", FAMILIES)
def test_subgradient_inequality(family, request, rng):
    """gamma_z(y) >= gamma_z(x) + <g, y - x> for every sampled pair."""
    problem = request.getfixturevalue(family)
    for _ in range(200):
        z = -rng.uniform(0.1, 3.0)
        x, y = _random_point(rng, problem), _random_point(rng, problem)
        gx = _gamma(problem, z, x)
        g = gamma_subgradient(problem, z, x, gx)
        assert _gamma(problem, z, y) >= gx + float(g @ (y - x)) - 1e-7


def test_subgradient_matches_finite_differences_on_ball(ball, rng):
    step = 1e-6
    for _ in range(50):
        z = -rng.uniform(0.1, 2.0)
        x = _random_point(rng, ball)
        gamma = ball.closed_form_gamma(x, z).gamma
        g = gamma_subgradient(ball, z, x, gamma)
        numeric = np.array([
            (ball.closed_form_gamma(x + step * e, z).gamma - ball.closed_form_gamma(x - step * e, z).gamma) / (2 * step)
            for e in np.eye(2)
        ])
        np.testing.assert_allclose(g, numeric, atol=1e-6)


def test_subgradient_matches_finite_differences_on_lp(lp_2d, rng):
    """Away from kinks gamma_z is affine in a neighbourhood."""
    step = 1e-6
    checked = 0
    for _ in range(200):
        z = -rng.uniform(0.1, 3.0)
        x = _random_point(rng, lp_2d)
        # the four affine pieces of max((c.x - z)/h, A_i.x/b_i)
        terms = np.sort(np.r_[-x.sum() - z, x, -x.sum()])
        if terms[-1] - terms[-2] < 1e-3:
            continue
        gamma = lp_2d.closed_form_gamma(x, z).gamma
        g = gamma_subgradient(lp_2d, z, x, gamma)
        numeric = np.array([
            (lp_2d.closed_form_gamma(x + step * e, z).gamma - lp_2d.closed_form_gamma(x - step * e, z).gamma) / (2 * step)
            for e in np.eye(2)
        ])
        np.testing.assert_allclose(g, numeric, atol=1e-6)
        checked += 1
    assert checked > 50


def test_domain_normal_subgradient(lp_1d):
    # gamma_{-1}(3) = max(-3 + 1, 3 / 2) = 1.5; x / gamma sits on the constraint x <= 2
    gamma = _gamma(lp_1d, -1.0, [3.0])
    assert gamma == pytest.approx(1.5, rel=1e-9)
    np.testing.assert_allclose(gamma_subgradient(lp_1d, -1.0, [3.0], gamma), [0.5], rtol=1e-8)


def test_degenerate_normal_rejected():
    # f(x) = x - 1 with a normal oracle that always answers (-1, -1)
    problem = ProblemInstance(
        dimension=1,
        value_oracle=lambda x: float(x[0]) - 1.0,
        normal_oracle=lambda x, t: EpigraphNormal(zeta=np.array([-1.0]), delta=-1.0),
    )
    gamma = _gamma(problem, -1.0, [5.0])
    assert gamma == pytest.approx(6.0, rel=1e-9)
    with pytest.raises(DegenerateNormalError):
        gamma_subgradient(problem, -1.0, [5.0], gamma)


def test_upward_normal_is_an_oracle_error():
    problem = ProblemInstance(
        dimension=1,
        value_oracle=lambda x: float(x[0]) - 1.0,
        normal_oracle=lambda x, t: EpigraphNormal(zeta=np.array([1.0]), delta=1.0),
    )
    with pytest.raises(OracleError):
        gamma_subgradient(problem, -1.0, [0.0], 1.0)
