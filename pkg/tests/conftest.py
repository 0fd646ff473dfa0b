import json
import logging
from pathlib import Path
from typing import Callable, Dict

import numpy as np
import pytest

from radialopt.models.library import (
    make_ball_sqrt,
    make_linear_program,
    make_piecewise_max,
    write_problem_file,
)
from radialopt.models.problem import ProblemInstance
from radialopt.schemas.problem import BallSqrtData, LinearProgramData, Piece, PiecewiseMaxData

# ======================================================================================
# Logging Configuration
# ======================================================================================
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

# ======================================================================================
# Helper Functions
# ======================================================================================
def is_midpoint_convex(fn: Callable[[np.ndarray], float], x: np.ndarray, y: np.ndarray, tol: float) -> bool:
    """fn((x + y)/2) <= (fn(x) + fn(y))/2 + tol."""
    return fn(0.5 * (x + y)) <= 0.5 * (fn(x) + fn(y)) + tol


def write_problem_json(path: Path, document: Dict) -> Path:
    """Write a raw problem document (which may be invalid on purpose)."""
    path.write_text(json.dumps(document), encoding="utf-8")
    return path

# ======================================================================================
# Problem Data Fixtures
# ======================================================================================
@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so property tests are reproducible."""
    return np.random.default_rng(12345)


@pytest.fixture
def ball_data() -> BallSqrtData:
    return BallSqrtData(center=[0.5, 0.0])


@pytest.fixture
def ball(ball_data) -> ProblemInstance:
    """f(x) = -sqrt(1 - |x - c|^2), c = (0.5, 0): f* = -1, dist = R = 0.5, D = 1."""
    return make_ball_sqrt(ball_data)


@pytest.fixture
def lp_1d_data() -> LinearProgramData:
    return LinearProgramData(A=[[1.0]], b=[2.0], c=[-1.0], h=1.0)


@pytest.fixture
def lp_1d(lp_1d_data) -> ProblemInstance:
    """f(x) = -x - 1 on x <= 2: f* = -3 at x = 2, R = 1, D = 2."""
    return make_linear_program(lp_1d_data)


@pytest.fixture
def lp_2d() -> ProblemInstance:
    """f(x) = -x0 - x1 - 1 on x0 <= 1, x1 <= 1, -x0 - x1 <= 1: f* = -3 at (1, 1)."""
    return make_linear_program(
        LinearProgramData(A=[[1.0, 0.0], [0.0, 1.0], [-1.0, -1.0]], b=[1.0, 1.0, 1.0], c=[-1.0, -1.0], h=1.0)
    )


@pytest.fixture
def unbounded_lp_data() -> LinearProgramData:
    return LinearProgramData(c=[-1.0], h=1.0)


@pytest.fixture
def unbounded_lp(unbounded_lp_data) -> ProblemInstance:
    """f(x) = -x - 1 on the whole line."""
    return make_linear_program(unbounded_lp_data)


@pytest.fixture
def abs_pieces() -> ProblemInstance:
    """f(x) = |x| - 1: minimized at the origin itself."""
    return make_piecewise_max(PiecewiseMaxData(pieces=[Piece(a=[1.0], b=-1.0), Piece(a=[-1.0], b=-1.0)]))


@pytest.fixture
def kinked_pieces() -> ProblemInstance:
    """f(x) = max(2x - 1, -x - 2): f* = -5/3 at x = -1/3, R = 1/2, D = 1."""
    return make_piecewise_max(PiecewiseMaxData(pieces=[Piece(a=[2.0], b=-1.0), Piece(a=[-1.0], b=-2.0)]))

# ======================================================================================
# Problem File Fixtures
# ======================================================================================
@pytest.fixture
def ball_file(tmp_path, ball) -> Path:
    path = tmp_path / "ball.json"
    write_problem_file(ball, path)
    return path


@pytest.fixture
def lp_1d_file(tmp_path, lp_1d) -> Path:
    path = tmp_path / "lp_1d.json"
    write_problem_file(lp_1d, path)
    return path


@pytest.fixture
def unbounded_lp_file(tmp_path, unbounded_lp) -> Path:
    path = tmp_path / "unbounded_lp.json"
    write_problem_file(unbounded_lp, path)
    return path


@pytest.fixture
def unbounded_pieces_file(tmp_path) -> Path:
    """f(x) = -x - 1 as a single piece: unbounded below, so no f_star can be derived."""
    return write_problem_json(
        tmp_path / "piecewise.json",
        {"kind": "piecewise_max", "dimension": 1, "pieces": [{"a": [-1.0], "b": -1.0}]},
    )

# ======================================================================================
# Pytest Command-Line Options
# ======================================================================================
def pytest_addoption(parser):
    """
    Add custom command line options:
      --run-slow    : Run tests marked as 'slow'
    """
    parser.addoption("--run-slow", action="store_true", help="Run tests marked as slow")


def pytest_collection_modifyitems(config, items):
    """
    Skip tests marked as 'slow' unless --run-slow is specified.
    """
    if not config.getoption("--run-slow"):
        skip_slow = pytest.mark.skip(reason="use --run-slow to run")
        for item in items:
            if "slow" in item.keywords:
                item.add_marker(skip_slow)
