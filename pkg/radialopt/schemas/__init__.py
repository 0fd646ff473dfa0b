# radialopt/schemas/__init__.py
from .problem import (
    ProblemMetadata,
    LinearProgramData,
    BallSqrtData,
    Piece,
    PiecewiseMaxData,
    LinearProgramFile,
    BallSqrtFile,
    PiecewiseMaxFile,
    ProblemFile,
    problem_file_adapter,
)
from .solver import LineSearchConfig, SolverConfig
from .report import Theorem, BoundCheckReport, RunReport

__all__ = [
    'ProblemMetadata',
    'LinearProgramData',
    'BallSqrtData',
    'Piece',
    'PiecewiseMaxData',
    'LinearProgramFile',
    'BallSqrtFile',
    'PiecewiseMaxFile',
    'ProblemFile',
    'problem_file_adapter',
    'LineSearchConfig',
    'SolverConfig',
    'Theorem',
    'BoundCheckReport',
    'RunReport',
]
