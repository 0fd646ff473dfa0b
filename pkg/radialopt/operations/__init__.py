# radialopt/operations/__init__.py

"""
Numerical operations on canonical problems.

- radial: perspective function, gamma_z by line search, subgradients of gamma_z.
- steps: step-size policies.
- solvers: the radial subgradient method and the two fixed-level baselines.
- bounds: iteration ceilings and anytime rates.
- verify: runs an algorithm for its ceiling and checks the guarantee.
"""

from .radial import eval_gamma, gamma_grid_oracle, gamma_subgradient, perspective_value
from .steps import (
    Custom,
    EpsilonTarget,
    KnownOptimum,
    SquareSummable,
    StepPolicy,
    StepState,
    create_policy,
    step_size,
)
from .bounds import (
    eps_target_bound,
    eps_target_rate,
    general_rate,
    known_optimum_bound,
    known_optimum_rate,
    renegar_a_bound,
    renegar_b_bound,
)
from .solvers import (
    IterateRecord,
    RunStatus,
    RunTrace,
    best_so_far,
    descent_slack,
    radial_subgradient_run,
    relative_accuracy,
    renegar_a_run,
    renegar_b_run,
)
from .verify import bound_for, check_bound

__all__ = [
    'eval_gamma',
    'gamma_grid_oracle',
    'gamma_subgradient',
    'perspective_value',
    'Custom',
    'EpsilonTarget',
    'KnownOptimum',
    'SquareSummable',
    'StepPolicy',
    'StepState',
    'create_policy',
    'step_size',
    'eps_target_bound',
    'eps_target_rate',
    'general_rate',
    'known_optimum_bound',
    'known_optimum_rate',
    'renegar_a_bound',
    'renegar_b_bound',
    'IterateRecord',
    'RunStatus',
    'RunTrace',
    'best_so_far',
    'descent_slack',
    'radial_subgradient_run',
    'relative_accuracy',
    'renegar_a_run',
    'renegar_b_run',
    'bound_for',
    'check_bound',
]
