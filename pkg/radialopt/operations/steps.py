# radialopt/operations/steps.py
"""Step-size policies of the radial subgradient method."""

import math
from dataclasses import dataclass
from typing import Callable, Optional

from radialopt.core.exceptions import NonPositiveStepError, StationaryPointError, UsageError


@dataclass(frozen=True)
class StepState:
    """What a policy may look at: the iteration index, the level z_i and ||zeta_i||."""
    iter: int
    z: float
    subgrad_norm: float


class StepPolicy:
    """Abstract base class for step-size rules"""
    name: str = "custom"

    @classmethod
    def create(cls, name: str, epsilon: Optional[float] = None, beta0: float = 1.0,
               f_star: Optional[float] = None) -> "StepPolicy":
        """Factory method to create policies from their CLI names"""
        policy_classes = {
            "sqsum": SquareSummable,
            "eps-target": EpsilonTarget,
            "known-opt": KnownOptimum,
        }
        policy_class = policy_classes.get(name.lower())
        if not policy_class:
            raise UsageError(f"Unsupported step policy: {name}")
        if policy_class is SquareSummable:
            return SquareSummable(beta0=beta0)
        if policy_class is EpsilonTarget:
            if epsilon is None:
                raise UsageError("eps-target policy needs epsilon")
            return EpsilonTarget(epsilon)
        if f_star is None:
            raise UsageError("known-opt policy needs f_star")
        return KnownOptimum(f_star)

    def alpha(self, state: StepState) -> float:
        """Method to compute the raw step size"""
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__}>"


class SquareSummable(StepPolicy):
    """
    alpha_i = -z_i * beta_i.

    The default schedule beta_i = beta0 / (i + 1) has a divergent sum and a
    convergent sum of squares. A custom schedule should keep both properties.
    """
    name = "sqsum"

    def __init__(self, beta0: float = 1.0, schedule: Optional[Callable[[int], float]] = None):
        if not beta0 > 0:
            raise UsageError(f"beta0 must be positive, got {beta0}")
        self.beta0 = float(beta0)
        self.schedule = schedule

    def beta(self, i: int) -> float:
        if self.schedule is not None:
            return float(self.schedule(i))
        return self.beta0 / (i + 1)

    def alpha(self, state: StepState) -> float:
        return -state.z * self.beta(state.iter)

    def __repr__(self):
        return f"<SquareSummable(beta0={self.beta0})>"


class EpsilonTarget(StepPolicy):
    """alpha_i = epsilon / (2 ||zeta_i||^2)."""
    name = "eps-target"

    def __init__(self, epsilon: float):
        if not epsilon > 0:
            raise UsageError(f"epsilon must be positive, got {epsilon}")
        self.epsilon = float(epsilon)

    def alpha(self, state: StepState) -> float:
        return self.epsilon / (2.0 * state.subgrad_norm ** 2)

    def __repr__(self):
        return f"<EpsilonTarget(epsilon={self.epsilon})>"


class KnownOptimum(StepPolicy):
    """
    alpha_i = (z_i - f*) / (0 - f*) / ||zeta_i||^2.

    f* = -inf is accepted for unbounded objectives; the level factor is then 1.
    """
    name = "known-opt"

    def __init__(self, f_star: float):
        if not f_star < 0:
            raise UsageError(f"f_star must be negative, got {f_star}")
        self.f_star = float(f_star)

    def alpha(self, state: StepState) -> float:
        if self.f_star == -math.inf:
            factor = 1.0
        else:
            factor = (state.z - self.f_star) / (0.0 - self.f_star)
        return factor / state.subgrad_norm ** 2

    def __repr__(self):
        return f"<KnownOptimum(f_star={self.f_star})>"


class Custom(StepPolicy):
    """Any caller-supplied rule mapping a StepState to a positive step."""

    def __init__(self, rule: Callable[[StepState], float], name: str = "custom"):
        self.rule = rule
        self.name = name

    def alpha(self, state: StepState) -> float:
        return float(self.rule(state))


def step_size(policy: StepPolicy, state: StepState) -> float:
    """
    Return the step alpha_i of the selected rule.

    Parameters:
    - policy (StepPolicy): The rule.
    - state (StepState): Iteration index, level z_i < 0 and ||zeta_i||.

    Returns:
    - float: A positive step.

    Raises:
    - StationaryPointError: If ||zeta_i|| = 0 (the current point minimizes gamma_z).
    - NonPositiveStepError: If the rule yields alpha <= 0, e.g. known-opt with z_i <= f*.
    - UsageError: If z_i >= 0.

    Example:
    >>> step_size(EpsilonTarget(0.1), StepState(iter=0, z=-1.0, subgrad_norm=2.0))
    0.0125
    """
    if not state.z < 0:
        raise UsageError(f"level z must be negative, got {state.z}")
    if state.subgrad_norm == 0:
        raise StationaryPointError(f"zero subgradient at iteration {state.iter}")
    alpha = policy.alpha(state)
    if not alpha > 0 or not math.isfinite(alpha):
        raise NonPositiveStepError(f"{policy!r} produced alpha = {alpha}")
    return alpha


def create_policy(name: str, epsilon: Optional[float] = None, beta0: float = 1.0,
                  f_star: Optional[float] = None) -> StepPolicy:
    return StepPolicy.create(name, epsilon=epsilon, beta0=beta0, f_star=f_star)
