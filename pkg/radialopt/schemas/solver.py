# radialopt/schemas/solver.py
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from radialopt.core.config import get_settings


class LineSearchConfig(BaseModel):
    """Controls the bracketing and bisection used to evaluate gamma_z."""
    gamma_tol: float = Field(
        default_factory=lambda: get_settings().GAMMA_TOL,
        gt=0, lt=1,
        description="Relative bracket width at which bisection stops",
    )
    gamma_min: float = Field(
        default_factory=lambda: get_settings().GAMMA_MIN,
        gt=0,
        description="Threshold below which gamma_z is declared zero",
    )
    max_expansions: int = Field(
        default_factory=lambda: get_settings().MAX_EXPANSIONS,
        ge=1,
        description="Cap on bracket doublings and halvings",
    )
    initial_guess: float = Field(
        default_factory=lambda: get_settings().INITIAL_GUESS,
        gt=0,
        description="Cold-start gamma",
    )

    @model_validator(mode="after")
    def check_ordering(self) -> "LineSearchConfig":
        if self.gamma_min >= self.initial_guess:
            raise ValueError("gamma_min must be smaller than initial_guess")
        return self

    model_config = ConfigDict(frozen=True)


class SolverConfig(BaseModel):
    """Run-level options shared by the radial method and the baselines."""
    max_iters: Optional[int] = Field(None, ge=0, description="Number of steps; None lets the solver decide")
    target_epsilon: Optional[float] = Field(None, gt=0, description="Stop once relative accuracy <= this")
    line_search: LineSearchConfig = Field(default_factory=LineSearchConfig)
    closed_form: bool = Field(False, description="Use the instance's closed-form gamma_z when it has one")
    check_invariants: bool = Field(True, description="Count runtime invariant violations")

    model_config = ConfigDict(frozen=True)
