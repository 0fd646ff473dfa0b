# radialopt/schemas/report.py
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class Theorem(str, Enum):
    """Iteration guarantees that verify-bounds can check."""
    EPS_TARGET = "eps_target"
    KNOWN_OPTIMUM = "known_optimum"
    RENEGAR_A = "renegar_a"
    RENEGAR_B = "renegar_b"


class BoundCheckReport(BaseModel):
    theorem: Theorem = Field(..., description="Which guarantee was checked")
    epsilon: float = Field(..., gt=0, description="Target relative accuracy")
    bound_iterations: int = Field(..., ge=0, description="Guaranteed iteration ceiling")
    achieved_iteration: Optional[int] = Field(None, ge=0, description="First iterate with relative accuracy <= epsilon")
    passed: bool

    @model_validator(mode="after")
    def check_passed(self) -> "BoundCheckReport":
        expected = self.achieved_iteration is not None and self.achieved_iteration <= self.bound_iterations
        if self.passed != expected:
            raise ValueError("passed must hold exactly when achieved_iteration <= bound_iterations")
        return self

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "theorem": "known_optimum",
                "epsilon": 0.1,
                "bound_iterations": 100,
                "achieved_iteration": 1,
                "passed": True,
            }
        }
    )


class RunReport(BaseModel):
    problem_id: str = Field(..., description="Problem file stem or instance label")
    algorithm: str = Field(..., description="radial, renegar-a or renegar-b")
    policy: Optional[str] = Field(None, description="Step-size policy of the radial method")
    config: Dict[str, Any] = Field(default_factory=dict, description="Echo of the run configuration")
    status: str
    ray: Optional[List[float]] = Field(None, description="Unbounded direction when status is UnboundedDetected")
    best_value: float
    best_relative_accuracy: Optional[float] = None
    achieved_iteration: Optional[int] = None
    iterations: int = Field(..., ge=0, description="Steps taken (records minus one)")
    wall_time_s: float = Field(..., ge=0)
    violations: Dict[str, int] = Field(default_factory=dict)

    @property
    def clean(self) -> bool:
        return all(count == 0 for count in self.violations.values())
