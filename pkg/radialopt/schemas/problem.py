# radialopt/schemas/problem.py
import math
from typing import Annotated, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, field_validator, model_validator


class ProblemMetadata(BaseModel):
    """Ground truth attached to a problem: optimal value, optimum and geometry constants."""
    f_star: Optional[float] = Field(None, description="Known optimal value f*")
    optimum: Optional[List[float]] = Field(None, description="A point attaining f*")
    dist_to_opt: Optional[float] = Field(None, ge=0, description="Distance from the origin to the optimal set")
    radius_R: Optional[float] = Field(None, gt=0, description="Largest origin-centred ball on which f <= 0")
    diameter_D: Optional[float] = Field(None, gt=0, description="Diameter of the sublevel set {f <= f(0)}")

    @field_validator("f_star", "dist_to_opt", "radius_R", "diameter_D")
    @classmethod
    def check_finite(cls, v):
        if v is not None and not math.isfinite(v):
            raise ValueError("metadata values must be finite")
        return v

    @model_validator(mode="after")
    def check_optimum_has_value(self) -> "ProblemMetadata":
        if self.optimum is not None and self.f_star is None:
            raise ValueError("optimum given without f_star")
        return self

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        json_schema_extra={
            "example": {"f_star": -1.0, "optimum": [0.5, 0.0], "dist_to_opt": 0.5, "radius_R": 0.5, "diameter_D": 1.0}
        },
    )


class LinearProgramData(BaseModel):
    """f(x) = c.x - h on {x : Ax <= b}."""
    A: List[List[float]] = Field(default_factory=list, description="Constraint normals, one row per constraint")
    b: List[float] = Field(default_factory=list, description="Right-hand sides, all strictly positive")
    c: List[float] = Field(..., min_length=1, description="Objective vector")
    h: float = Field(1.0, gt=0, description="Shift making f(0) = -h")

    @field_validator("b")
    @classmethod
    def check_b_positive(cls, v):
        if any(not (value > 0) for value in v):
            raise ValueError("b must be strictly positive so the origin is strictly feasible")
        return v

    @model_validator(mode="after")
    def check_shapes(self) -> "LinearProgramData":
        if len(self.A) != len(self.b):
            raise ValueError(f"A has {len(self.A)} rows but b has {len(self.b)} entries")
        n = len(self.c)
        for i, row in enumerate(self.A):
            if len(row) != n:
                raise ValueError(f"row {i} of A has length {len(row)}, expected {n}")
        return self

    model_config = ConfigDict(frozen=True)


class BallSqrtData(BaseModel):
    """f(x) = -sqrt(1 - |x - c|^2) on the closed unit ball around c."""
    center: List[float] = Field(..., min_length=1, description="Ball centre c with |c| < 1")

    @field_validator("center")
    @classmethod
    def check_center_inside(cls, v):
        if math.fsum(value * value for value in v) >= 1.0:
            raise ValueError("center must satisfy |c| < 1 so that f(0) < 0")
        return v

    model_config = ConfigDict(frozen=True)


class Piece(BaseModel):
    """One affine piece a.x + b of a pointwise maximum."""
    a: List[float] = Field(..., min_length=1)
    b: float

    model_config = ConfigDict(frozen=True)


class PiecewiseMaxData(BaseModel):
    """f(x) = max_i (a_i.x + b_i)."""
    pieces: List[Piece] = Field(..., min_length=1)

    @field_validator("pieces")
    @classmethod
    def check_pieces(cls, v):
        if max(piece.b for piece in v) >= 0:
            raise ValueError("every piece needs b < 0 so that f(0) < 0")
        n = len(v[0].a)
        if any(len(piece.a) != n for piece in v):
            raise ValueError("all pieces must have the same dimension")
        return v

    model_config = ConfigDict(frozen=True)


class ProblemFileBase(BaseModel):
    dimension: int = Field(..., gt=0)
    metadata: Optional[ProblemMetadata] = None

    model_config = ConfigDict(extra="forbid", frozen=True)


class LinearProgramFile(ProblemFileBase, LinearProgramData):
    kind: Literal["lp"]

    @model_validator(mode="after")
    def check_dimension(self) -> "LinearProgramFile":
        if len(self.c) != self.dimension:
            raise ValueError(f"c has length {len(self.c)} but dimension is {self.dimension}")
        return self


class BallSqrtFile(ProblemFileBase, BallSqrtData):
    kind: Literal["ball_sqrt"]

    @model_validator(mode="after")
    def check_dimension(self) -> "BallSqrtFile":
        if len(self.center) != self.dimension:
            raise ValueError(f"center has length {len(self.center)} but dimension is {self.dimension}")
        return self


class PiecewiseMaxFile(ProblemFileBase, PiecewiseMaxData):
    kind: Literal["piecewise_max"]

    @model_validator(mode="after")
    def check_dimension(self) -> "PiecewiseMaxFile":
        if len(self.pieces[0].a) != self.dimension:
            raise ValueError(f"pieces have length {len(self.pieces[0].a)} but dimension is {self.dimension}")
        return self


ProblemFile = Annotated[
    Union[LinearProgramFile, BallSqrtFile, PiecewiseMaxFile],
    Field(discriminator="kind"),
]

problem_file_adapter: TypeAdapter = TypeAdapter(ProblemFile)
