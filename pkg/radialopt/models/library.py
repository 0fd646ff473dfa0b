# radialopt/models/library.py
"""
Built-in problem families with known ground truth.

Each family wraps its validated payload, exposes pure value/normal oracles
and a closed-form radial reformulation, and builds a ProblemInstance with
metadata (f*, optimum, dist, R, D) wherever it can be computed exactly.
"""

import json
import logging
import math
from pathlib import Path
from typing import Dict, Optional, Tuple, Type, Union

import numpy as np
from pydantic import BaseModel, ValidationError
from scipy.optimize import linprog

from radialopt.core.config import get_settings
from radialopt.core.exceptions import (
    ContractViolationError,
    ProblemLoadError,
    UsageError,
)
from radialopt.models.problem import (
    EpigraphNormal,
    ExtendedValue,
    GammaResult,
    Point,
    Positive,
    ProblemInstance,
    ZeroDetected,
    canonicalize,
)
from radialopt.schemas.problem import (
    BallSqrtData,
    LinearProgramData,
    PiecewiseMaxData,
    ProblemMetadata,
    problem_file_adapter,
)

logger = logging.getLogger(__name__)


def _frozen(values, shape=None) -> np.ndarray:
    arr = np.array(values, dtype=np.float64)
    if shape is not None:
        arr = arr.reshape(shape)
    arr.setflags(write=False)
    return arr


def _gamma_from_value(value: float) -> GammaResult:
    gamma_min = get_settings().GAMMA_MIN
    if value < gamma_min:
        return ZeroDetected(witness_gamma=gamma_min)
    return Positive(gamma=float(value), bracket_width=0.0)


def _interval_1d(a: np.ndarray, rhs: np.ndarray) -> Tuple[float, float]:
    """Solution interval of the scalar system a_i * x <= rhs_i (rows with a_i = 0 ignored)."""
    lo, hi = -math.inf, math.inf
    for ai, ri in zip(a, rhs):
        if ai > 0:
            hi = min(hi, ri / ai)
        elif ai < 0:
            lo = max(lo, ri / ai)
    return lo, hi


class ProblemFamily:
    """Common construction path: oracles + metadata -> ProblemInstance."""
    kind: str = "custom"
    data_model: Type[BaseModel] = BaseModel

    def __init__(self, data: BaseModel, boundary_tol: Optional[float] = None):
        self.data = data
        self.tol = get_settings().BOUNDARY_TOL if boundary_tol is None else boundary_tol

    def value(self, x: Point) -> ExtendedValue:
        raise NotImplementedError

    def normal(self, x: Point, t: float) -> EpigraphNormal:
        raise NotImplementedError

    def closed_form_gamma(self, x: Point, z: float) -> GammaResult:
        raise NotImplementedError

    def compute_metadata(self) -> ProblemMetadata:
        return ProblemMetadata()

    def instance(self, metadata: Optional[ProblemMetadata] = None) -> ProblemInstance:
        merged = self.compute_metadata()
        if metadata is not None:
            merged = ProblemMetadata(**{**merged.model_dump(), **metadata.model_dump(exclude_none=True)})
        return ProblemInstance(
            dimension=self.dimension,
            value_oracle=self.value,
            normal_oracle=self.normal,
            closed_form_gamma=self.closed_form_gamma,
            metadata=merged,
            kind=self.kind,
            source=self.data,
        )

    def __repr__(self):
        return f"<{type(self).__name__}(dimension={self.dimension})>"


class LinearProgram(ProblemFamily):
    """f(x) = c.x - h on {x : Ax <= b}, +inf outside."""
    kind = "lp"
    data_model = LinearProgramData

    def __init__(self, data: LinearProgramData, boundary_tol: Optional[float] = None):
        super().__init__(data, boundary_tol)
        self.dimension = len(data.c)
        self.A = _frozen(data.A, (len(data.b), self.dimension))
        self.b = _frozen(data.b)
        self.c = _frozen(data.c)
        self.h = float(data.h)
        # The raw objective is c.x; the origin is already interior, so only the -h shift applies.
        shifted = canonicalize(self.raw_value, self.raw_normal, np.zeros(self.dimension), h=self.h, kind=self.kind)
        self._value = shifted.value_oracle
        self._normal = shifted.normal_oracle

    def raw_value(self, x: Point) -> ExtendedValue:
        if self.A.shape[0] and np.any(self.A @ x > self.b):
            return math.inf
        return float(self.c @ x)

    def raw_normal(self, x: Point, t: float) -> EpigraphNormal:
        if self.A.shape[0]:
            slack = self.b - self.A @ x
            active = np.flatnonzero(slack <= self.tol * np.maximum(1.0, np.abs(self.b)))
            if active.size:
                return EpigraphNormal(zeta=self.A[active[0]], delta=0.0)
        fx = float(self.c @ x)
        if abs(fx - t) <= self.tol * max(1.0, abs(t)):
            return EpigraphNormal(zeta=self.c, delta=-1.0)
        raise ContractViolationError("point is strictly inside epi f")

    def value(self, x: Point) -> ExtendedValue:
        return self._value(x)

    def normal(self, x: Point, t: float) -> EpigraphNormal:
        return self._normal(x, t)

    def closed_form_gamma(self, x: Point, z: float) -> GammaResult:
        value = (float(self.c @ x) - z) / self.h
        if self.A.shape[0]:
            value = max(value, float(np.max((self.A @ x) / self.b)))
        return _gamma_from_value(value)

    def pull_inside(self, x: Point) -> Point:
        """Shrink x toward the origin until it satisfies Ax <= b in floating point."""
        x = np.asarray(x, dtype=np.float64)
        for _ in range(8):
            Ax = self.A @ x
            if not np.any(Ax > self.b):
                break
            over = Ax > 0
            x = x * (float(np.min(self.b[over] / Ax[over])) * (1.0 - 4 * np.finfo(float).eps))
        return x

    def radius(self) -> Optional[float]:
        """min(h/|c|, b_i/|A_i|): the largest origin ball inside {Ax <= b, c.x <= h}."""
        limits = [self.h / float(np.linalg.norm(self.c))] if np.any(self.c) else []
        row_norms = np.linalg.norm(self.A, axis=1) if self.A.shape[0] else np.empty(0)
        limits += [float(bi / ni) for bi, ni in zip(self.b, row_norms) if ni > 0]
        return min(limits) if limits else None

    def compute_metadata(self) -> ProblemMetadata:
        if self.dimension == 1:
            return self._metadata_1d()
        radius = self.radius()
        if not np.any(self.c):
            return ProblemMetadata(f_star=-self.h, optimum=[0.0] * self.dimension, dist_to_opt=0.0, radius_R=radius)
        A_ub = self.A if self.A.shape[0] else None
        b_ub = self.b if self.A.shape[0] else None
        res = linprog(self.c, A_ub=A_ub, b_ub=b_ub, bounds=[(None, None)] * self.dimension, method="highs")
        if res.status != 0:
            logger.info("LP has no finite optimum (linprog status %d)", res.status)
            return ProblemMetadata(radius_R=radius)
        optimum = self.pull_inside(res.x)
        return ProblemMetadata(
            f_star=self.value(optimum),
            optimum=optimum.tolist(),
            dist_to_opt=float(np.linalg.norm(optimum)),
            radius_R=radius,
        )

    def _metadata_1d(self) -> ProblemMetadata:
        lo, hi = _interval_1d(self.A[:, 0], self.b)
        c = float(self.c[0])
        # f <= 0 on [-r, r] needs [-r, r] inside the domain and c*x <= h there
        radius = min(-lo, hi, self.h / abs(c) if c else math.inf)
        if c > 0:
            x_star, sublevel = lo, (lo, 0.0)
        elif c < 0:
            x_star, sublevel = hi, (0.0, hi)
        else:
            x_star, sublevel = 0.0, (lo, hi)
        width = sublevel[1] - sublevel[0]
        fields = {
            "radius_R": radius if math.isfinite(radius) else None,
            "diameter_D": width if math.isfinite(width) and width > 0 else None,
        }
        if math.isfinite(x_star):
            optimum = self.pull_inside(np.array([x_star]))
            fields.update(f_star=self.value(optimum), optimum=optimum.tolist(), dist_to_opt=abs(float(optimum[0])))
        return ProblemMetadata(**fields)


class BallSqrt(ProblemFamily):
    """f(x) = -sqrt(1 - |x - c|^2) on the closed unit ball around c: steep at the sphere."""
    kind = "ball_sqrt"
    data_model = BallSqrtData

    def __init__(self, data: BallSqrtData, boundary_tol: Optional[float] = None):
        super().__init__(data, boundary_tol)
        self.center = _frozen(data.center)
        self.dimension = self.center.shape[0]
        self.center_norm = float(np.linalg.norm(self.center))

    def value(self, x: Point) -> ExtendedValue:
        d = x - self.center
        r2 = float(d @ d)
        if r2 > 1.0:
            return math.inf
        return -math.sqrt(1.0 - r2)

    def normal(self, x: Point, t: float) -> EpigraphNormal:
        d = x - self.center
        r2 = float(d @ d)
        if r2 >= 1.0 - self.tol and np.any(d):
            return EpigraphNormal(zeta=d, delta=0.0)
        root = math.sqrt(max(1.0 - r2, 0.0))
        if root > 0 and abs(-root - t) <= self.tol * max(1.0, abs(t)):
            return EpigraphNormal(zeta=d / root, delta=-1.0)
        raise ContractViolationError("point is strictly inside epi f")

    def closed_form_gamma(self, x: Point, z: float) -> GammaResult:
        # gamma^2 (1 - |c|^2) + 2 gamma <x, c> - (|x|^2 + z^2) = 0, positive root
        a = 1.0 - self.center_norm ** 2
        p = float(x @ self.center)
        q = float(x @ x) + z * z
        disc = math.sqrt(p * p + a * q)
        value = q / (p + disc) if p > 0 else (disc - p) / a
        return _gamma_from_value(value)

    def compute_metadata(self) -> ProblemMetadata:
        norm = self.center_norm
        return ProblemMetadata(
            f_star=-1.0,
            optimum=self.center.tolist(),
            dist_to_opt=norm,
            radius_R=1.0 - norm,
            diameter_D=2.0 * norm if norm > 0 else None,
        )


class PiecewiseMax(ProblemFamily):
    """f(x) = max_i (a_i.x + b_i) on all of R^n."""
    kind = "piecewise_max"
    data_model = PiecewiseMaxData

    def __init__(self, data: PiecewiseMaxData, boundary_tol: Optional[float] = None):
        super().__init__(data, boundary_tol)
        self.a = _frozen([piece.a for piece in data.pieces])
        self.b = _frozen([piece.b for piece in data.pieces])
        self.dimension = self.a.shape[1]

    def value(self, x: Point) -> ExtendedValue:
        return float(np.max(self.a @ x + self.b))

    def normal(self, x: Point, t: float) -> EpigraphNormal:
        values = self.a @ x + self.b
        fx = float(np.max(values))
        if abs(fx - t) > self.tol * max(1.0, abs(t)):
            raise ContractViolationError("point is strictly inside epi f")
        active = np.flatnonzero(values >= fx - self.tol * max(1.0, abs(fx)))
        return EpigraphNormal(zeta=self.a[active[0]], delta=-1.0)

    def closed_form_gamma(self, x: Point, z: float) -> GammaResult:
        return _gamma_from_value(float(np.max((self.a @ x - z) / -self.b)))

    def compute_metadata(self) -> ProblemMetadata:
        norms = np.linalg.norm(self.a, axis=1)
        limits = [-bi / ni for bi, ni in zip(self.b, norms) if ni > 0]
        fields = {"radius_R": float(min(limits)) if limits else None}

        # min t s.t. a_i.x - t <= -b_i
        n = self.dimension
        A_ub = np.hstack([self.a, -np.ones((self.a.shape[0], 1))])
        res = linprog(
            np.r_[np.zeros(n), 1.0], A_ub=A_ub, b_ub=-self.b, bounds=[(None, None)] * (n + 1), method="highs"
        )
        if res.status == 0:
            optimum = np.asarray(res.x[:n], dtype=np.float64)
            fields.update(
                f_star=self.value(optimum),
                optimum=optimum.tolist(),
                dist_to_opt=float(np.linalg.norm(optimum)),
            )
        else:
            logger.info("piecewise maximum is unbounded below (linprog status %d)", res.status)

        if n == 1:
            f0 = float(np.max(self.b))
            lo, hi = _interval_1d(self.a[:, 0], f0 - self.b)
            width = hi - lo
            if math.isfinite(width) and width > 0:
                fields["diameter_D"] = width
        return ProblemMetadata(**fields)


PROBLEM_FAMILIES: Dict[str, Type[ProblemFamily]] = {
    "lp": LinearProgram,
    "ball_sqrt": BallSqrt,
    "piecewise_max": PiecewiseMax,
}


def create_problem(kind: str, data: BaseModel, metadata: Optional[ProblemMetadata] = None) -> ProblemInstance:
    """Factory method dispatching on the problem kind."""
    family_class = PROBLEM_FAMILIES.get(kind.lower())
    if not family_class:
        raise UsageError(f"Unsupported problem kind: {kind}")
    return family_class(data).instance(metadata)


def make_linear_program(data: LinearProgramData) -> ProblemInstance:
    return LinearProgram(data).instance()


def lp_gamma_closed_form(data: LinearProgramData, x, z: float) -> GammaResult:
    """gamma_z(x) = max((c.x - z)/h, max_i A_i.x / b_i), ZeroDetected when that max is <= 0."""
    if not z < 0:
        raise UsageError(f"level z must be negative, got {z}")
    return LinearProgram(data).closed_form_gamma(np.asarray(x, dtype=np.float64).reshape(len(data.c)), z)


def make_ball_sqrt(data: BallSqrtData) -> ProblemInstance:
    return BallSqrt(data).instance()


def make_piecewise_max(data: PiecewiseMaxData) -> ProblemInstance:
    return PiecewiseMax(data).instance()


def _format_validation_error(exc: ValidationError) -> str:
    lines = []
    for error in exc.errors():
        path = ".".join(str(part) for part in error["loc"]) or "<root>"
        lines.append(f"{path}: {error['msg']}")
    return "; ".join(lines)


def load_problem_file(path: Union[str, Path]) -> ProblemInstance:
    """Read a JSON problem file and build the instance it describes."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ProblemLoadError(f"cannot read problem file {path}: {e}") from e
    try:
        parsed = problem_file_adapter.validate_json(text)
    except ValidationError as e:
        raise ProblemLoadError(f"invalid problem file {path}: {_format_validation_error(e)}") from e
    try:
        problem = create_problem(parsed.kind, parsed, parsed.metadata)
    except ContractViolationError as e:
        raise ProblemLoadError(f"invalid problem file {path}: metadata: {e}") from e
    logger.info("loaded %s problem of dimension %d from %s", parsed.kind, parsed.dimension, path)
    return problem


def write_problem_file(problem: ProblemInstance, path: Union[str, Path]) -> None:
    """Serialize an instance built from a family payload back to the JSON file format."""
    family_class = PROBLEM_FAMILIES.get(problem.kind)
    if family_class is None or problem.source is None:
        raise UsageError("only instances built from a problem payload can be written")
    payload = problem.source.model_dump(include=set(family_class.data_model.model_fields))
    document = {"kind": problem.kind, "dimension": problem.dimension, **payload}
    metadata = problem.metadata.model_dump(exclude_none=True)
    if metadata:
        document["metadata"] = metadata
    Path(path).write_text(json.dumps(document, indent=2), encoding="utf-8")
