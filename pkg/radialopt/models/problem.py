# radialopt/models/problem.py
"""
Oracle model of the objective.

A problem is a lower-semicontinuous convex f: R^n -> R u {+inf} given by two
oracles: a value oracle and an epigraph-normal oracle. Every instance is
canonical, i.e. the origin is interior to dom f and f(0) < 0; `canonicalize`
produces such an instance from a raw objective and a known interior point.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel

from radialopt.core.config import get_settings
from radialopt.core.exceptions import ContractViolationError, OracleError, UsageError
from radialopt.schemas.problem import ProblemMetadata

logger = logging.getLogger(__name__)

# Plain floats carry extended values; math.inf is the +infinity element.
ExtendedValue = float
Point = NDArray[np.float64]


@dataclass(frozen=True)
class EpigraphNormal:
    """A vector (zeta, delta) of the normal cone of epi f at a boundary point."""
    zeta: Point
    delta: float

    @property
    def is_domain_normal(self) -> bool:
        return self.delta == 0.0


@dataclass(frozen=True)
class Positive:
    """gamma_z(x) > 0, certified by a bracket of the given width."""
    gamma: float
    bracket_width: float = 0.0


@dataclass(frozen=True)
class ZeroDetected:
    """gamma_z(x) is numerically zero: the perspective is still <= z at witness_gamma."""
    witness_gamma: float


GammaResult = Union[Positive, ZeroDetected]

ValueOracle = Callable[[Point], ExtendedValue]
NormalOracle = Callable[[Point, float], EpigraphNormal]
GammaOracle = Callable[[Point, float], GammaResult]


def checked_value(value) -> ExtendedValue:
    """Coerce an oracle output to an extended value, rejecting NaN and -inf."""
    value = float(value)
    if math.isnan(value):
        raise OracleError("value oracle returned NaN")
    if value == -math.inf:
        raise OracleError("value oracle returned -inf")
    return value


def as_point(x: Union[Sequence[float], float, Point], dimension: int) -> Point:
    """Validate x as a finite point of the given dimension."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 0 and dimension == 1:
        arr = arr.reshape(1)
    if arr.shape != (dimension,):
        raise UsageError(f"expected a point of dimension {dimension}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise UsageError("point coordinates must be finite")
    return arr


def _read_only(arr: Point) -> Point:
    arr = np.array(arr, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ProblemInstance:
    """
    Immutable oracle bundle for a canonical problem.

    The oracles must be pure so one instance can be shared by concurrent runs.
    `source` keeps the validated payload an instance was built from, which is
    what `write_problem_file` serializes.
    """
    dimension: int
    value_oracle: ValueOracle
    normal_oracle: NormalOracle
    closed_form_gamma: Optional[GammaOracle] = None
    metadata: ProblemMetadata = field(default_factory=ProblemMetadata)
    kind: str = "custom"
    source: Optional[BaseModel] = None

    def __post_init__(self):
        if self.dimension < 1:
            raise UsageError("dimension must be a positive integer")
        f0 = checked_value(self.value_oracle(np.zeros(self.dimension)))
        if not f0 < 0:
            raise ContractViolationError(f"f(0) must be finite and strictly negative, got {f0}")
        self._check_metadata()

    def _check_metadata(self) -> None:
        meta = self.metadata
        if meta.optimum is None:
            return
        optimum = as_point(meta.optimum, self.dimension)
        value = checked_value(self.value_oracle(optimum))
        tol = get_settings().METADATA_TOL * max(1.0, abs(meta.f_star))
        if not abs(value - meta.f_star) <= tol:
            raise ContractViolationError(
                f"metadata optimum has f = {value}, which disagrees with f_star = {meta.f_star}"
            )

    @property
    def f_origin(self) -> float:
        return self.value_oracle(np.zeros(self.dimension))

    @property
    def optimum(self) -> Optional[Point]:
        if self.metadata.optimum is None:
            return None
        return np.asarray(self.metadata.optimum, dtype=np.float64)


def evaluate(problem: ProblemInstance, x) -> ExtendedValue:
    """Return f(x); +inf exactly when x is outside dom f."""
    x = as_point(x, problem.dimension)
    return checked_value(problem.value_oracle(x))


def check_normal(normal: EpigraphNormal, dimension: int) -> EpigraphNormal:
    """Reject normals that are zero, point upward or have the wrong shape."""
    zeta = np.asarray(normal.zeta, dtype=np.float64)
    delta = float(normal.delta)
    if zeta.shape != (dimension,) or not np.all(np.isfinite(zeta)) or not math.isfinite(delta):
        raise OracleError("normal oracle returned a malformed vector")
    if delta > 0:
        raise OracleError(f"epigraph normals must have delta <= 0, got {delta}")
    if delta == 0.0 and not np.any(zeta):
        raise OracleError("normal oracle returned the zero vector")
    return EpigraphNormal(zeta=zeta, delta=delta)


def boundary_normal(problem: ProblemInstance, x, t: float) -> EpigraphNormal:
    """
    Return a nonzero normal of epi f at the boundary point (x, t).

    Points with f(x) = t are objective-active and get (grad f(x), -1) at
    smooth points; points with x on the boundary of dom f and f(x) <= t are
    constraint-active and get (g, 0) with g an outward normal of dom f.
    Constraint activity wins when both apply. Points off the boundary raise
    ContractViolationError, including an objective-type normal returned for a
    point with f(x) < t.
    """
    x = as_point(x, problem.dimension)
    t = float(t)
    if not math.isfinite(t):
        raise UsageError("epigraph height t must be finite")
    fx = checked_value(problem.value_oracle(x))
    tol = get_settings().BOUNDARY_TOL * max(1.0, abs(t))
    if fx > t + tol:
        raise ContractViolationError(f"point lies outside epi f: f(x) = {fx} > t = {t}")
    normal = check_normal(problem.normal_oracle(x, t), problem.dimension)
    # delta != 0 is only a normal where the graph itself passes through (x, t)
    if fx < t - tol and not normal.is_domain_normal:
        raise ContractViolationError(f"point is strictly inside epi f: f(x) = {fx} < t = {t}")
    return normal


def canonicalize(
    raw_value_oracle: ValueOracle,
    raw_normal_oracle: NormalOracle,
    x0,
    h: Optional[float] = None,
    metadata: Optional[ProblemMetadata] = None,
    kind: str = "custom",
) -> ProblemInstance:
    """
    Move a known interior point x0 to the origin and shift values so f(0) = -h.

    The new objective is x -> f_raw(x + x0) - f_raw(x0) - h. Normals are
    translation invariant; only the epigraph height shifts by f_raw(x0) + h.
    Supplied raw metadata is translated: f_star and optimum move with the
    objective, dist_to_opt is recomputed, R and D are dropped because they
    are measured from the origin.
    """
    x0 = _read_only(np.atleast_1d(np.asarray(x0, dtype=np.float64)))
    if x0.ndim != 1 or not np.all(np.isfinite(x0)):
        raise UsageError("x0 must be a finite 1-D point")
    if h is None:
        h = get_settings().DEFAULT_SHIFT_H
    if not h > 0:
        raise UsageError(f"shift h must be positive, got {h}")

    f_x0 = checked_value(raw_value_oracle(x0))
    if f_x0 == math.inf:
        raise ContractViolationError("raw objective is +inf at x0; x0 must be interior to dom f")
    offset = f_x0 + h

    def value_oracle(x: Point) -> ExtendedValue:
        return raw_value_oracle(x + x0) - offset

    def normal_oracle(x: Point, t: float) -> EpigraphNormal:
        return raw_normal_oracle(x + x0, t + offset)

    canonical_meta = ProblemMetadata()
    if metadata is not None and metadata.f_star is not None:
        optimum = None
        dist = None
        if metadata.optimum is not None:
            shifted = np.asarray(metadata.optimum, dtype=np.float64) - x0
            optimum = shifted.tolist()
            dist = float(np.linalg.norm(shifted))
        canonical_meta = ProblemMetadata(f_star=metadata.f_star - offset, optimum=optimum, dist_to_opt=dist)

    logger.debug("canonicalized objective at x0=%s with f_raw(x0)=%g, h=%g", x0.tolist(), f_x0, h)
    return ProblemInstance(
        dimension=x0.shape[0],
        value_oracle=value_oracle,
        normal_oracle=normal_oracle,
        metadata=canonical_meta,
        kind=kind,
    )
