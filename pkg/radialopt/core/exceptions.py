# radialopt/core/exceptions.py
"""Error hierarchy shared by the oracles, the line search, the solvers and the CLI."""

from typing import Optional


class RadialOptError(Exception):
    """Base class for every error raised by radialopt."""


class UsageError(RadialOptError, ValueError):
    """An argument is outside the operation's domain (wrong dimension, gamma <= 0, ...)."""


class ContractViolationError(RadialOptError, ValueError):
    """A documented precondition on an oracle call or a problem instance does not hold."""


class OracleError(RadialOptError):
    """An oracle produced a value the model cannot represent (NaN, -inf, a zero normal)."""


class DegenerateNormalError(RadialOptError):
    """The normal-to-subgradient scaling <zeta, x> + delta*z is not safely positive."""


class LineSearchError(RadialOptError):
    """Doubling never reached a feasible gamma."""


class LineSearchStall(LineSearchError):
    """The gamma bracket cannot be narrowed any further at float resolution."""


class GridSearchError(RadialOptError):
    """No grid point satisfies the perspective level condition."""


class StationaryPointError(RadialOptError):
    """The selected subgradient is zero, so the current point minimizes gamma_z."""


class NonPositiveStepError(RadialOptError):
    """A step-size rule produced alpha <= 0 (the level is already at the target)."""


class SolverError(RadialOptError):
    """A library error raised inside a solver run, tagged with the iteration index."""

    def __init__(self, message: str, iteration: Optional[int] = None):
        self.iteration = iteration
        if iteration is not None:
            message = f"iteration {iteration}: {message}"
        super().__init__(message)


class ProblemLoadError(RadialOptError, ValueError):
    """A problem file could not be read, parsed or validated."""


class MissingMetadataError(RadialOptError, ValueError):
    """A bound check needs a metadata field the problem does not carry."""

    def __init__(self, field: str, purpose: str = ""):
        self.field = field
        suffix = f" (needed for {purpose})" if purpose else ""
        super().__init__(f"problem metadata is missing '{field}'{suffix}")
