"""Exception hierarchy shared across mpkit modules."""


class MpkitError(Exception):
    """Base class for all mpkit errors."""


class ParseError(MpkitError):
    """Syntax or arity error in a production-function expression.

    `position` is the 0-based character offset of the offending token.
    """

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DomainError(MpkitError):
    """Evaluation left the real domain (log of non-positive, bad power)."""


class SolverError(MpkitError):
    """Base class for numerical-solver failures."""


class ConvergenceError(SolverError):
    """Iteration limit or line search exhausted before tolerances were met."""


class DomainEscapeError(SolverError):
    """Newton steps kept driving an input non-positive."""


class InfeasibleOutputError(SolverError):
    """Requested output level appears unreachable (f bounded below y)."""


class DegenerateSystemError(SolverError):
    """Linearized optimality system is singular."""


class ZeroPathDerivativeError(SolverError):
    """Responsible factor's demand does not move with output (d(phi)/dy ~ 0)."""


class MonotonicityError(SolverError):
    """Factor demand is not monotone in output, so it cannot be inverted."""


class QuadratureError(SolverError):
    """Adaptive integration failed to reach the requested tolerance."""


class NonViableEconomyError(MpkitError):
    """Leontief technology cannot support non-negative prices.

    `spectral_radius` holds the offending spectral radius of (1+r)A.
    """

    def __init__(self, spectral_radius):
        super().__init__(
            "economy is not viable: spectral radius of (1+r)A is "
            f"{spectral_radius:.6g} (must be < 1)"
        )
        self.spectral_radius = spectral_radius
