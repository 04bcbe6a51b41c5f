"""Exception hierarchy.

Domain errors are bad inputs. Numerical errors are failures of an otherwise
valid evaluation; the CLI maps them to exit code 4.
"""


class SqueezeForceError(Exception):
    """Base class for all package errors."""


class DomainError(SqueezeForceError, ValueError):
    """An argument lies outside the domain of the operation."""


class AboveThresholdError(DomainError):
    """OPO pumped at or above threshold (epsilon >= kappa / 2)."""


class NumericalError(SqueezeForceError, ArithmeticError):
    """A valid evaluation failed to produce a trustworthy number."""


class DegenerateDenominatorError(NumericalError):
    """Steady-state denominator is not positive for the given parameters."""

    def __init__(self, message, params=None):
        super().__init__(message)
        self.params = dict(params or {})


class QuadratureError(NumericalError):
    """Adaptive quadrature hit its refinement cap before converging."""

    def __init__(self, message, achieved_rtol=float("nan"), panels=0):
        super().__init__(message)
        self.achieved_rtol = achieved_rtol
        self.panels = panels


class NoCrossoverError(NumericalError):
    """The force difference does not change sign inside the bracket."""


class GridPointError(NumericalError):
    """A sweep aborted on a specific grid point."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = dict(point or {})
