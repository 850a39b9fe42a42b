"""Exception types shared across the toolkit.

Raised instead of ``ValueError``/``ArithmeticError`` so callers can tell
toolkit-level failures apart from programming errors.
"""


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class NotHermitianError(ToolkitError):
    """Input matrix is not Hermitian within the symmetry tolerance."""


class NoConvergenceError(ToolkitError):
    """An iterative routine exhausted its budget without converging."""


class NumericalBreakdownError(ToolkitError):
    """A quantity left its admissible numerical range (e.g. A*A with an
    eigenvalue significantly below zero)."""


class DomainError(ToolkitError):
    """A scalar function was evaluated outside its domain."""


class NotInvertibleError(ToolkitError):
    """A matrix required to be invertible is singular to working precision."""


class UndefinedValueError(ToolkitError):
    """The requested value is undefined for these parameters
    (e.g. the deformed exponential at 1 + r*x <= 0)."""


class NotUnitVectorError(ToolkitError):
    """A vector required to lie on the unit sphere does not."""


class BadParametersError(ToolkitError):
    """Parameters violate a structural constraint (conjugate exponents,
    weight in (0,1), integer counts, ...)."""


class NotConjugateError(BadParametersError):
    """Exponent pair fails 1/p + 1/q = 1 with p, q > 1."""


class BadWindowError(BadParametersError):
    """A spectral window (delta, Delta) or (m', M') is empty or degenerate."""


class BadFunctionError(BadParametersError):
    """A scalar function lacks a flag (convexity, superquadraticity, ...)
    required by the operation."""


class BadKindError(BadParametersError):
    """Unknown generator or functional kind."""


class PreconditionFailedError(ToolkitError):
    """A bound's hypothesis does not hold for the supplied case.

    Carries the margin report so callers can see which clause failed.
    """

    def __init__(self, message, margins=None):
        super().__init__(message)
        self.margins = dict(margins or {})


class GenerationFailedError(ToolkitError):
    """A case generator could not produce a precondition-satisfying case
    within its retry budget."""


class ExampleMismatchError(ToolkitError):
    """A frozen worked example did not reproduce within tolerance.

    Carries the measured values for the failure report.
    """

    def __init__(self, message, measured=None):
        super().__init__(message)
        self.measured = dict(measured or {})
