"""Exception types shared across the package."""


class FWError(Exception):
    """Base class for all package errors."""


class ValidationError(FWError):
    """Malformed input: bad parameter lists, non-finite numbers, schema violations."""


class SingularElement(FWError):
    """Inversion (or division) attempted on a bicomplex zero divisor."""


class DomainError(FWError):
    """Argument outside the mathematical domain of an operation."""


class DomainViolation(FWError):
    """Evaluation point lies outside the convergence domain of a series."""


class PoleError(FWError):
    """A gamma factor was evaluated at a nonpositive integer."""


class MaxTermsExceeded(FWError):
    """Series summation hit the term budget before meeting the tolerance."""


class TruncationError(FWError):
    """State truncation could not reach the requested tail mass."""


class QuadratureFailure(FWError):
    """Adaptive quadrature exhausted its subdivision budget."""


class ContourFailure(FWError):
    """Contour integration failed to converge under node doubling."""
