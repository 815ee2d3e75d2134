"""Exception types shared across the package."""


class GbeError(Exception):
    """Base class for all package errors."""


class DivisionByZeroSeries(GbeError, ZeroDivisionError):
    """Series division by a series that vanishes to its truncation order."""


class DiagonalPoleResidue(GbeError):
    """A diagonal merge left a nonzero negative power of (x_j - x_i)."""


class MissingDependency(GbeError):
    """A hierarchy node was requested before the nodes it depends on."""


class StructureViolation(GbeError):
    """A computed object does not have the conjectured canonical shape."""


class InsufficientOrder(GbeError):
    """Not enough resolvent coefficients to extract the requested quantity."""


class DomainError(GbeError, ValueError):
    """Argument outside the validity range of a closed form."""


class ParityUnsupported(GbeError, ValueError):
    """Closed form requested for an N parity it does not cover."""


class MethodUnsupported(GbeError, ValueError):
    """Closed-form method not available for the requested ensemble."""


class UnreducibleRationalPart(GbeError):
    """A rational resolvent term has a pole away from the spectral edges."""


class QuadratureNonConvergence(GbeError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class InsufficientSmoothness(GbeError, ValueError):
    """A linear statistic does not supply enough derivatives."""


class InvalidParameter(GbeError, ValueError):
    """Invalid sampler parameter."""
