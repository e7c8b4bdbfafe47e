"""Exception types shared across the package."""


class EprBellError(Exception):
    """Base class for all package-specific errors."""


class InvalidDirectionError(EprBellError, ValueError):
    """A supplied 3-vector is too far from unit norm."""


class InvalidGeometryError(EprBellError, ValueError):
    """An angle triple cannot be realized by coplanar unit vectors."""


class InvalidModelError(EprBellError, ValueError):
    """A local hidden-variable model returned conditional means outside [-1, 1]."""


class InvalidInputError(EprBellError, ValueError):
    """An argument violates a documented precondition."""


class InconsistentMarginalsError(EprBellError, ValueError):
    """Pair tables sharing a variable disagree on its single-variable marginal."""


class QuasiDistributionError(EprBellError, ValueError):
    """An operation requiring a valid distribution was given one with negative entries."""


class UndefinedConditionalError(EprBellError, ValueError):
    """Conditioning event has zero probability."""
