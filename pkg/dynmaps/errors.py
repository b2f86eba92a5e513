"""Exception types raised by the dynmaps library."""


class DynMapError(Exception):
    """Base class for every error raised by dynmaps."""


class DimensionMismatch(DynMapError, ValueError):
    pass


class NotHermitian(DynMapError, ValueError):
    pass


class NotPSD(DynMapError, ValueError):
    pass


class InvalidTrace(DynMapError, ValueError):
    pass


class BasisNotOrthonormal(DynMapError, ValueError):
    pass


class InvalidSpec(DynMapError, ValueError):
    """Scenario parameters that do not describe a valid initial state."""


class NotCompletelyPositive(DynMapError, ValueError):
    """Raised when a Kraus form is requested for an NCP map."""


class NumericalFailure(DynMapError, ArithmeticError):
    """A decomposition failed or missed its reconstruction tolerance."""
