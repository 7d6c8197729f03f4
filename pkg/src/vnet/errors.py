"""Exception types shared across the package."""


class VnetError(Exception):
    """Base class for all package specific errors."""


# Division by the zero element reuses the builtin so callers can catch
# either name.
DivisionByZero = ZeroDivisionError


class MixedFieldLevels(VnetError, TypeError):
    """Operands live at different levels of the field tower."""


class NotPrime(VnetError, ValueError):
    """A parameter that must be prime (or a prime power) is not."""


class SizeCap(VnetError):
    """An enumeration or table would exceed the configured size cap."""


class AllZero(VnetError, ValueError):
    """A vector or tuple that must have a nonzero entry is all zero."""


class DegreeViolation(VnetError, ValueError):
    """A polynomial violates a degree constraint."""


class DegreeTooSmall(VnetError, ValueError):
    """The extension degree m is below the minimum for this construction."""


class DimensionTooLarge(VnetError, ValueError):
    """The dimension s exceeds what this construction supports."""


class DimensionTooSmall(VnetError, ValueError):
    """The dimension s is below the minimum for this construction."""


class DimensionCap(VnetError):
    """The dimension exceeds a hard safety cap for an exact computation."""
