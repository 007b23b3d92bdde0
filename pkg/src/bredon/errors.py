"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Malformed or inconsistent input (duplicates, zero characters, bad syntax)."""


class DimensionMismatchError(InvalidInputError):
    """A vector or matrix has the wrong length for the operation."""


class ResourceError(RuntimeError):
    """Input exceeds a desk-scale cap; raised before any heavy work starts."""
