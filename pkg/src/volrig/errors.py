"""Exception types shared across the package."""


class VolrigError(Exception):
    pass


class DimensionError(VolrigError, ValueError):
    """Operands have incompatible shapes or grades."""


class ArgumentError(VolrigError, ValueError):
    """An argument violates a documented precondition."""


class DegeneracyError(VolrigError, ArithmeticError):
    """A configuration is not in the general position an operation needs."""
