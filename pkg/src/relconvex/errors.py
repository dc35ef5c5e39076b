"""Exception taxonomy shared across the package."""


class InputError(ValueError):
    """Malformed or inconsistent input data."""


class DimensionMismatch(InputError):
    """Operands live in different ambient dimensions."""


class UnsupportedDimension(InputError):
    """Operation requested outside its supported dimension range."""


class ResourceLimitError(RuntimeError):
    """Instance exceeds a configured enumeration bound."""


class ConstructionError(RuntimeError):
    """A geometric construction step failed to produce a valid object."""
