"""Exception types raised by the library."""


class TropmechError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(TropmechError, ValueError):
    pass


class ShapeMismatch(TropmechError, ValueError):
    pass


class NonSquare(TropmechError, ValueError):
    pass


class InvalidOutcome(TropmechError, ValueError):
    """An outcome value outside the 1-based range ``1..m``."""


class NonpositiveAlpha(TropmechError, ValueError):
    pass


class TooLarge(TropmechError):
    """An enumeration would exceed its configured cap."""


class UnassignedVariable(TropmechError, KeyError):
    pass


class UnknownVariable(TropmechError, ValueError):
    pass


class IndexOutOfRange(TropmechError, IndexError):
    pass


class NotIC(TropmechError, ValueError):
    """An outcome function that was required to be incentive compatible is not."""


class EmptyGrid(TropmechError, ValueError):
    pass


class InputError(TropmechError, ValueError):
    """Malformed input document; the message names the offending field."""
