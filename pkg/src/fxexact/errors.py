"""Exception types shared across the package."""


class FixedPointError(Exception):
    """Base class for errors raised by fxexact."""


class FixedOverflowError(FixedPointError, OverflowError):
    """A rounded result does not fit the destination format (policy ``err``)."""


class DivideByZeroError(FixedPointError, ZeroDivisionError):
    pass


class ParseError(FixedPointError, ValueError):
    """Malformed format name, literal, token or expression."""

    def __init__(self, message, span=None):
        super().__init__(message)
        self.span = span


class NonFiniteError(FixedPointError, ValueError):
    """NaN or infinity cannot be converted to fixed point."""


class UnsupportedPromotionError(FixedPointError, ValueError):
    """No common format fits in 64 bits of storage."""
