"""Exact rational intermediates and the rounding kernel.

Every operation in the package computes its result as an exact
:class:`fractions.Fraction` and then calls :func:`round_to` exactly once to
land it in the destination format.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import FixedOverflowError, ParseError
from .formats import FixedFormat, FixedValue

# Lowest-terms rational with positive denominator; dyadic and decimal
# inputs are always representable.
ExactValue = Fraction


class RoundingMode(enum.Enum):
    DOWN = "down"
    UP = "up"
    TOWARD_ZERO = "tozero"
    NEAREST_EVEN = "nearest-even"
    NEAREST_AWAY = "nearest-away"

    @classmethod
    def parse(cls, token: str) -> RoundingMode:
        try:
            return cls(token.strip().lower())
        except ValueError:
            raise ParseError(f"unknown rounding mode {token!r}") from None

    @property
    def directed(self) -> bool:
        return self in (RoundingMode.DOWN, RoundingMode.UP, RoundingMode.TOWARD_ZERO)

    def __str__(self) -> str:
        return self.value


class OverflowPolicy(enum.Enum):
    SATURATE = "sat"
    WRAP = "wrap"
    ERROR = "err"

    @classmethod
    def parse(cls, token: str) -> OverflowPolicy:
        try:
            return cls(token.strip().lower())
        except ValueError:
            raise ParseError(f"unknown overflow policy {token!r}") from None

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class RoundingPolicy:
    """Library-level stand-in for the FX_FULL_PRECISION pragma.

    ``result`` applies to arithmetic results, ``conversion`` to run-time
    conversions. Constants are always parsed with their own explicit mode.
    """

    result: RoundingMode = RoundingMode.NEAREST_EVEN
    conversion: RoundingMode = RoundingMode.NEAREST_EVEN

    @classmethod
    def full_precision(cls, on: bool = True) -> RoundingPolicy:
        if on:
            return cls(RoundingMode.NEAREST_EVEN, RoundingMode.NEAREST_EVEN)
        return cls(RoundingMode.DOWN, RoundingMode.DOWN)


def round_integer(num: int, den: int, mode: RoundingMode) -> int:
    """Round ``num/den`` (``den > 0``) to an integer under ``mode``."""
    q, r = divmod(num, den)
    if r == 0:
        return q
    # here q < num/den < q + 1
    if mode is RoundingMode.DOWN:
        return q
    if mode is RoundingMode.UP:
        return q + 1
    if mode is RoundingMode.TOWARD_ZERO:
        return q if num > 0 else q + 1
    twice = 2 * r
    if twice < den:
        return q
    if twice > den:
        return q + 1
    if mode is RoundingMode.NEAREST_EVEN:
        return q if q % 2 == 0 else q + 1
    return q + 1 if num > 0 else q


def fit_raw(raw: int, fmt: FixedFormat, policy: OverflowPolicy) -> int:
    """Apply the overflow policy to an unbounded raw integer."""
    if fmt.contains_raw(raw):
        return raw
    if policy is OverflowPolicy.SATURATE:
        return fmt.raw_max if raw > fmt.raw_max else fmt.raw_min
    if policy is OverflowPolicy.WRAP:
        width = fmt.storage_bits
        raw &= (1 << width) - 1
        if fmt.signed and raw >> (width - 1):
            raw -= 1 << width
        return raw
    raise FixedOverflowError(f"raw {raw} out of range for {fmt}")


def round_to(
    x: Fraction,
    fmt: FixedFormat,
    mode: RoundingMode = RoundingMode.NEAREST_EVEN,
    policy: OverflowPolicy = OverflowPolicy.SATURATE,
) -> FixedValue:
    x = Fraction(x)
    raw = round_integer(x.numerator << fmt.frac_bits, x.denominator, mode)
    return FixedValue(fit_raw(raw, fmt, policy), fmt)


def round_error_bound_check(
    x: Fraction, fmt: FixedFormat, mode: RoundingMode = RoundingMode.NEAREST_EVEN
) -> Fraction:
    """``|round_to(x) - x|``; only meaningful when the rounding did not overflow."""
    x = Fraction(x)
    return abs(round_to(x, fmt, mode, OverflowPolicy.ERROR).value() - x)


def is_representable(x: Fraction, fmt: FixedFormat) -> bool:
    scaled = Fraction(x) * (1 << fmt.frac_bits)
    return scaled.denominator == 1 and fmt.contains_raw(scaled.numerator)


def to_decimal_string(x: Fraction) -> str:
    """Full decimal expansion of a rational whose denominator is 2^a * 5^b."""
    x = Fraction(x)
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        raise ValueError(f"{x} has no terminating decimal expansion")
    digits = max(twos, fives)
    scaled = abs(x.numerator) * (10 ** digits // x.denominator)
    sign = "-" if x < 0 else ""
    if digits == 0:
        return f"{sign}{scaled}"
    whole, frac = divmod(scaled, 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d}"
