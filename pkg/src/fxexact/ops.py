"""Arithmetic on fixed-point values of arbitrary, possibly different, formats.

Each operation forms the mathematically exact result from the operands'
values and rounds it once into an explicit destination format. Operands
are never converted to a shared format first.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivideByZeroError
from .exact import OverflowPolicy, RoundingMode, round_to
from .formats import FixedFormat, FixedValue

NEAREST = RoundingMode.NEAREST_EVEN
SAT = OverflowPolicy.SATURATE


def add(lhs: FixedValue, rhs: FixedValue, dst: FixedFormat,
        mode: RoundingMode = NEAREST, policy: OverflowPolicy = SAT) -> FixedValue:
    return round_to(lhs.value() + rhs.value(), dst, mode, policy)


def sub(lhs: FixedValue, rhs: FixedValue, dst: FixedFormat,
        mode: RoundingMode = NEAREST, policy: OverflowPolicy = SAT) -> FixedValue:
    return round_to(lhs.value() - rhs.value(), dst, mode, policy)


def neg(v: FixedValue, dst: FixedFormat,
        mode: RoundingMode = NEAREST, policy: OverflowPolicy = SAT) -> FixedValue:
    # -min of a signed format is one ulp past max; saturates under SAT
    return round_to(-v.value(), dst, mode, policy)


def exact_product(lhs: FixedValue, rhs: FixedValue) -> Fraction:
    """Product of the raws at scale ``2**-(Y_lhs + Y_rhs)``; never loses bits."""
    return Fraction(lhs.raw * rhs.raw, 1 << (lhs.format.frac_bits + rhs.format.frac_bits))


def mul(lhs: FixedValue, rhs: FixedValue, dst: FixedFormat,
        mode: RoundingMode = NEAREST, policy: OverflowPolicy = SAT) -> FixedValue:
    return round_to(exact_product(lhs, rhs), dst, mode, policy)


def div(lhs: FixedValue, rhs: FixedValue, dst: FixedFormat,
        mode: RoundingMode = NEAREST, policy: OverflowPolicy = SAT) -> FixedValue:
    if rhs.raw == 0:
        raise DivideByZeroError(f"division of {lhs} by zero")
    return round_to(lhs.value() / rhs.value(), dst, mode, policy)


def compare(lhs: FixedValue, rhs: FixedValue) -> int:
    """Exact three-way comparison: -1, 0 or 1."""
    a, b = lhs.value(), rhs.value()
    return (a > b) - (a < b)


BINARY_OPS = {"add": add, "sub": sub, "mul": mul, "div": div}
