"""Conversions between fixed-point formats, decimal literals, IEEE floats
and integers, each routed through the exact core with explicit rounding."""

from __future__ import annotations

import math
import re
import struct
from dataclasses import dataclass
from fractions import Fraction

from .errors import NonFiniteError, ParseError
from .exact import OverflowPolicy, RoundingMode, fit_raw, round_integer, round_to
from .formats import FixedFormat, FixedValue

NEAREST = RoundingMode.NEAREST_EVEN
SAT = OverflowPolicy.SATURATE

_DECIMAL_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def decimal_value(text: str) -> Fraction:
    """Exact rational value of a decimal literal such as ``-2.288818359375E-5``."""
    text = text.strip()
    if not _DECIMAL_RE.match(text):
        raise ParseError(f"malformed decimal literal {text!r}")
    return Fraction(text)


def parse_decimal(text: str, dst: FixedFormat,
                  mode: RoundingMode = NEAREST, policy: OverflowPolicy = SAT) -> FixedValue:
    return round_to(decimal_value(text), dst, mode, policy)


def convert_fixed(v: FixedValue, dst: FixedFormat,
                  mode: RoundingMode = NEAREST, policy: OverflowPolicy = SAT) -> FixedValue:
    return round_to(v.value(), dst, mode, policy)


# (total bits, exponent bits, significand precision incl. hidden bit, struct code)
_IEEE = {32: (32, 8, 24, ">I", ">f"), 64: (64, 11, 53, ">Q", ">d")}


@dataclass(frozen=True)
class IeeeFloat:
    """An IEEE 754 binary32/binary64 value held as its exact bit pattern."""

    width: int
    bits: int

    def __post_init__(self):
        if self.width not in _IEEE:
            raise ValueError(f"unsupported IEEE width {self.width}")
        if not 0 <= self.bits < (1 << self.width):
            raise ValueError(f"bit pattern {self.bits:#x} wider than {self.width} bits")

    @classmethod
    def from_float(cls, x: float, width: int = 64) -> IeeeFloat:
        """Encode a Python float; binary32 encoding rounds to nearest-even."""
        _, _, _, int_code, float_code = _IEEE[width]
        return cls(width, struct.unpack(int_code, struct.pack(float_code, x))[0])

    def to_float(self) -> float:
        _, _, _, int_code, float_code = _IEEE[self.width]
        return struct.unpack(float_code, struct.pack(int_code, self.bits))[0]

    def is_finite(self) -> bool:
        return math.isfinite(self.to_float())

    def value(self) -> Fraction:
        f = self.to_float()
        if not math.isfinite(f):
            raise NonFiniteError(f"binary{self.width} {self.bits:#x} is not finite")
        return Fraction(f)

    def __str__(self) -> str:
        return f"f{self.width}:{self.bits:#0{self.width // 4 + 2}x}"


def from_ieee(f: IeeeFloat, dst: FixedFormat,
              mode: RoundingMode = NEAREST, policy: OverflowPolicy = SAT) -> FixedValue:
    return round_to(f.value(), dst, mode, policy)


def round_to_ieee(x: Fraction, width: int, mode: RoundingMode = NEAREST) -> IeeeFloat:
    """Correctly round an exact rational into binary32/binary64."""
    _, exp_bits, precision, _, _ = _IEEE[width]
    x = Fraction(x)
    if x == 0:
        return IeeeFloat(width, 0)
    emax = (1 << (exp_bits - 1)) - 1
    emin = 1 - emax
    num, den = x.numerator, x.denominator
    # floor(log2|x|), then correct the estimate from bit lengths
    e = abs(num).bit_length() - den.bit_length()
    if Fraction(abs(num), den) < Fraction(2) ** e:
        e -= 1
    quantum_exp = max(e, emin) - (precision - 1)
    if quantum_exp >= 0:
        m = round_integer(num, den << quantum_exp, mode)
    else:
        m = round_integer(num << -quantum_exp, den, mode)
    result = Fraction(m) * Fraction(2) ** quantum_exp
    if abs(result) >= Fraction(2) ** (emax + 1):
        # past the largest finite value: directed modes stop at it, others go to inf
        largest = (2 - Fraction(2) ** (1 - precision)) * Fraction(2) ** emax
        toward_zero = mode is RoundingMode.TOWARD_ZERO \
            or (mode is RoundingMode.DOWN and x > 0) or (mode is RoundingMode.UP and x < 0)
        magnitude = float(largest) if toward_zero else math.inf
        return IeeeFloat.from_float(math.copysign(magnitude, x), width)
    # result has at most `precision` significant bits, so float() is exact
    return IeeeFloat.from_float(float(result), width)


def to_ieee(v: FixedValue, width: int = 64, mode: RoundingMode = NEAREST) -> IeeeFloat:
    return round_to_ieee(v.value(), width, mode)


def to_integer(v: FixedValue) -> int:
    """Fixed to integer conversion; always rounds toward zero."""
    return round_integer(v.raw, 1 << v.format.frac_bits, RoundingMode.TOWARD_ZERO)


def from_integer(i: int, dst: FixedFormat, policy: OverflowPolicy = SAT) -> FixedValue:
    return FixedValue(fit_raw(i << dst.frac_bits, dst, policy), dst)
