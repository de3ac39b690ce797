"""Behavioral model of gcc's fixed-point semantics on 32-bit ARM.

Observed behavior being modeled:

* constants and run-time conversions are truncated (round-down);
* mixed-format operands are first converted, by truncation, to a common
  internal format; an unsigned operand promoted to a signed format gives up
  its lowest fraction bit;
* the full-precision result of the operation is truncated to the common
  format and again to the destination.

Only two promotion pairs are documented, (s16.15, u0.32) -> s32.31 and
(s16.15, u0.16) -> s16.15. :func:`common_format` extends them to a total
rule so the fuzzer can drive every format pair; results for other pairs,
and for emulated addition, subtraction and division, are an extrapolation.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ops
from .convert import IeeeFloat, decimal_value
from .errors import ParseError, UnsupportedPromotionError
from .exact import OverflowPolicy, RoundingMode, round_to
from .formats import MAX_STORAGE_BITS, FixedFormat, FixedValue

DOWN = RoundingMode.DOWN
SAT = OverflowPolicy.SATURATE

# gcc's fixed-point machine modes, narrowest first
_SIGNED_LADDER = [FixedFormat(True, x, y) for x, y in
                  [(0, 7), (0, 15), (8, 7), (0, 31), (16, 15), (0, 63), (32, 31)]]
_UNSIGNED_LADDER = [FixedFormat(False, x, y) for x, y in
                    [(0, 8), (0, 16), (8, 8), (0, 32), (16, 16), (0, 64), (32, 32)]]


def _signed_bits(fmt: FixedFormat) -> tuple[int, int]:
    """(int_bits, frac_bits) of the signed format an operand is promoted through."""
    if fmt.signed:
        return fmt.int_bits, fmt.frac_bits
    # same storage width: the sign bit is taken from the fraction
    return fmt.int_bits, max(fmt.frac_bits - 1, 0)


def common_format(a: FixedFormat, b: FixedFormat) -> FixedFormat:
    """Internal format both operands are converted to before a mixed operation."""
    signed = a.signed or b.signed
    if signed:
        (ia, fa), (ib, fb) = _signed_bits(a), _signed_bits(b)
    else:
        (ia, fa), (ib, fb) = (a.int_bits, a.frac_bits), (b.int_bits, b.frac_bits)
    need_int, need_frac = max(ia, ib), max(fa, fb)
    for fmt in _SIGNED_LADDER if signed else _UNSIGNED_LADDER:
        if fmt.int_bits >= need_int and fmt.frac_bits >= need_frac:
            return fmt
    # wider than every machine mode: keep the integer bits, truncate the fraction
    frac = MAX_STORAGE_BITS - need_int - (1 if signed else 0)
    if frac < 0:
        raise UnsupportedPromotionError(f"no 64-bit common format for {a} and {b}")
    return FixedFormat(signed, need_int, min(frac, need_frac))


def promote(v: FixedValue, fmt: FixedFormat, policy: OverflowPolicy = SAT) -> FixedValue:
    return round_to(v.value(), fmt, DOWN, policy)


def emulated_binary(op: str, lhs: FixedValue, rhs: FixedValue, dst: FixedFormat,
                    policy: OverflowPolicy = SAT) -> FixedValue:
    common = common_format(lhs.format, rhs.format)
    a, b = promote(lhs, common, policy), promote(rhs, common, policy)
    result = ops.BINARY_OPS[op](a, b, common, DOWN, policy)
    return round_to(result.value(), dst, DOWN, policy)


def emulated_mul(lhs: FixedValue, rhs: FixedValue, dst: FixedFormat,
                 policy: OverflowPolicy = SAT) -> FixedValue:
    return emulated_binary("mul", lhs, rhs, dst, policy)


def emulated_neg(v: FixedValue, dst: FixedFormat, policy: OverflowPolicy = SAT) -> FixedValue:
    result = ops.neg(v, v.format, DOWN, policy)
    return round_to(result.value(), dst, DOWN, policy)


def emulated_convert(v: FixedValue, dst: FixedFormat, policy: OverflowPolicy = SAT) -> FixedValue:
    return round_to(v.value(), dst, DOWN, policy)


def emulated_parse(text: str, dst: FixedFormat, policy: OverflowPolicy = SAT) -> FixedValue:
    return round_to(decimal_value(text), dst, DOWN, policy)


@dataclass(frozen=True)
class BehaviorProfile:
    name: str
    constant_rounding: RoundingMode
    conversion_rounding: RoundingMode
    result_rounding: RoundingMode
    promotion: str  # "none" or "common-format"

    @classmethod
    def correct(cls, mode: RoundingMode = RoundingMode.NEAREST_EVEN,
                conversion: RoundingMode | None = None,
                constant: RoundingMode | None = None) -> BehaviorProfile:
        return cls("correct", constant or mode, conversion or mode, mode, "none")

    @classmethod
    def named(cls, token: str, mode: RoundingMode = RoundingMode.NEAREST_EVEN) -> BehaviorProfile:
        token = token.strip().lower()
        if token == "correct":
            return cls.correct(mode)
        if token in ("gcc", "gcc-emulation"):
            return GCC
        raise ParseError(f"unknown profile {token!r}")

    @property
    def token(self) -> str:
        return "gcc" if self.promotion == "common-format" else "correct"

    def parse(self, text: str, dst: FixedFormat, policy: OverflowPolicy = SAT) -> FixedValue:
        return round_to(decimal_value(text), dst, self.constant_rounding, policy)

    def convert(self, v: FixedValue, dst: FixedFormat, policy: OverflowPolicy = SAT) -> FixedValue:
        return round_to(v.value(), dst, self.conversion_rounding, policy)

    def from_ieee(self, f: IeeeFloat, dst: FixedFormat,
                  policy: OverflowPolicy = SAT) -> FixedValue:
        return round_to(f.value(), dst, self.conversion_rounding, policy)

    def binary(self, op: str, lhs: FixedValue, rhs: FixedValue, dst: FixedFormat,
               policy: OverflowPolicy = SAT) -> FixedValue:
        if self.promotion == "common-format":
            return emulated_binary(op, lhs, rhs, dst, policy)
        return ops.BINARY_OPS[op](lhs, rhs, dst, self.result_rounding, policy)

    def neg(self, v: FixedValue, dst: FixedFormat, policy: OverflowPolicy = SAT) -> FixedValue:
        if self.promotion == "common-format":
            return emulated_neg(v, dst, policy)
        return ops.neg(v, dst, self.result_rounding, policy)


CORRECT = BehaviorProfile.correct()
GCC = BehaviorProfile("gcc-emulation", DOWN, DOWN, DOWN, "common-format")
