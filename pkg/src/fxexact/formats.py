"""Fixed-point format descriptors and the raw-value container.

A format ``{s,u}X.Y`` has an optional sign bit, ``X`` integer bits and ``Y``
fraction bits. A value is stored as a two's-complement integer ``raw`` and
represents ``raw * 2**-Y`` exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError

MAX_STORAGE_BITS = 64

_FORMAT_RE = re.compile(r"^([su])(\d+)\.(\d+)$", re.IGNORECASE)


@dataclass(frozen=True, order=True)
class FixedFormat:
    signed: bool
    int_bits: int
    frac_bits: int

    def __post_init__(self):
        if self.int_bits < 0 or self.frac_bits < 0:
            raise ValueError(f"negative bit count in {self}")
        if not 1 <= self.storage_bits <= MAX_STORAGE_BITS:
            raise ValueError(
                f"{self} needs {self.storage_bits} storage bits, "
                f"supported range is 1..{MAX_STORAGE_BITS}"
            )

    @classmethod
    def parse(cls, text: str) -> FixedFormat:
        m = _FORMAT_RE.match(text.strip())
        if m is None:
            raise ParseError(f"not a fixed-point format: {text!r}")
        try:
            return cls(m.group(1).lower() == "s", int(m.group(2)), int(m.group(3)))
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    def __str__(self) -> str:
        return f"{'s' if self.signed else 'u'}{self.int_bits}.{self.frac_bits}"

    @property
    def storage_bits(self) -> int:
        return self.int_bits + self.frac_bits + (1 if self.signed else 0)

    @property
    def raw_min(self) -> int:
        return -(1 << (self.int_bits + self.frac_bits)) if self.signed else 0

    @property
    def raw_max(self) -> int:
        return (1 << (self.int_bits + self.frac_bits)) - 1

    def epsilon(self) -> Fraction:
        return Fraction(1, 1 << self.frac_bits)

    def min_max(self) -> tuple[Fraction, Fraction]:
        scale = 1 << self.frac_bits
        return Fraction(self.raw_min, scale), Fraction(self.raw_max, scale)

    def contains_raw(self, raw: int) -> bool:
        return self.raw_min <= raw <= self.raw_max

    def __call__(self, raw: int) -> FixedValue:
        """Shorthand: ``S16_15(49152)`` builds a FixedValue."""
        return FixedValue(raw, self)


@dataclass(frozen=True)
class FixedValue:
    raw: int
    format: FixedFormat

    def __post_init__(self):
        if not self.format.contains_raw(self.raw):
            raise ValueError(f"raw {self.raw} does not fit {self.format}")

    def value(self) -> Fraction:
        return Fraction(self.raw, 1 << self.format.frac_bits)

    def bits(self) -> int:
        """Two's-complement bit pattern of ``raw`` at the format's storage width."""
        return self.raw & ((1 << self.format.storage_bits) - 1)

    @classmethod
    def from_bits(cls, bits: int, fmt: FixedFormat) -> FixedValue:
        width = fmt.storage_bits
        if not 0 <= bits < (1 << width):
            raise ValueError(f"bit pattern {bits:#x} wider than {width} bits")
        if fmt.signed and bits >> (width - 1):
            bits -= 1 << width
        return cls(bits, fmt)

    def __str__(self) -> str:
        return f"{self.format}:{self.bits():#x}"


def epsilon(fmt: FixedFormat) -> Fraction:
    return fmt.epsilon()


def min_max(fmt: FixedFormat) -> tuple[Fraction, Fraction]:
    return fmt.min_max()


def value_of(v: FixedValue) -> Fraction:
    return v.value()


# Names used by the ISO 18037 types on 32-bit targets, plus the wide
# formats that show up as internal promotion/product formats.
S16_15 = FixedFormat(True, 16, 15)    # accum
U16_16 = FixedFormat(False, 16, 16)   # unsigned accum
S0_31 = FixedFormat(True, 0, 31)      # long fract
U0_32 = FixedFormat(False, 0, 32)     # unsigned long fract
S8_7 = FixedFormat(True, 8, 7)        # short accum
U8_8 = FixedFormat(False, 8, 8)       # unsigned short accum
S0_15 = FixedFormat(True, 0, 15)      # fract
U0_16 = FixedFormat(False, 0, 16)     # unsigned fract
S32_31 = FixedFormat(True, 32, 31)    # long long accum
S32_30 = FixedFormat(True, 32, 30)

NAMED_FORMATS = {
    str(f): f
    for f in (S16_15, U16_16, S0_31, U0_32, S8_7, U8_8, S0_15, U0_16, S32_31, S32_30)
}
