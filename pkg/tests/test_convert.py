import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from brute import brute_round
from fxexact import convert
from fxexact.convert import IeeeFloat
from fxexact.errors import FixedOverflowError, NonFiniteError, ParseError
from fxexact.exact import OverflowPolicy, RoundingMode, to_decimal_string
from fxexact.formats import NAMED_FORMATS, S0_31, S16_15, S32_31, S8_7, U0_32, FixedFormat

RN, DOWN, UP = RoundingMode.NEAREST_EVEN, RoundingMode.DOWN, RoundingMode.UP
SAT, ERR = OverflowPolicy.SATURATE, OverflowPolicy.ERROR
ISO_FORMATS = [NAMED_FORMATS[n] for n in
                 ("s16.15", "u16.16", "s0.31", "u0.32", "s8.7", "u8.8", "s0.15", "u0.16")]
F32_004 = IeeeFloat(32, 0x3D23D70A)


@pytest.mark.parametrize("fmt,nearest,down,nearest_digits,down_digits", [
    (S16_15, 1311, 1310, "0.040008544921875", "0.03997802734375"),
    (S0_31, 85899346, 85899345, "0.04000000003725", "0.0399999995715"),
    (U0_32, 171798692, 171798691, "0.04000000003725", "0.0399999998044"),
])
def test_parse_004(fmt, nearest, down, nearest_digits, down_digits):
    rn = convert.parse_decimal("0.04", fmt, RN)
    rd = convert.parse_decimal("0.04", fmt, DOWN)
    assert (rn.raw, rd.raw) == (nearest, down)
    assert to_decimal_string(rn.value()).startswith(nearest_digits)
    assert to_decimal_string(rd.value()).startswith(down_digits)


@pytest.mark.parametrize("mode", list(RoundingMode))
def test_parse_exact(mode):
    assert convert.parse_decimal("1.5", S16_15, mode).raw == 49152
    assert convert.parse_decimal("2.288818359375E-5", S0_31, mode).raw == 3 << 14
    assert convert.parse_decimal("-1", S0_31, mode).raw == -(2**31)


def test_parse_long_literal_is_exact():
    # one digit past the tie point decides the direction
    tie = "0.0000152587890625"  # 2^-16, half an ulp of s16.15
    assert convert.parse_decimal(tie, S16_15, RN).raw == 0
    assert convert.parse_decimal(tie + "0000000000000000000001", S16_15, RN).raw == 1


@pytest.mark.parametrize("text", ["", "1..2", "0x10", "1e", "abc", "1/3", "--1", "1.5k"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        convert.parse_decimal(text, S16_15)


def test_convert_three_quarter_eps():
    v = S0_31(3 << 14)
    assert convert.convert_fixed(v, S16_15, RN).raw == 1
    assert convert.convert_fixed(v, S16_15, DOWN).raw == 0


def test_convert_out_of_range():
    v = S16_15(49152)
    assert convert.convert_fixed(v, S0_31, RN, SAT).raw == S0_31.raw_max
    with pytest.raises(FixedOverflowError):
        convert.convert_fixed(v, S0_31, RN, ERR)


@given(st.integers(S16_15.raw_min, S16_15.raw_max), st.sampled_from(list(RoundingMode)))
def test_widening_is_exact_and_round_trips(raw, mode):
    v = S16_15(raw)
    wide = convert.convert_fixed(v, S32_31, mode, ERR)
    assert wide.value() == v.value()
    assert convert.convert_fixed(wide, S16_15, mode, ERR) == v


def test_ieee_decode():
    # significand 0xa3d70a, exponent 122 - 127 - 23
    assert F32_004.value() == Fraction(0xA3D70A, 2**28)
    assert to_decimal_string(F32_004.value()).startswith("0.03999999910593")
    assert IeeeFloat.from_float(0.04, 32) == F32_004
    with pytest.raises(NonFiniteError):
        IeeeFloat(32, 0x7FC00000).value()
    with pytest.raises(NonFiniteError):
        convert.from_ieee(IeeeFloat(64, 0xFFF0000000000000), S16_15)
    assert not IeeeFloat(32, 0x7F800000).is_finite()
    assert str(F32_004) == "f32:0x3d23d70a"


def test_from_ieee():
    assert convert.from_ieee(F32_004, S16_15, RN).raw == 1311
    assert convert.from_ieee(F32_004, S16_15, DOWN).raw == 1310
    for mode in RoundingMode:
        assert convert.from_ieee(IeeeFloat.from_float(1.5, 32), S16_15, mode).raw == 49152


def test_from_ieee_tie():
    f = IeeeFloat.from_float(2.0 ** -17, 32)
    assert f.value() == Fraction(1, 2**17)
    # 2^-17 is a quarter ulp of s16.15; the actual tie is 2^-16
    assert brute_round(f.value(), S16_15, "nearest-even") == 0
    assert convert.from_ieee(f, S16_15, RN).raw == 0
    half = IeeeFloat.from_float(2.0 ** -16, 32)
    assert brute_round(half.value(), S16_15, "nearest-even") == 0
    assert brute_round(half.value(), S16_15, "nearest-away") == 1
    assert convert.from_ieee(half, S16_15, RN).raw == 0
    assert convert.from_ieee(half, S16_15, RoundingMode.NEAREST_AWAY).raw == 1


def _binary32_neighbours(x):
    """The two binary32 values around 0 < x < 2 by stepping the bit pattern."""
    bits = IeeeFloat.from_float(float(x), 32).bits
    around = [IeeeFloat(32, b).value() for b in (bits - 1, bits, bits + 1)]
    return max(v for v in around if v <= x), min(v for v in around if v >= x)


def test_to_ieee():
    assert convert.to_ieee(S16_15(1311), 64).to_float() == 0.040008544921875
    x = U0_32(2**32 - 1).value()
    below, above = _binary32_neighbours(x)
    assert (below, above) == (1 - Fraction(1, 2**24), 1)
    assert above - x < x - below
    assert convert.to_ieee(U0_32(2**32 - 1), 32, RN).bits == 0x3F800000
    assert convert.to_ieee(U0_32(2**32 - 1), 32, DOWN).value() == below
    assert convert.to_ieee(S16_15(0), 32).bits == 0
    assert convert.to_ieee(S16_15(-49152), 32).to_float() == -1.5


@given(st.sampled_from(ISO_FORMATS), st.data(), st.sampled_from(list(RoundingMode)))
def test_binary64_round_trip(fmt, data, mode):
    v = fmt(data.draw(st.integers(fmt.raw_min, fmt.raw_max)))
    f = convert.to_ieee(v, 64, mode)
    assert f.value() == v.value()
    assert convert.from_ieee(f, fmt, mode, ERR) == v


@given(st.integers(-(2**62), 2**62), st.sampled_from(list(RoundingMode)))
def test_to_ieee_brackets(raw, mode):
    v = S32_31(raw)
    x = v.value()
    for width in (32, 64):
        got = convert.to_ieee(v, width, mode).value()
        ref = Fraction(float(x)) if width == 64 else Fraction(IeeeFloat.from_float(float(x), 32).value())
        if mode is RN and width == 64:
            assert got == ref  # float(Fraction) is correctly rounded
        if mode is DOWN:
            assert got <= x
        if mode is UP:
            assert got >= x


def test_to_ieee_huge_values():
    big = Fraction(2) ** 200
    assert convert.round_to_ieee(big, 32, RN).to_float() == math.inf
    assert convert.round_to_ieee(big, 32, DOWN).bits == 0x7F7FFFFF
    assert convert.round_to_ieee(-big, 32, DOWN).to_float() == -math.inf
    assert convert.round_to_ieee(Fraction(1, 2**149), 32, RN).bits == 1


@pytest.mark.parametrize("raw,expected", [(49152, 1), (-49152, -1), (S16_15.raw_max, 65535),
                                          (S16_15.raw_min, -65536), (-1, 0)])
def test_to_integer(raw, expected):
    assert convert.to_integer(S16_15(raw)) == expected


@given(st.integers(S8_7.raw_min + 1, S8_7.raw_max))
def test_to_integer_symmetry(raw):
    assert convert.to_integer(S8_7(-raw)) == -convert.to_integer(S8_7(raw))


def test_from_integer():
    assert convert.from_integer(65535, S16_15).raw == 65535 << 15
    assert convert.from_integer(0, S16_15).raw == 0
    assert convert.from_integer(65536, S16_15).raw == S16_15.raw_max
    with pytest.raises(FixedOverflowError):
        convert.from_integer(65536, S16_15, ERR)
    assert convert.from_integer(-65536, S16_15).value() == -65536


literals = st.builds(
    lambda sign, whole, frac, exp: f"{sign}{whole}.{frac}" + (f"e{exp}" if exp is not None else ""),
    st.sampled_from(["", "-", "+"]), st.integers(0, 70000),
    st.text("0123456789", min_size=1, max_size=30), st.none() | st.integers(-6, 2))


@given(literals, st.sampled_from(ISO_FORMATS))
def test_parse_error_bounds(text, fmt):
    x = Fraction(text)
    lo, hi = fmt.min_max()
    if not lo <= x <= hi:
        return
    eps = fmt.epsilon()
    rn = convert.parse_decimal(text, fmt, RN).value() - x
    rd = convert.parse_decimal(text, fmt, DOWN).value() - x
    ru = convert.parse_decimal(text, fmt, UP).value() - x
    assert abs(rn) <= eps / 2
    assert -eps < rd <= 0
    assert 0 <= ru < eps
