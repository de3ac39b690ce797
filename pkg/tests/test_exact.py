from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fxexact.errors import FixedOverflowError, ParseError
from fxexact.exact import (OverflowPolicy, RoundingMode, RoundingPolicy, is_representable,
                           round_error_bound_check, round_integer, round_to, to_decimal_string)
from fxexact.formats import S16_15, S0_31, FixedFormat

RN, RA = RoundingMode.NEAREST_EVEN, RoundingMode.NEAREST_AWAY
DOWN, UP, RZ = RoundingMode.DOWN, RoundingMode.UP, RoundingMode.TOWARD_ZERO
SAT, WRAP, ERR = OverflowPolicy.SATURATE, OverflowPolicy.WRAP, OverflowPolicy.ERROR
EPS = Fraction(1, 2**15)


def test_tokens():
    assert [str(m) for m in RoundingMode] == ["down", "up", "tozero", "nearest-even", "nearest-away"]
    assert [str(p) for p in OverflowPolicy] == ["sat", "wrap", "err"]
    assert RoundingMode.parse("Nearest-Even") is RN
    assert OverflowPolicy.parse("wrap") is WRAP
    with pytest.raises(ParseError):
        RoundingMode.parse("nearest")
    with pytest.raises(ParseError):
        OverflowPolicy.parse("clamp")


def test_round_004():
    x = Fraction("0.04")
    assert x * 2**15 == Fraction("1310.72")
    assert round_to(x, S16_15, RN).raw == 1311
    assert round_to(x, S16_15, DOWN).raw == 1310


@pytest.mark.parametrize("mode", list(RoundingMode))
def test_exact_is_identity(mode):
    assert round_to(Fraction(3, 2), S16_15, mode).raw == 49152


def test_three_quarter_epsilon():
    x = Fraction(1, 2**16) + Fraction(1, 2**17)
    assert x == Fraction(3, 4) * EPS
    assert round_to(x, S16_15, RN).raw == 1
    assert round_to(x, S16_15, DOWN).raw == 0


def test_overflow_policies():
    assert round_to(Fraction(2**16), S16_15, RN, SAT).raw == S16_15.raw_max
    assert round_to(Fraction(-2**17), S16_15, RN, SAT).raw == S16_15.raw_min
    assert round_to(Fraction(2**16), S16_15, RN, WRAP).raw == S16_15.raw_min
    with pytest.raises(FixedOverflowError):
        round_to(Fraction(2**16), S16_15, RN, ERR)
    with pytest.raises(OverflowError):
        round_to(Fraction(-1), FixedFormat(False, 0, 8), DOWN, ERR)


def test_error_bound_check():
    x = Fraction("0.04")
    assert round_error_bound_check(x, S16_15, RN) <= Fraction(1, 2**16)
    assert round_error_bound_check(x, S16_15, DOWN) == x - Fraction("0.03997802734375")
    assert round_error_bound_check(Fraction(3, 2), S16_15, UP) == 0


@pytest.mark.parametrize("num,den,expected", [
    # num/den -> down, up, tozero, nearest-even, nearest-away
    (5, 2, (2, 3, 2, 2, 3)),
    (7, 2, (3, 4, 3, 4, 4)),
    (-5, 2, (-3, -2, -2, -2, -3)),
    (-7, 2, (-4, -3, -3, -4, -4)),
    (1310 * 25 + 18, 25, (1310, 1311, 1310, 1311, 1311)),
    (-1, 3, (-1, 0, 0, 0, 0)),
    (6, 3, (2, 2, 2, 2, 2)),
])
def test_round_integer_table(num, den, expected):
    assert tuple(round_integer(num, den, m) for m in RoundingMode) == expected


def test_rounding_policy():
    assert RoundingPolicy.full_precision(True) == RoundingPolicy(RN, RN)
    assert RoundingPolicy.full_precision(False) == RoundingPolicy(DOWN, DOWN)


def test_decimal_rendering():
    assert to_decimal_string(Fraction(1311, 2**15)) == "0.040008544921875"
    assert to_decimal_string(Fraction(-3, 2)) == "-1.5"
    assert to_decimal_string(Fraction(0)) == "0"
    assert to_decimal_string(Fraction(1, 2**32)) == "0.00000000023283064365386962890625"
    assert to_decimal_string(Fraction(1, 25)) == "0.04"
    with pytest.raises(ValueError):
        to_decimal_string(Fraction(1, 3))


def test_is_representable():
    assert is_representable(Fraction(3, 2), S16_15)
    assert not is_representable(Fraction(1, 2**16), S16_15)
    assert not is_representable(Fraction(1), S0_31)


fmt8 = st.sampled_from([FixedFormat.parse(f) for f in ("s0.7", "u0.8", "s4.3", "s16.15", "u0.32")])
rationals = st.builds(Fraction, st.integers(-2**40, 2**40), st.integers(1, 2**36))


def in_range(x, fmt):
    lo, hi = fmt.min_max()
    return lo <= x <= hi


@given(rationals, fmt8)
def test_directed_modes_bracket(x, fmt):
    if not in_range(x, fmt):
        return
    down = round_to(x, fmt, DOWN).value()
    up = round_to(x, fmt, UP).value()
    eps = fmt.epsilon()
    assert down <= x <= up
    assert up - down == (0 if down == x else eps)
    assert round_to(x, fmt, RZ).value() == (down if x >= 0 else up)


@given(rationals, fmt8, st.sampled_from([RN, RA]))
def test_nearest_within_half_ulp(x, fmt, mode):
    if not in_range(x, fmt):
        return
    assert abs(round_to(x, fmt, mode).value() - x) <= fmt.epsilon() / 2


@given(rationals, rationals, fmt8, st.sampled_from(list(RoundingMode)))
def test_monotone_under_saturation(x, y, fmt, mode):
    if x > y:
        x, y = y, x
    assert round_to(x, fmt, mode, SAT).raw <= round_to(y, fmt, mode, SAT).raw


@given(rationals, fmt8, st.sampled_from(list(RoundingMode)))
def test_wrap_is_modular(x, fmt, mode):
    unbounded = round_integer(x.numerator << fmt.frac_bits, x.denominator, mode)
    wrapped = round_to(x, fmt, mode, WRAP).raw
    assert fmt.contains_raw(wrapped)
    assert (wrapped - unbounded) % (1 << fmt.storage_bits) == 0


@given(st.booleans(), st.integers(0, 20), st.integers(1, 20), st.integers(1, 20), st.data())
def test_truncation_is_round_down(signed, int_bits, frac, drop, data):
    src = FixedFormat(signed, int_bits, frac + drop)
    dst = FixedFormat(signed, int_bits, frac)
    raw = data.draw(st.integers(src.raw_min, src.raw_max))
    assert raw >> drop == round_to(src(raw).value(), dst, DOWN).raw
