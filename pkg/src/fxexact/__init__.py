"""Exact, explicitly rounded ISO 18037-style fixed-point arithmetic,
with a gcc-emulation profile for differential testing."""

from .convert import (IeeeFloat, convert_fixed, from_ieee, from_integer, parse_decimal,
                      to_ieee, to_integer)
from .emulation import (CORRECT, GCC, BehaviorProfile, common_format, emulated_convert,
                        emulated_mul, emulated_parse)
from .errors import (DivideByZeroError, FixedOverflowError, FixedPointError, NonFiniteError,
                     ParseError, UnsupportedPromotionError)
from .exact import (ExactValue, OverflowPolicy, RoundingMode, RoundingPolicy,
                    round_error_bound_check, round_to, to_decimal_string)
from .formats import (NAMED_FORMATS, S0_15, S0_31, S8_7, S16_15, S32_30, S32_31, U0_16, U0_32,
                      U8_8, U16_16, FixedFormat, FixedValue, epsilon, min_max, value_of)
from .ops import add, compare, div, mul, neg, sub

__version__ = "0.1.0"
