"""Brute-force reference evaluator built only from Python integers.

Formats are plain ``(signed, int_bits, frac_bits)`` triples and results are
raw integers or the token ``"overflow"`` / ``"divzero"``. Nothing here is
shared with the rounding kernel in :mod:`fxexact.exact`, so agreement
between the two is meaningful.
"""


def raw_bounds(fmt):
    signed, int_bits, frac_bits = fmt
    magnitude = 2 ** (int_bits + frac_bits)
    return (-magnitude if signed else 0), magnitude - 1


def nearest_integer(num, den, mode):
    """Round num/den (den > 0) to an integer using floor/ceil candidates."""
    lo = num // den
    hi = -((-num) // den)
    if lo == hi:
        return lo
    if mode == "down":
        return lo
    if mode == "up":
        return hi
    if mode == "tozero":
        return hi if num < 0 else lo
    below = num - lo * den      # distance to lo, times den
    above = hi * den - num      # distance to hi, times den
    if below != above:
        return lo if below < above else hi
    if mode == "nearest-even":
        return lo if lo % 2 == 0 else hi
    if mode == "nearest-away":
        return hi if num > 0 else lo
    raise ValueError(mode)


def land(num, den, dst, mode, policy):
    """Round num/den into ``dst`` and apply the overflow policy."""
    if den < 0:
        num, den = -num, -den
    raw = nearest_integer(num * 2 ** dst[2], den, mode)
    lo, hi = raw_bounds(dst)
    if lo <= raw <= hi:
        return raw
    if policy == "sat":
        return hi if raw > hi else lo
    if policy == "wrap":
        span = hi - lo + 1
        return (raw - lo) % span + lo
    return "overflow"


def evaluate(op, args, dst, mode, policy):
    """``args`` is a list of ``(fmt, raw)``; a decimal literal is ``(None, text)``."""
    if op == "parse":
        num, den = decimal_fraction(args[0][1])
        return land(num, den, dst, mode, policy)
    if op in ("convert", "neg"):
        (fmt, raw), = args
        sign = -1 if op == "neg" else 1
        return land(sign * raw, 2 ** fmt[2], dst, mode, policy)
    (fa, a), (fb, b) = args
    ya, yb = fa[2], fb[2]
    if op == "add":
        return land(a * 2 ** yb + b * 2 ** ya, 2 ** (ya + yb), dst, mode, policy)
    if op == "sub":
        return land(a * 2 ** yb - b * 2 ** ya, 2 ** (ya + yb), dst, mode, policy)
    if op == "mul":
        return land(a * b, 2 ** (ya + yb), dst, mode, policy)
    if op == "div":
        if b == 0:
            return "divzero"
        # (a / 2^ya) / (b / 2^yb) = a * 2^yb / (b * 2^ya)
        return land(a * 2 ** yb, b * 2 ** ya, dst, mode, policy)
    raise ValueError(f"oracle has no op {op!r}")


def decimal_fraction(text):
    """Split ``[-]digits[.digits][e[-]digits]`` into an integer num/den pair."""
    text = text.strip().lower()
    sign = 1
    if text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        text = text[1:]
    exponent = 0
    if "e" in text:
        text, exp_text = text.split("e")
        exponent = int(exp_text)
    whole, _, frac = text.partition(".")
    digits = int((whole or "0") + frac)
    exponent -= len(frac)
    if exponent >= 0:
        return sign * digits * 10 ** exponent, 1
    return sign * digits, 10 ** -exponent
