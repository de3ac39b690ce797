"""Differential fuzzer: correct profile vs the integer oracle, and gcc
emulation vs the correct profile.

Every gcc divergence must be explained by one of three mechanisms, checked
on the exact values:

``conversion``  a constant or conversion needed rounding and gcc truncated it;
``promotion``   an operand lost bits when promoted to the common format;
``result``      operands promoted exactly but the result needed rounding
                (or range reduction) in the common or destination format.

Anything else is reported as unbucketed and fails the run.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from .. import ops
from ..convert import decimal_value
from ..emulation import common_format
from ..errors import UnsupportedPromotionError
from ..exact import OverflowPolicy, RoundingMode, is_representable
from ..formats import FixedFormat, FixedValue
from . import oracle
from .corpus import CorpusCase, outcome

FUZZ_OPS = ["add", "sub", "mul", "div", "neg", "convert", "parse"]
MODES = [m.value for m in RoundingMode]
POLICIES = [p.value for p in OverflowPolicy]
BUCKETS = ("conversion", "promotion", "result")
MAX_EXAMPLES = 20


@dataclass
class FuzzReport:
    seed: int
    count: int
    formats: list[str]
    profiles: list[str]
    oracle_divergences: int = 0
    oracle_examples: list[str] = field(default_factory=list)
    gcc_divergences: int = 0
    buckets: dict[str, int] = field(default_factory=dict)
    by_op: dict[str, int] = field(default_factory=dict)
    unbucketed: int = 0
    unbucketed_examples: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.oracle_divergences == 0 and self.unbucketed == 0

    def to_json(self) -> dict:
        return {
            "seed": self.seed, "count": self.count,
            "formats": self.formats, "profiles": self.profiles,
            "ok": self.ok,
            "oracle_divergences": self.oracle_divergences,
            "oracle_examples": self.oracle_examples,
            "gcc_divergences": self.gcc_divergences,
            "buckets": dict(sorted(self.buckets.items())),
            "by_op": dict(sorted(self.by_op.items())),
            "unbucketed": self.unbucketed,
            "unbucketed_examples": self.unbucketed_examples,
        }


def random_raw(rng: random.Random, fmt: FixedFormat) -> int:
    if rng.random() < 0.25:
        boundary = [0, 1, fmt.raw_min, fmt.raw_max, fmt.raw_max // 2]
        if fmt.signed:
            boundary += [-1, fmt.raw_min // 2]
        return rng.choice(boundary)
    return rng.randint(fmt.raw_min, fmt.raw_max)


def random_literal(rng: random.Random, fmt: FixedFormat) -> str:
    whole = rng.randint(0, 1 << fmt.int_bits)
    frac = "".join(rng.choice("0123456789") for _ in range(rng.randint(1, 24)))
    sign = "-" if fmt.signed and rng.random() < 0.5 else ""
    text = f"{sign}{whole}.{frac}"
    if rng.random() < 0.2:
        text += f"e{rng.randint(-3, 1)}"
    return text


def generate(rng: random.Random, formats: list[FixedFormat]) -> tuple[str, list, FixedFormat, str, str]:
    """One random case: ``(op, args, dst, mode, policy)``; args are FixedValues or a literal."""
    op = rng.choice(FUZZ_OPS)
    dst = rng.choice(formats)
    if op == "parse":
        args = [random_literal(rng, dst)]
    else:
        arity = 2 if op in ops.BINARY_OPS else 1
        args = []
        for _ in range(arity):
            fmt = rng.choice(formats)
            args.append(FixedValue(random_raw(rng, fmt), fmt))
    return op, args, dst, rng.choice(MODES), rng.choice(POLICIES)


def to_case(id_, profile, op, args, dst, mode, policy) -> CorpusCase:
    inputs = [a if isinstance(a, str) else str(a) for a in args]
    return CorpusCase(id_, profile, op, inputs, str(dst), mode, policy, "")


def oracle_token(op, args, dst: FixedFormat, mode, policy) -> str:
    def triple(f):
        return (f.signed, f.int_bits, f.frac_bits)
    oargs = [(None, a) if isinstance(a, str) else (triple(a.format), a.raw) for a in args]
    result = oracle.evaluate(op, oargs, triple(dst), mode, policy)
    if isinstance(result, str):
        return result
    return f"{result & ((1 << dst.storage_bits) - 1):#x}"


def classify(op, args, dst: FixedFormat) -> str | None:
    """Name the mechanism that explains a gcc divergence, or None."""
    if op == "parse":
        return "conversion" if not is_representable(decimal_value(args[0]), dst) else None
    if op == "convert":
        return "conversion" if not is_representable(args[0].value(), dst) else None
    if op == "neg":
        exact = -args[0].value()
        common = args[0].format
    else:
        lhs, rhs = args
        try:
            common = common_format(lhs.format, rhs.format)
        except UnsupportedPromotionError:
            return "promotion"
        if not all(is_representable(a.value(), common) for a in args):
            return "promotion"
        if op == "div" and rhs.raw == 0:
            return None
        a, b = lhs.value(), rhs.value()
        if op == "add":
            exact = a + b
        elif op == "sub":
            exact = a - b
        elif op == "mul":
            exact = a * b
        else:
            exact = a / b
    if not is_representable(exact, common) or not is_representable(exact, dst):
        return "result"
    return None


def fuzz(seed: int, count: int, profiles=("correct", "gcc"), formats=None) -> FuzzReport:
    if count < 1:
        raise ValueError("count must be at least 1")
    formats = [FixedFormat.parse(f) if isinstance(f, str) else f for f in formats]
    profiles = list(profiles)
    report = FuzzReport(seed, count, [str(f) for f in formats], profiles)
    buckets, by_op = Counter(), Counter()
    rng = random.Random(seed)
    for i in range(count):
        op, args, dst, mode, policy = generate(rng, formats)
        case = to_case(f"fuzz-{seed}-{i}", "correct", op, args, dst, mode, policy)
        correct, _ = outcome(case)
        expected = oracle_token(op, args, dst, mode, policy)
        if correct != expected:
            report.oracle_divergences += 1
            if len(report.oracle_examples) < MAX_EXAMPLES:
                case.expected = expected
                report.oracle_examples.append(case.to_line() + f"  # got {correct}")
        if "gcc" not in profiles:
            continue
        gcc_case = to_case(case.id, "gcc", op, args, dst, mode, policy)
        gcc, _ = outcome(gcc_case)
        if gcc == correct:
            continue
        report.gcc_divergences += 1
        bucket = classify(op, args, dst)
        if bucket is None:
            report.unbucketed += 1
            if len(report.unbucketed_examples) < MAX_EXAMPLES:
                gcc_case.expected = correct
                report.unbucketed_examples.append(gcc_case.to_line() + f"  # gcc {gcc}")
            continue
        buckets[bucket] += 1
        by_op[f"{bucket}/{op}"] += 1
    report.buckets = dict(buckets)
    report.by_op = dict(by_op)
    return report
