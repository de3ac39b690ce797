"""Command-line front end: ``fxexact {convert,eval,corpus,fuzz,info}``.

Exit status is 0 on success, 1 when cases fail or arithmetic raises, and 2
for usage and parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import convert
from .conformance.corpus import CorpusParseError, run_corpus
from .conformance.expr import SUFFIX_FORMATS, eval_expression
from .conformance.fuzz import fuzz
from .emulation import BehaviorProfile
from .errors import FixedPointError, ParseError
from .exact import OverflowPolicy, RoundingMode, to_decimal_string
from .formats import FixedFormat, FixedValue

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _describe(v: FixedValue) -> str:
    return f"{v}  raw={v.raw}  value={to_decimal_string(v.value())}"


def _parse_source(text: str):
    """``0.04``, ``0.04k``, ``0x51f:s16.15``, ``s16.15:0x51f`` or ``f32:0x3d23d70a``."""
    left, sep, right = text.partition(":")
    if sep:
        if right.lower().startswith("0x"):
            left, right = right, left
        bits = int(left, 16)
        if right.lower() in ("f32", "f64"):
            return convert.IeeeFloat(int(right[1:]), bits)
        try:
            return FixedValue.from_bits(bits, FixedFormat.parse(right))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    literal = text.rstrip("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ")
    suffix = text[len(literal):].lower()
    # a trailing exponent marker is not a suffix
    if suffix and suffix not in SUFFIX_FORMATS:
        raise ParseError(f"unknown literal suffix {suffix!r}")
    convert.decimal_value(literal)
    return literal, (FixedFormat.parse(SUFFIX_FORMATS[suffix]) if suffix else None)


def cmd_convert(args) -> int:
    profile = BehaviorProfile.named(args.profile, args.mode)
    source = _parse_source(args.source)
    if isinstance(source, tuple):
        literal, fmt = source
        if fmt is None:
            if args.to in ("f32", "f64", "int"):
                raise ParseError("a bare literal needs a fixed-point --to format")
            value = profile.parse(literal, FixedFormat.parse(args.to), args.policy)
            print(_describe(value))
            return EXIT_OK
        source = profile.parse(literal, fmt, args.policy)
    if args.to in ("f32", "f64"):
        if isinstance(source, convert.IeeeFloat):
            raise ParseError("float to float conversion is not supported")
        f = convert.to_ieee(source, int(args.to[1:]), args.mode)
        print(f"{f}  value={to_decimal_string(f.value())}")
        return EXIT_OK
    if args.to == "int":
        if isinstance(source, convert.IeeeFloat):
            raise ParseError("float to int conversion is not supported")
        print(convert.to_integer(source))
        return EXIT_OK
    dst = FixedFormat.parse(args.to)
    if isinstance(source, convert.IeeeFloat):
        value = profile.from_ieee(source, dst, args.policy)
    else:
        value = profile.convert(source, dst, args.policy)
    print(_describe(value))
    return EXIT_OK


def cmd_eval(args) -> int:
    result = eval_expression(args.expr, args.profile, args.mode, args.policy)
    for name, v in result.bindings.items():
        print(f"{name} = {_describe(v)}")
    print(_describe(result.value))
    return EXIT_OK


def cmd_corpus(args) -> int:
    results = run_corpus(args.file)
    failed = [r for r in results if r.status != "pass"]
    if args.json:
        print(json.dumps([r.to_json() for r in results], indent=2))
    else:
        for r in results:
            line = f"{r.status.upper():<15} {r.id}  got={r.got}"
            if r.status != "pass":
                line += f"  expected={r.expected}"
            if r.exact_value:
                line += f"  value={r.exact_value}"
            print(line)
        print(f"{len(results) - len(failed)}/{len(results)} passed")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_fuzz(args) -> int:
    formats = [FixedFormat.parse(f) for f in args.formats.split(",")]
    profiles = [BehaviorProfile.named(p).token for p in args.profiles.split(",")]
    report = fuzz(args.seed, args.count, profiles, formats)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(f"seed={report.seed} count={report.count} formats={','.join(report.formats)}")
        print(f"oracle divergences: {report.oracle_divergences}")
        for line in report.oracle_examples:
            print(f"  {line}")
        if "gcc" in report.profiles:
            print(f"gcc divergences: {report.gcc_divergences}")
            for key, n in sorted(report.by_op.items()):
                print(f"  {key}: {n}")
            print(f"unbucketed: {report.unbucketed}")
            for line in report.unbucketed_examples:
                print(f"  {line}")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_info(args) -> int:
    fmt = FixedFormat.parse(args.format)
    lo, hi = fmt.min_max()
    eps = fmt.epsilon()
    rows = [
        ("format", str(fmt)),
        ("storage bits", str(fmt.storage_bits)),
        ("accuracy (abs.)", f"2^-{fmt.frac_bits}"),
        ("min positive", f"2^-{fmt.frac_bits} = {to_decimal_string(eps)}"),
        ("max (exact)", f"{to_decimal_string(hi)}"),
        ("max (approx.)", f"{float(hi):.6f}"),
        ("min (exact)", f"{to_decimal_string(lo)}"),
        ("raw range", f"[{fmt.raw_min}, {fmt.raw_max}]"),
    ]
    for key, value in rows:
        print(f"{key:<16} {value}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fxexact",
                                     description="Exact, explicitly rounded fixed-point arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    def rounding_args(p, profile=True):
        p.add_argument("--mode", type=RoundingMode.parse, default=RoundingMode.NEAREST_EVEN,
                       help="down, up, tozero, nearest-even, nearest-away")
        p.add_argument("--policy", type=OverflowPolicy.parse, default=OverflowPolicy.SATURATE,
                       help="sat, wrap, err")
        if profile:
            p.add_argument("--profile", default="correct", choices=["correct", "gcc"])

    p = sub.add_parser("convert", help="convert a literal or raw value to another format")
    p.add_argument("source", help="0.04, 0.04k, 0xc000:s0.31, f32:0x3d23d70a")
    p.add_argument("--to", required=True, help="fixed format, f32, f64 or int")
    rounding_args(p)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("eval", help="evaluate an expression")
    p.add_argument("expr")
    rounding_args(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("corpus", help="conformance corpus commands")
    corpus_sub = p.add_subparsers(dest="corpus_command", required=True)
    run = corpus_sub.add_parser("run", help="run a corpus file (@paper for the bundled one)")
    run.add_argument("file")
    run.add_argument("--json", action="store_true")
    run.set_defaults(func=cmd_corpus)

    p = sub.add_parser("fuzz", help="differential fuzzing against the integer oracle")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=10000)
    p.add_argument("--formats", default="s16.15,u0.32")
    p.add_argument("--profiles", default="correct,gcc")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("info", help="print epsilon and range of a format")
    p.add_argument("format")
    p.set_defaults(func=cmd_info)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "count", 1) < 1:
        parser.error("--count must be at least 1")
    try:
        return args.func(args)
    except CorpusParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        span = getattr(exc, "span", None)
        if span is not None and getattr(args, "expr", None):
            print(f"error: {exc}\n  {args.expr}\n  {' ' * span[0]}{'^' * max(span[1] - span[0], 1)}",
                  file=sys.stderr)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FixedPointError as exc:
        span = getattr(exc, "span", None)
        where = f" at {span[0]}..{span[1]}" if span else ""
        print(f"error{where}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
