"""Line-oriented conformance corpus.

One case per line, ``#`` starts a comment, eight whitespace-separated fields::

    id  profile  op  inputs  dst  mode  policy  expected

``inputs`` is a comma-separated list of ``fmt:0xBITS`` fixed values,
``f32:0xBITS`` / ``f64:0xBITS`` floats, or bare decimal literals. Fixed raws
are written as their two's-complement bit pattern at the format's storage
width. ``-`` marks a field that does not apply (the default mode is
``nearest-even``). ``expected`` is a hex bit pattern, a decimal integer
(``to_int``), ``lt``/``eq``/``gt`` (``cmp``) or an error token.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

from .. import convert, ops
from ..emulation import BehaviorProfile
from ..errors import (DivideByZeroError, FixedOverflowError, NonFiniteError,
                      ParseError, UnsupportedPromotionError)
from ..exact import OverflowPolicy, RoundingMode, to_decimal_string
from ..formats import FixedFormat, FixedValue

OPS = {"parse", "convert", "from_ieee", "to_ieee", "to_int", "from_int",
       "add", "sub", "mul", "div", "neg", "cmp"}
ARITY = {"add": 2, "sub": 2, "mul": 2, "div": 2, "cmp": 2}
ERROR_TOKENS = {"overflow", "divzero", "nonfinite", "unsupported"}
CMP_TOKENS = {-1: "lt", 0: "eq", 1: "gt"}


class CorpusParseError(ParseError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


@dataclass
class CorpusCase:
    id: str
    profile: str
    op: str
    inputs: list[str]
    dst: str
    mode: str
    policy: str
    expected: str

    def to_line(self) -> str:
        return " ".join([self.id, self.profile, self.op, ",".join(self.inputs),
                         self.dst, self.mode, self.policy, self.expected])


@dataclass
class CaseResult:
    id: str
    status: str  # pass, fail, error-mismatch
    got: str
    expected: str
    exact_value: str = ""
    case: CorpusCase | None = field(default=None, repr=False, compare=False)

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("case")
        return d


def parse_value(token: str):
    """Decode one input token into a FixedValue, IeeeFloat or literal string."""
    fmt_text, sep, bits_text = token.partition(":")
    if not sep:
        convert.decimal_value(token)  # validates
        return token
    try:
        bits = int(bits_text, 16) if bits_text.lower().startswith("0x") else None
    except ValueError:
        bits = None
    if bits is None:
        raise ParseError(f"expected 0x bit pattern in {token!r}")
    if fmt_text.lower() in ("f32", "f64"):
        return convert.IeeeFloat(int(fmt_text[1:]), bits)
    try:
        return FixedValue.from_bits(bits, FixedFormat.parse(fmt_text))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def render(result) -> str:
    if isinstance(result, FixedValue):
        return f"{result.bits():#x}"
    if isinstance(result, convert.IeeeFloat):
        return f"{result.bits:#x}"
    return str(result)


def _canonical_expected(token: str) -> str:
    if token in ERROR_TOKENS or token in CMP_TOKENS.values():
        return token
    if token.lower().startswith("0x"):
        return f"{int(token, 16):#x}"
    return str(int(token))


def _check_case(case: CorpusCase) -> CorpusCase:
    BehaviorProfile.named(case.profile)
    if case.op not in OPS:
        raise ParseError(f"unknown op {case.op!r}")
    values = [parse_value(t) for t in case.inputs]
    if len(values) != ARITY.get(case.op, 1):
        raise ParseError(f"{case.op} takes {ARITY.get(case.op, 1)} input(s), got {len(values)}")
    want = {"parse": str, "from_int": str, "from_ieee": convert.IeeeFloat}.get(case.op, FixedValue)
    if not all(isinstance(v, want) for v in values):
        raise ParseError(f"{case.op} inputs must be {want.__name__} tokens")
    if case.op == "from_int" and not values[0].lstrip("+-").isdigit():
        raise ParseError(f"from_int needs an integer, got {values[0]!r}")
    if case.op not in ("cmp", "to_int", "to_ieee"):
        FixedFormat.parse(case.dst)
    if case.op == "to_ieee" and case.dst not in ("f32", "f64"):
        raise ParseError(f"to_ieee needs dst f32 or f64, got {case.dst!r}")
    if case.mode != "-":
        RoundingMode.parse(case.mode)
    if case.policy != "-":
        OverflowPolicy.parse(case.policy)
    try:
        case.expected = _canonical_expected(case.expected)
    except ValueError:
        raise ParseError(f"bad expected token {case.expected!r}") from None
    return case


def parse_corpus(text: str) -> list[CorpusCase]:
    cases = []
    seen = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 8:
            raise CorpusParseError(f"expected 8 fields, got {len(fields)}", lineno)
        id_, profile, op, inputs, dst, mode, policy, expected = fields
        if id_ in seen:
            raise CorpusParseError(f"duplicate case id {id_!r}", lineno)
        seen.add(id_)
        try:
            cases.append(_check_case(CorpusCase(
                id_, profile, op, inputs.split(","), dst, mode, policy, expected)))
        except ParseError as exc:
            raise CorpusParseError(str(exc), lineno) from None
    return cases


def execute(case: CorpusCase):
    """Run a case; returns the raw result object or raises the library error."""
    mode = RoundingMode.NEAREST_EVEN if case.mode == "-" else RoundingMode.parse(case.mode)
    policy = OverflowPolicy.SATURATE if case.policy == "-" else OverflowPolicy.parse(case.policy)
    profile = BehaviorProfile.named(case.profile, mode)
    args = [parse_value(t) for t in case.inputs]
    op = case.op
    if op == "cmp":
        return CMP_TOKENS[ops.compare(*args)]
    if op == "to_int":
        return convert.to_integer(args[0])
    if op == "to_ieee":
        return convert.to_ieee(args[0], int(case.dst[1:]), mode)
    dst = FixedFormat.parse(case.dst)
    if op == "parse":
        return profile.parse(args[0], dst, policy)
    if op == "convert":
        return profile.convert(args[0], dst, policy)
    if op == "from_ieee":
        return profile.from_ieee(args[0], dst, policy)
    if op == "from_int":
        return convert.from_integer(int(args[0]), dst, policy)
    if op == "neg":
        return profile.neg(args[0], dst, policy)
    return profile.binary(op, args[0], args[1], dst, policy)


def outcome(case: CorpusCase) -> tuple[str, str]:
    """``(token, exact decimal rendering)`` for a case, mapping errors to tokens."""
    try:
        result = execute(case)
    except FixedOverflowError:
        return "overflow", ""
    except DivideByZeroError:
        return "divzero", ""
    except NonFiniteError:
        return "nonfinite", ""
    except UnsupportedPromotionError:
        return "unsupported", ""
    if isinstance(result, (FixedValue, convert.IeeeFloat)):
        return render(result), to_decimal_string(result.value())
    return render(result), render(result)


def run_case(case: CorpusCase) -> CaseResult:
    got, exact_value = outcome(case)
    if got == case.expected:
        status = "pass"
    elif got in ERROR_TOKENS or case.expected in ERROR_TOKENS:
        status = "error-mismatch"
    else:
        status = "fail"
    return CaseResult(case.id, status, got, case.expected, exact_value, case)


def run_cases(cases: list[CorpusCase]) -> list[CaseResult]:
    return [run_case(c) for c in cases]


def bundled_corpus_text(name: str = "paper.corpus") -> str:
    return (resources.files("fxexact") / "data" / name).read_text()


def load_corpus(path) -> list[CorpusCase]:
    """Parse a corpus file; ``@name`` refers to a corpus shipped with the package."""
    path = str(path)
    if path.startswith("@"):
        return parse_corpus(bundled_corpus_text(path[1:] + ".corpus"))
    return parse_corpus(Path(path).read_text())


def run_corpus(path) -> list[CaseResult]:
    return run_cases(load_corpus(path))
