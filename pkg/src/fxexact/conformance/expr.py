"""A small expression language for trying fixed-point arithmetic by hand.

    let a: u0.32 = 0x1:u0.32; let b = 65535k; let c: u0.32 = a * b

Literals take the ISO 18037 suffixes (``k`` for s16.15, ``lr`` for s0.31,
``ulr`` for u0.32, ...), ``0xBITS:fmt`` gives a raw bit pattern, and
``(fmt)expr`` is a cast. Each operation rounds straight into the innermost
enclosing cast/assignment format; with no target, same-format operands keep
their format and mixed operands use the common promotion format.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..emulation import BehaviorProfile, common_format
from ..errors import FixedPointError, ParseError
from ..exact import OverflowPolicy, RoundingMode, to_decimal_string
from ..formats import FixedFormat, FixedValue

SUFFIX_FORMATS = {
    "hr": "s0.7", "uhr": "u0.8", "r": "s0.15", "ur": "u0.16",
    "lr": "s0.31", "ulr": "u0.32", "hk": "s8.7", "uhk": "u8.8",
    "k": "s16.15", "uk": "u16.16", "lk": "s32.31", "ulk": "u32.32",
}

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<hex>0[xX][0-9a-fA-F]+:[sSuU]\d+\.\d+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)(?P<suffix>[a-zA-Z]*)
  | (?P<format>[sSuU]\d+\.\d+)
  | (?P<ident>[A-Za-z_]\w*)
  | (?P<op>[-+*/();:=])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    start: int
    suffix: str = ""


def tokenize(text: str) -> list[Token]:
    tokens, pos = [], 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r} at {pos}", (pos, pos + 1))
        kind = m.lastgroup if m.lastgroup != "suffix" else "number"
        if kind != "ws":
            tok = Token(kind, m.group(kind), m.start())
            if kind == "number":
                tok.suffix = m.group("suffix").lower()
                if tok.suffix and tok.suffix not in SUFFIX_FORMATS:
                    raise ParseError(f"unknown literal suffix {tok.suffix!r}",
                                     (m.start(), m.end()))
            tokens.append(tok)
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


# AST nodes: tuples tagged by their first element, spans are (start, end)

class Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self, offset=0) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def take(self, text=None, kind=None) -> Token:
        tok = self.peek()
        if (text is not None and tok.text != text) or (kind is not None and tok.kind != kind):
            want = text or kind
            raise ParseError(f"expected {want!r} at {tok.start}, found {tok.text or 'end'!r}",
                             (tok.start, tok.start + max(len(tok.text), 1)))
        self.i += 1
        return tok

    def program(self):
        stmts = [self.statement()]
        while self.peek().text == ";":
            self.take(";")
            if self.peek().kind == "end":
                break
            stmts.append(self.statement())
        self.take(kind="end")
        return stmts

    def statement(self):
        if self.peek().kind == "ident" and self.peek().text == "let":
            start = self.take().start
            name = self.take(kind="ident").text
            fmt = None
            if self.peek().text == ":":
                self.take(":")
                fmt = FixedFormat.parse(self.take(kind="format").text)
            self.take("=")
            expr = self.expr()
            return ("let", (start, expr[1][1]), name, fmt, expr)
        return self.expr()

    def expr(self):
        node = self.term()
        while self.peek().text in ("+", "-"):
            op = {"+": "add", "-": "sub"}[self.take().text]
            rhs = self.term()
            node = ("bin", (node[1][0], rhs[1][1]), op, node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek().text in ("*", "/"):
            op = {"*": "mul", "/": "div"}[self.take().text]
            rhs = self.unary()
            node = ("bin", (node[1][0], rhs[1][1]), op, node, rhs)
        return node

    def unary(self):
        tok = self.peek()
        if tok.text == "-":
            self.take()
            if self.peek().kind == "number":
                lit = self.literal()
                return ("lit", (tok.start, lit[1][1]), "-" + lit[2], lit[3])
            inner = self.unary()
            return ("neg", (tok.start, inner[1][1]), inner)
        if tok.text == "(" and self.peek(1).kind == "format" and self.peek(2).text == ")":
            self.take("(")
            fmt = FixedFormat.parse(self.take().text)
            self.take(")")
            inner = self.unary()
            return ("cast", (tok.start, inner[1][1]), fmt, inner)
        return self.primary()

    def literal(self):
        tok = self.take(kind="number")
        fmt = FixedFormat.parse(SUFFIX_FORMATS[tok.suffix]) if tok.suffix else None
        end = tok.start + len(tok.text) + len(tok.suffix)
        return ("lit", (tok.start, end), tok.text, fmt)

    def primary(self):
        tok = self.peek()
        if tok.kind == "number":
            return self.literal()
        if tok.kind == "hex":
            self.take()
            bits, fmt = tok.text.split(":")
            try:
                value = FixedValue.from_bits(int(bits, 16), FixedFormat.parse(fmt))
            except ValueError as exc:
                raise ParseError(str(exc), (tok.start, tok.start + len(tok.text))) from None
            return ("raw", (tok.start, tok.start + len(tok.text)), value)
        if tok.kind == "ident":
            self.take()
            return ("var", (tok.start, tok.start + len(tok.text)), tok.text)
        if tok.text == "(":
            self.take("(")
            node = self.expr()
            self.take(")")
            return node
        self.take(kind="number")  # raises with position
        raise AssertionError("unreachable")


def parse_program(text: str):
    return Parser(text).program()


class Evaluator:
    def __init__(self, profile: BehaviorProfile, policy: OverflowPolicy):
        self.profile = profile
        self.policy = policy
        self.env: dict[str, FixedValue] = {}

    def run(self, stmts) -> FixedValue:
        result = None
        for stmt in stmts:
            result = self.eval(stmt, None)
        return result

    def coerce(self, v: FixedValue, fmt: FixedFormat | None) -> FixedValue:
        if fmt is None or v.format == fmt:
            return v
        return self.profile.convert(v, fmt, self.policy)

    def eval(self, node, target):
        try:
            return self._eval(node, target)
        except FixedPointError as exc:
            if getattr(exc, "span", None) is None:
                exc.span = node[1]
            raise

    def _eval(self, node, target):
        kind, span = node[0], node[1]
        if kind == "let":
            _, _, name, fmt, expr = node
            self.env[name] = self.coerce(self.eval(expr, fmt), fmt)
            return self.env[name]
        if kind == "lit":
            _, _, text, fmt = node
            fmt = fmt or target
            if fmt is None:
                raise ParseError(f"literal {text} needs a suffix or a target format", span)
            return self.profile.parse(text, fmt, self.policy)
        if kind == "raw":
            return node[2]
        if kind == "var":
            try:
                return self.env[node[2]]
            except KeyError:
                raise ParseError(f"unbound name {node[2]!r}", span) from None
        if kind == "cast":
            _, _, fmt, inner = node
            return self.coerce(self.eval(inner, fmt), fmt)
        if kind == "neg":
            v = self.eval(node[2], target)
            return self.profile.neg(v, target or v.format, self.policy)
        _, _, op, lnode, rnode = node
        # an unsuffixed literal takes its sibling's format
        if _untyped(lnode) and not _untyped(rnode):
            rv = self.eval(rnode, target)
            lv = self.eval(lnode, target or rv.format)
        else:
            lv = self.eval(lnode, target)
            rv = self.eval(rnode, target or lv.format)
        dst = target
        if dst is None:
            dst = lv.format if lv.format == rv.format else common_format(lv.format, rv.format)
        return self.profile.binary(op, lv, rv, dst, self.policy)


def _untyped(node) -> bool:
    return node[0] == "lit" and node[3] is None


@dataclass
class EvalResult:
    value: FixedValue
    exact: str
    bindings: dict[str, FixedValue]


def eval_expression(text: str, profile="correct",
                    mode: RoundingMode = RoundingMode.NEAREST_EVEN,
                    policy: OverflowPolicy = OverflowPolicy.SATURATE) -> EvalResult:
    if isinstance(profile, str):
        profile = BehaviorProfile.named(profile, mode)
    ev = Evaluator(profile, policy)
    value = ev.run(parse_program(text))
    return EvalResult(value, to_decimal_string(value.value()), dict(ev.env))
