"""Command line: evaluate interval expressions and run verification suites.

    fpinterval eval "[1,2] * ([0,1] - [3.5,4])" [--format E3M2] [--output hex]
    fpinterval verify --exhaustive --format E3M2 [--ops all] [--props QV,QT]
    fpinterval verify --random --count 100000 --seed 1 --ops mul --props QT
    fpinterval verify --negative-control --format E3M2

Exit status: 0 when everything holds, 1 on violations or division by an
interval containing zero, 2 on usage, syntax or configuration errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from typing import Optional, Union

from .fpcore import (
    BINARY64,
    FpFormat,
    FpValue,
    Op,
    parse_exact,
    parse_format,
    round_rational,
)
from .interval import Interval, InvalidInterval, zeroI
from .ops import OPERATORS, DivisionByZeroInterval
from .oracle import (
    INTERVAL_PROPERTIES,
    CheckReport,
    Property,
    exhaustive_check,
    extrema_check,
    negative_control,
    random_check,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

Span = tuple  # (start, end) character offsets into the source


# --------------------------------------------------------------------------
# syntax tree


@dataclass(frozen=True)
class Literal:
    value: Interval
    span: Span


@dataclass(frozen=True)
class Neg:
    child: "Node"
    span: Span


@dataclass(frozen=True)
class Binary:
    op: str  # one of + - * /
    left: "Node"
    right: "Node"
    span: Span
    op_span: Span


Node = Union[Literal, Neg, Binary]


class ParseError(ValueError):
    """Syntax error at byte ``offset``; ``expected`` lists acceptable tokens."""

    def __init__(self, text: str, pos: int, expected):
        self.text = text
        self.pos = pos
        self.offset = len(text[:pos].encode("utf-8"))
        self.expected = frozenset(expected)
        found = repr(text[pos]) if pos < len(text) else "end of input"
        want = ", ".join(sorted(self.expected))
        super().__init__(f"at offset {self.offset}: expected {want}; found {found}")


class ZeroDivisionDetected(ZeroDivisionError):
    """A divisor interval contained zero; ``op_span`` marks the '/'."""

    def __init__(self, node: Binary, divisor: Interval):
        self.node = node
        self.span = node.span
        self.op_span = node.op_span
        self.divisor = divisor
        super().__init__(f"divisor {divisor} contains zero")


_NUMBER = re.compile(
    r"0x[0-9a-f]*(?:\.[0-9a-f]*)?p[+-]?\d+"
    r"|(?:\d+\.?\d*|\.\d+)(?:e[+-]?\d+)?"
    r"|inf(?:inity)?",
    re.IGNORECASE,
)
_PUNCT = set("[](),+-*/")


def _tokenize(text: str):
    toks = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _PUNCT:
            toks.append((c, c, i, i + 1))
            i += 1
            continue
        m = _NUMBER.match(text, i)
        if m is None:
            raise ParseError(text, i, {"number", "[", "(", "-"})
        toks.append(("num", m.group(), i, m.end()))
        i = m.end()
    toks.append(("end", "", len(text), len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, fmt: FpFormat):
        self.text = text
        self.fmt = fmt
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self, kind, expected=None):
        tok = self.toks[self.k]
        if tok[0] != kind:
            raise ParseError(self.text, tok[2], expected or {kind})
        self.k += 1
        return tok

    def expr(self) -> Node:
        left = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take(self.peek()[0])
            right = self.term()
            left = Binary(op[0], left, right, (left.span[0], right.span[1]), op[2:])
        return left

    def term(self) -> Node:
        left = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.take(self.peek()[0])
            right = self.factor()
            left = Binary(op[0], left, right, (left.span[0], right.span[1]), op[2:])
        return left

    def factor(self) -> Node:
        kind, _, start, _ = self.peek()
        if kind == "-":
            self.k += 1
            child = self.factor()
            return Neg(child, (start, child.span[1]))
        if kind == "(":
            self.k += 1
            inner = self.expr()
            close = self.take(")")
            # keep the parenthesised span so diagnostics cover the brackets
            return _respan(inner, (start, close[3]))
        if kind == "[":
            return self.interval()
        if kind == "num":
            tok = self.take("num")
            r = parse_exact(tok[1])
            lo = round_rational(r, "down", self.fmt)
            hi = round_rational(r, "up", self.fmt)
            return Literal(Interval(lo, hi), (start, tok[3]))
        raise ParseError(self.text, start, {"number", "[", "(", "-"})

    def bound(self, direction: str) -> FpValue:
        sign = 1
        kind = self.peek()[0]
        if kind in ("+", "-"):
            sign = -1 if kind == "-" else 1
            self.k += 1
        tok = self.take("num", {"number", "+", "-"})
        r = parse_exact(tok[1])
        if sign < 0:
            r = -r
        if r == 0:
            return FpValue.zero(self.fmt, sign)
        return round_rational(r, direction, self.fmt)

    def interval(self) -> Node:
        start = self.take("[")[2]
        lo = self.bound("down")
        self.take(",")
        hi = self.bound("up")
        end = self.take("]")[3]
        return Literal(Interval(lo, hi), (start, end))


def _respan(node: Node, span: Span) -> Node:
    if isinstance(node, Literal):
        return Literal(node.value, span)
    if isinstance(node, Neg):
        return Neg(node.child, span)
    return Binary(node.op, node.left, node.right, span, node.op_span)


def parse(text: str, fmt: FpFormat = BINARY64) -> Node:
    """Parse an interval expression; literals are rounded outward into ``fmt``.

    Raises :class:`ParseError` on bad syntax and
    :class:`~fpinterval.interval.InvalidInterval` on a literal such as [2,1].
    """
    p = _Parser(text, fmt)
    node = p.expr()
    p.take("end", {"+", "-", "*", "/", "end of input"})
    return node


_BINARY = {"+": OPERATORS["add"], "-": OPERATORS["sub"],
           "*": OPERATORS["mul"], "/": OPERATORS["div"]}


def evaluate(node: Node) -> Interval:
    """Evaluate bottom-up; raises :class:`ZeroDivisionDetected` with the span."""
    if isinstance(node, Literal):
        return node.value
    if isinstance(node, Neg):
        x = evaluate(node.child)
        return OPERATORS["sub"](zeroI(x.fmt), x)
    left = evaluate(node.left)
    right = evaluate(node.right)
    try:
        return _BINARY[node.op](left, right)
    except DivisionByZeroInterval:
        raise ZeroDivisionDetected(node, right) from None


def _caret(text: str, span: Span) -> str:
    start, end = span
    return f"  {text}\n  {' ' * start}{'^' * max(1, end - start)}"


# --------------------------------------------------------------------------
# commands


def _cmd_eval(args, out, err) -> int:
    try:
        fmt = parse_format(args.format)
    except ValueError as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE
    text = args.expr
    try:
        node = parse(text, fmt)
    except ParseError as e:
        print(f"syntax error: {e}", file=err)
        print(_caret(text, (e.pos, e.pos + 1)), file=err)
        return EXIT_USAGE
    except InvalidInterval as e:
        print(f"invalid interval literal: {e}", file=err)
        return EXIT_USAGE
    try:
        result = evaluate(node)
    except ZeroDivisionDetected as e:
        print(f"zero_division_detected at offset {e.op_span[0]}: {e}", file=err)
        print(_caret(text, e.op_span), file=err)
        return EXIT_VIOLATION
    print(result.to_text(args.output), file=out)
    return EXIT_OK


def _split(text: str, choices, parse_one):
    if text.strip().lower() == "all":
        return list(choices)
    return [parse_one(t) for t in text.split(",") if t.strip()]


def _cmd_verify(args, out, err) -> int:
    modes = [args.exhaustive, args.random, args.negative_control]
    if sum(modes) != 1:
        print("error: choose exactly one of --exhaustive, --random, "
              "--negative-control", file=err)
        return EXIT_USAGE
    try:
        default = "binary64" if args.random else "E3M2"
        fmt = parse_format(args.format or default)
        ops = _split(args.ops, [o.value for o in Op], lambda t: Op(t.strip().lower()).value)
        props = _split(args.props, INTERVAL_PROPERTIES, Property.parse)
        if args.count < 1:
            raise ValueError("--count must be at least 1")
        if not 0 <= args.seed < 1 << 64:
            raise ValueError("--seed must fit in 64 bits")
        if (args.exhaustive or args.negative_control) and not fmt.enumerable:
            raise ValueError(f"{fmt.name} is too large to enumerate")
        if Property.EXTREMA in props and not args.exhaustive:
            raise ValueError("extrema_lemmas is only checked with --exhaustive")
    except ValueError as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE

    reports: list = []

    def emit(rep: CheckReport):
        print(rep.to_json() if args.jsonl else rep.to_line(), file=out, flush=True)
        for c in rep.first_counterexamples:
            print(f"# {rep.operator} {rep.property} {c}", file=err)
        reports.append(rep)

    if args.negative_control:
        rep = negative_control(fmt)
        emit(rep)
        return EXIT_OK if rep.violations >= 1 else EXIT_VIOLATION

    print(f"# format={fmt.name} mode={'exhaustive' if args.exhaustive else 'random'}",
          file=err)
    for op in ops:
        if args.exhaustive:
            for rep in exhaustive_check(fmt, op, props):
                emit(rep)
        else:
            for rep in random_check(op, props, count=args.count, seed=args.seed, fmt=fmt):
                emit(rep)
    if Property.EXTREMA in props:
        emit(extrema_check(fmt))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fpinterval",
        description="Interval arithmetic with directed rounding, and its verifier.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate an interval expression")
    ev.add_argument("expr")
    ev.add_argument("--format", default="binary64", help="binary64 or EkMm (default binary64)")
    ev.add_argument("--output", choices=("decimal", "hex"), default="decimal")
    ev.set_defaults(run=_cmd_eval)

    ve = sub.add_parser("verify", help="check the operator contracts")
    ve.add_argument("--exhaustive", action="store_true",
                    help="all ordered pairs of valid intervals of a small format")
    ve.add_argument("--random", action="store_true", help="seeded random pairs")
    ve.add_argument("--negative-control", action="store_true",
                    help="check that the unsimplified kv multiplication fails tightness")
    ve.add_argument("--format", default=None,
                    help="E3M2 for exhaustive runs, binary64 for random runs by default")
    ve.add_argument("--ops", default="all", help="comma list of add,sub,mul,div or all")
    ve.add_argument("--props", default="all",
                    help="comma list of QV,QS,QT,QZ,BR,RO,EX or all (all omits EX)")
    ve.add_argument("--count", type=int, default=100_000)
    ve.add_argument("--seed", type=int, default=1)
    ve.add_argument("--jsonl", action="store_true", help="one JSON object per report")
    ve.set_defaults(run=_cmd_verify)
    return ap


def main(argv: Optional[list] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    # "-[1,2] + 1" is an expression, not an option; a leading blank says so
    argv = [" " + a if len(a) > 1 and a[0] == "-" and a[1] in "[(.0123456789iI"
            else a for a in argv]
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    return args.run(args, out, err)


if __name__ == "__main__":
    sys.exit(main())
