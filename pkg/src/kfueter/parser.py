"""Expression language for fields.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := base ('^' uint)?
    base   := rational | 'i' | 'x0' | 'x1' | 'x2' | 'x3' | 'r2' | '(' expr ')'

A rational literal is ``123`` or ``123/45`` written without spaces; with
spaces the slash is ordinary division.  Right after ``^`` only an integer is
read, so ``x0^2/3`` means ``(x0^2)/3``.  Division is allowed only by
expressions that lower to a nonzero constant times a power of r2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import NonR2Denominator, ParseError
from .exact import ExactComplex, R2, SymField

__all__ = [
    "Num",
    "ImagUnit",
    "Var",
    "R2Sym",
    "Neg",
    "BinOp",
    "Pow",
    "parse_expr",
    "to_text",
    "lower",
    "parse_field",
    "random_expr",
]


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class ImagUnit:
    pass


@dataclass(frozen=True)
class Var:
    axis: int


@dataclass(frozen=True)
class R2Sym:
    pass


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    pos: int = -1

    def __eq__(self, other):
        return (
            isinstance(other, BinOp)
            and (self.op, self.left, self.right) == (other.op, other.left, other.right)
        )

    def __hash__(self):
        return hash((self.op, self.left, self.right))


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


_UINT = re.compile(r"\d+")
_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(src):
    tokens = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            break
        after_caret = bool(tokens) and tokens[-1][1] == "^"
        m = (_UINT if after_caret else _TOKEN).match(src, pos)
        if after_caret and m:
            tokens.append(("num", m.group(), pos))
            pos = m.end()
            continue
        if after_caret:
            m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {src[pos]!r}", pos)
        start = m.start(m.lastgroup)
        tokens.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src):
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, text, pos = self.take()
        if text != value:
            found = "end of input" if kind == "end" else repr(text)
            raise ParseError(f"expected {value!r}, found {found}", pos)

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            _, op, pos = self.take()
            node = BinOp(op, node, self.term(), pos)
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            _, op, pos = self.take()
            node = BinOp(op, node, self.unary(), pos)
        return node

    def unary(self):
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        node = self.base()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, text, pos = self.take()
            if kind != "num" or "/" in text:
                raise ParseError("exponent must be a nonnegative integer", pos)
            node = Pow(node, int(text))
        return node

    def base(self):
        kind, text, pos = self.take()
        if kind == "num":
            return Num(Fraction(text))
        if kind == "name":
            if text == "i":
                return ImagUnit()
            if text == "r2":
                return R2Sym()
            if len(text) == 2 and text[0] == "x" and text[1] in "0123":
                return Var(int(text[1]))
            raise ParseError(f"unknown name {text!r}", pos)
        if kind == "op" and text == "(":
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(text)
        raise ParseError(f"unexpected {found}", pos)


def parse_expr(src):
    """Parse text into an expression tree; raises ParseError with the offset."""
    if not isinstance(src, str):
        raise TypeError("expression source must be text")
    p = _Parser(src)
    node = p.expr()
    kind, text, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {text!r}", pos)
    return node


def to_text(node):
    """Fully parenthesized text that parses back to the same tree."""
    if isinstance(node, Num):
        v = node.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, ImagUnit):
        return "i"
    if isinstance(node, Var):
        return f"x{node.axis}"
    if isinstance(node, R2Sym):
        return "r2"
    if isinstance(node, Neg):
        return f"(-{to_text(node.arg)})"
    if isinstance(node, Pow):
        return f"({to_text(node.base)})^{node.exp}"
    if isinstance(node, BinOp):
        return f"({to_text(node.left)} {node.op} {to_text(node.right)})"
    raise TypeError(f"not an expression node: {node!r}")


def _divide(a, d, pos):
    if d.is_zero():
        raise NonR2Denominator("division by zero", pos)
    num = d.num
    j = 0
    while num.constant_value() is None:
        q = num.div_r2()
        if q is None:
            raise NonR2Denominator("divisor is not a constant times a power of r2", pos)
        num = q
        j += 1
    c = num.constant_value()
    shift = j - d.m
    out = a.over_r2(shift) if shift >= 0 else a * SymField(R2.num ** (-shift), 0)
    return out.scale(ExactComplex(1) / c)


def lower(node):
    """Canonical SymField represented by an expression tree."""
    if isinstance(node, Num):
        return SymField.const(ExactComplex(node.value))
    if isinstance(node, ImagUnit):
        return SymField.const(ExactComplex(0, 1))
    if isinstance(node, Var):
        return SymField.var(node.axis)
    if isinstance(node, R2Sym):
        return R2
    if isinstance(node, Neg):
        return -lower(node.arg)
    if isinstance(node, Pow):
        return lower(node.base) ** node.exp
    if isinstance(node, BinOp):
        a = lower(node.left)
        b = lower(node.right)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        return _divide(a, b, node.pos)
    raise TypeError(f"not an expression node: {node!r}")


def parse_field(src):
    return lower(parse_expr(src))


def random_expr(rng, depth=3):
    """Random expression tree whose divisions are all by powers of r2."""
    if depth <= 0 or rng.random() < 0.25:
        choice = rng.randrange(4)
        if choice == 0:
            return Num(Fraction(rng.randint(0, 9), rng.randint(1, 5)))
        if choice == 1:
            return ImagUnit()
        if choice == 2:
            return Var(rng.randrange(4))
        return R2Sym()
    kind = rng.randrange(5)
    if kind == 0:
        return Neg(random_expr(rng, depth - 1))
    if kind == 1:
        return Pow(random_expr(rng, depth - 1), rng.randint(0, 3))
    if kind == 2:
        divisor = Pow(R2Sym(), rng.randint(1, 2)) if rng.random() < 0.5 else R2Sym()
        return BinOp("/", random_expr(rng, depth - 1), divisor)
    op = rng.choice("+-*")
    return BinOp(op, random_expr(rng, depth - 1), random_expr(rng, depth - 1))
