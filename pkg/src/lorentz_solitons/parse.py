"""Reader for the textual polynomial grammar.

Grammar (whitespace-insensitive)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INTEGER)?
    atom   := INTEGER | IDENT | "(" expr ")"

``p/q`` rational literals fall out of ``/`` between integers.  Division is
accepted only when the divisor is a nonzero constant, unless the caller
evaluates into an algebra that supports it (see :func:`parse_fraction`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Mapping

from .poly import UNIVERSE, Poly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "op", "end"
    text: str
    column: int


def tokenize(text: str, line: int = 1) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        col = m.start(m.lastindex) + 1
        if m.group(1) is not None:
            tokens.append(Token("int", m.group(1), col))
        elif m.group(2) is not None:
            tokens.append(Token("ident", m.group(2), col))
        else:
            op = m.group(3)
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r}", line, col)
            tokens.append(Token("op", op, col))
        pos = m.end()
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, resolve: Callable[[str], object], line: int,
                 allow_division: bool):
        self.tokens = tokenize(text, line)
        self.pos = 0
        self.resolve = resolve
        self.line = line
        self.allow_division = allow_division

    def error(self, message: str, token: Token | None = None) -> ParseError:
        token = token or self.tokens[self.pos]
        return ParseError(message, self.line, token.column)

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def take(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, text: str) -> None:
        tok = self.take()
        if tok.text != text or tok.kind != "op":
            raise self.error(f"expected {text!r}", tok)

    def parse(self):
        if self.peek().kind == "end":
            raise self.error("empty expression")
        value = self.expr()
        if self.peek().kind != "end":
            raise self.error(f"unexpected {self.peek().text!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek().text in ("+", "-") and self.peek().kind == "op":
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek().text in ("*", "/") and self.peek().kind == "op":
            op_tok = self.take()
            rhs_tok = self.peek()
            rhs = self.unary()
            if op_tok.text == "*":
                try:
                    value = value * rhs
                except TypeError as exc:
                    raise self.error(str(exc), op_tok) from None
            else:
                value = self._divide(value, rhs, rhs_tok)
        return value

    def _divide(self, value, rhs, tok: Token):
        if isinstance(rhs, Poly) and rhs.is_constant():
            if rhs.is_zero():
                raise self.error("division by zero", tok)
            return value * (1 / rhs.constant_value())
        if not self.allow_division:
            raise self.error("division by a non-constant expression", tok)
        try:
            return value / rhs
        except ZeroDivisionError:
            raise self.error("division by zero", tok) from None

    def unary(self):
        tok = self.peek()
        if tok.kind == "op" and tok.text in ("+", "-"):
            self.take()
            operand = self.unary()
            return -operand if tok.text == "-" else operand
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            tok = self.take()
            if tok.kind != "int":
                raise self.error("exponent must be a non-negative integer", tok)
            return base ** int(tok.text)
        return base

    def atom(self):
        tok = self.take()
        if tok.kind == "int":
            return Poly.const(int(tok.text))
        if tok.kind == "ident":
            try:
                return self.resolve(tok.text)
            except KeyError:
                raise self.error(f"unknown symbol {tok.text!r}", tok) from None
        if tok.kind == "op" and tok.text == "(":
            value = self.expr()
            self.expect(")")
            return value
        if tok.kind == "end":
            raise self.error("unexpected end of expression", tok)
        raise self.error(f"unexpected {tok.text!r}", tok)


def _resolver(env: Mapping[str, object] | None, symbols: set[str] | None):
    def resolve(name: str):
        if env and name in env:
            return env[name]
        if symbols is not None and name not in symbols:
            raise KeyError(name)
        if name not in UNIVERSE:
            raise KeyError(name)
        return Poly.var(name)
    return resolve


def parse_poly(text: str, env: Mapping[str, object] | None = None, *,
               symbols: set[str] | None = None, line: int = 1) -> Poly:
    """Parse ``text`` into a :class:`Poly`.

    ``env`` maps extra identifiers (shorthands) to values; ``symbols``, when
    given, restricts which universe symbols may appear.
    """
    value = _Parser(text, _resolver(env, symbols), line, allow_division=False).parse()
    if not isinstance(value, Poly):
        raise ParseError("expression is not a scalar polynomial", line, 1)
    return value


def parse_with(text: str, resolve: Callable[[str], object], *, line: int = 1,
               allow_division: bool = False):
    """Parse ``text`` evaluating identifiers through ``resolve``.

    The result lives in whatever algebra ``resolve`` returns values from.
    """
    return _Parser(text, resolve, line, allow_division).parse()


class Fractional:
    """Unsimplified quotient ``num/den`` of polynomials (only used while parsing)."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        self.num = num
        self.den = den if den is not None else Poly.const(1)
        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if self.den.is_constant():
            self.num = self.num / self.den.constant_value()
            self.den = Poly.const(1)

    @staticmethod
    def lift(x) -> "Fractional":
        if isinstance(x, Fractional):
            return x
        return Fractional(Poly.coerce(x))

    def __add__(self, other):
        o = Fractional.lift(other)
        if self.den == o.den:
            return Fractional(self.num + o.num, self.den)
        return Fractional(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Fractional(-self.num, self.den)

    def __sub__(self, other):
        return self + (-Fractional.lift(other))

    def __rsub__(self, other):
        return Fractional.lift(other) - self

    def __mul__(self, other):
        o = Fractional.lift(other)
        return Fractional(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Fractional.lift(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero")
        return Fractional(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return Fractional.lift(other) / self

    def __pow__(self, n: int):
        return Fractional(self.num ** n, self.den ** n)


def parse_fraction(text: str, env: Mapping[str, object] | None = None, *,
                   line: int = 1) -> tuple[Poly, Poly]:
    """Parse a rational function, returning ``(numerator, denominator)``."""
    base = _resolver(env, None)

    def resolve(name: str):
        return Fractional.lift(base(name))

    value = Fractional.lift(parse_with(text, resolve, line=line, allow_division=True))
    return value.num, value.den

