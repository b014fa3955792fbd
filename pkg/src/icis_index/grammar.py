"""Exact text grammar for polynomials.

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ('+' | '-') factor | power
    power  := atom ('^' INT)?
    atom   := INT ('/' INT)? | NAME | '(' expr ')'

Names match ``[a-z][a-z0-9]*`` and must belong to the variable context.
Decimal points are rejected: there is no floating point anywhere.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .poly import Poly

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[a-z][a-z0-9]*)|(?P<op>[-+*/^()]))")
NAME_RE = re.compile(r"[a-z][a-z0-9]*\Z")


class PolySyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int, line: int = 1, col_offset: int = 0):
        self.message = message
        self.line = line
        self.col = col_offset + pos + 1
        self.text = text
        super().__init__(f"line {self.line}, column {self.col}: {message}")


class _Parser:
    def __init__(self, text: str, vars: Sequence[str], line: int, col_offset: int):
        self.text = text
        self.vars = tuple(vars)
        self.line = line
        self.col_offset = col_offset
        self.toks = self._tokenize()
        self.i = 0

    def error(self, msg, pos=None):
        if pos is None:
            pos = self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)
        return PolySyntaxError(msg, self.text, pos, self.line, self.col_offset)

    def _tokenize(self):
        toks = []
        pos = 0
        text = self.text
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                start = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise PolySyntaxError(f"unexpected character {text[start]!r}", text, start,
                                      self.line, self.col_offset)
            kind = m.lastgroup
            start = m.start(kind)
            toks.append((kind, m.group(kind), start))
            pos = m.end()
        return toks

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if not self.toks:
            raise self.error("empty polynomial", 0)
        p = self.expr()
        if self.i != len(self.toks):
            raise self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.factor()
        while self.peek()[1] == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self) -> Poly:
        if self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            p = self.factor()
            return -p if op == "-" else p
        return self.power()

    def power(self) -> Poly:
        p = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "int":
                raise self.error("exponent must be a nonnegative integer", pos)
            p = p ** int(val)
        return p

    def atom(self) -> Poly:
        kind, val, pos = self.take()
        if kind == "int":
            c = Fraction(int(val))
            if self.peek()[1] == "/":
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "int":
                    raise self.error("expected integer denominator after '/'", p2)
                if int(v2) == 0:
                    raise self.error("zero denominator", p2)
                c = c / int(v2)
            if self.peek()[0] in ("int", "name") or self.peek()[1] == "(":
                raise self.error("implicit multiplication; write '*'")
            return Poly.const(self.vars, c)
        if kind == "name":
            if val not in self.vars:
                raise self.error(f"unknown variable {val!r}", pos)
            return Poly.var(self.vars, val)
        if val == "(":
            p = self.expr()
            k2, v2, p2 = self.take()
            if v2 != ")":
                raise self.error("expected ')'", p2)
            return p
        if kind is None:
            raise self.error("unexpected end of input", pos)
        raise self.error(f"unexpected token {val!r}", pos)


def parse_poly(text: str, vars: Sequence[str], *, line: int = 1, col_offset: int = 0) -> Poly:
    """Parse ``text`` into an exact polynomial over the context ``vars``."""
    if "." in text:
        pos = text.index(".")
        raise PolySyntaxError("decimal numbers are not accepted; use p/q", text, pos, line, col_offset)
    return _Parser(text, vars, line, col_offset).parse()


def parse_rational(text: str) -> Fraction:
    """Parse an exact rational ``p`` or ``p/q`` (optional sign)."""
    t = text.strip()
    if not re.fullmatch(r"[-+]?\d+(/\d+)?", t):
        raise ValueError(f"not an exact rational p/q: {text!r}")
    return Fraction(t)
