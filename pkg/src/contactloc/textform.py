"""Canonical text form for ExactScalar and Poly, and a parser for it.

Grammar (also accepted for user input such as ``eta = "u^2 + 3*s"``)::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := ('+' | '-') unary | power
    power := atom ('^' ['-'] INT)?
    atom  := INT | 'pi' | 'I' | NAME | '(' expr ')'

Division is only allowed by nonzero homogeneous constants.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .exact import ExactScalar, ONE, I, PI
from .poly import Poly, ONE_POLY


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"({q.numerator}/{q.denominator})"


def _fmt_gaussian(re_: Fraction, im: Fraction):
    """Return ``(sign, core)``; core is '' for a unit."""
    if im == 0:
        sign = "-" if re_ < 0 else ""
        a = abs(re_)
        return sign, "" if a == 1 else _fmt_rational(a)
    if re_ == 0:
        sign = "-" if im < 0 else ""
        a = abs(im)
        return sign, "I" if a == 1 else f"{_fmt_rational(a)}*I"
    b = abs(im)
    bpart = "I" if b == 1 else f"{b}*I"
    return "", f"({re_}{'-' if im < 0 else '+'}{bpart})"


def _fmt_pi(k: int) -> str:
    if k == 0:
        return ""
    return "pi" if k == 1 else f"pi^{k}"


def _join(*factors: str) -> str:
    return "*".join(f for f in factors if f)


def _homog(k, re_, im, tail: str = "") -> str:
    sign, core = _fmt_gaussian(re_, im)
    body = _join(core, _fmt_pi(k), tail)
    return sign + (body or "1")


def format_scalar(c: ExactScalar) -> str:
    if c.is_zero():
        return "0"
    pieces = [_homog(k, a, b) for k, a, b in reversed(c.parts)]
    return _sum(pieces)


def _sum(pieces) -> str:
    out = pieces[0]
    for p in pieces[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def _fmt_monomial(variables, exps) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}"
                    for v, e in zip(variables, exps) if e)


def format_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for exps, c in p.sorted_terms():
        mono = _fmt_monomial(p.variables, exps)
        if c.is_homogeneous():
            pieces.append(_homog(*c.parts[0], tail=mono))
        else:
            pieces.append(_join(f"({format_scalar(c)})", mono))
    return _sum(pieces)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class ParseError(ValueError):
    pass


class _Parser:
    def __init__(self, text: str):
        self.tokens = []
        for num, name, op in _TOKEN.findall(text):
            if num:
                self.tokens.append(("num", int(num)))
            elif name:
                self.tokens.append(("name", name))
            elif op.strip():
                if op not in "+-*/^()":
                    raise ParseError(f"unexpected character {op!r}")
                self.tokens.append(("op", op))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if tok[0] is None or (op is not None and tok != ("op", op)):
            raise ParseError(f"expected {op or 'token'} at position {self.pos}")
        self.pos += 1
        return tok

    def parse(self) -> Poly:
        if not self.tokens:
            raise ParseError("empty expression")
        p = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input at token {self.pos}")
        return p

    def expr(self):
        p = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise ParseError("division by a non-constant or zero expression")
                p = p / q.constant_term()
        return p

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            kind, e = self.take()
            if kind != "num":
                raise ParseError("exponent must be an integer literal")
            if neg:
                if not base.is_constant() or base.is_zero():
                    raise ParseError("negative powers only of nonzero constants")
                return Poly.const(base.constant_term() ** (-e))
            return base ** e
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return Poly.const(val)
        if kind == "name":
            if val == "pi":
                return Poly.const(PI)
            if val == "I":
                return Poly.const(I)
            return Poly.var(val)
        if val == "(":
            p = self.expr()
            self.take(")")
            return p
        raise ParseError(f"unexpected {val!r}")


def parse_poly(text: str) -> Poly:
    """Parse the canonical grammar into a Poly."""
    return _Parser(str(text)).parse()


def parse_scalar(text: str) -> ExactScalar:
    p = parse_poly(text)
    if not p.is_constant():
        raise ParseError(f"{text!r} is not a constant")
    return p.constant_term()
