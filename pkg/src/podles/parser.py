"""Surface syntax for algebra elements.

::

    expr   := ["+"|"-"] term (("+"|"-") term)*
    term   := factor ("*" factor)*
    factor := atom ["^" uint]
    atom   := generator | "1" | scalar | "(" expr ")"
    scalar := decimal | "q" ["^" int] | "i"

Generators are ``A B Bs x(-1) x0 x1`` (sphere), ``a b c d`` (quantum SU(2))
and ``E F K Kinv`` (U_q).  ``Bs`` stands for ``B*``.  Multiplication must be
written explicitly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import mpmath

from .errors import ParseError
from .hopf import sphere_x
from .ncalg import AlgebraElement, AlgebraId, generator, unit
from .scalars import ScalarContext, default_context

__all__ = ["parse", "tokenize", "Token"]

_SPHERE = {"A", "B", "Bs", "x(-1)", "x0", "x1"}
_SUQ2 = {"a", "b", "c", "d"}
_UQ = {"E", "F", "K", "Kinv", "Ki"}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<num>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)
  | (?P<xm>x\(\s*-\s*1\s*\))
  | (?P<name>[A-Za-z][A-Za-z0-9]*)
  | (?P<op>[-+*^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def _position(src, offset):
    line = src.count("\n", 0, offset) + 1
    column = offset - (src.rfind("\n", 0, offset) + 1) + 1
    return line, column


def tokenize(src: str):
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            line, col = _position(src, pos)
            raise ParseError(f"unexpected character {src[pos]!r}", line, col)
        kind = m.lastgroup
        if kind != "ws":
            line, col = _position(src, pos)
            text = m.group()
            if kind == "xm":
                kind, text = "name", "x(-1)"
            tokens.append(Token(kind, text, line, col))
        pos = m.end()
    line, col = _position(src, len(src))
    tokens.append(Token("end", "", line, col))
    return tokens


def _algebra_of_name(name):
    if name in _SPHERE:
        return AlgebraId.SPHERE
    if name in _SUQ2:
        return AlgebraId.SUQ2
    if name in _UQ:
        return AlgebraId.UQ
    return None


class _Parser:
    def __init__(self, src, ctx):
        self.src = src
        self.ctx = ctx
        self.tokens = tokenize(src)
        self.i = 0
        self.algebra = None
        names = [t for t in self.tokens if t.kind == "name" and _algebra_of_name(t.text)]
        for t in names:
            alg = _algebra_of_name(t.text)
            if self.algebra is None:
                self.algebra = alg
            elif alg is not self.algebra:
                raise ParseError(
                    f"mixed algebras: {t.text!r} is in {alg.value}, expression started in {self.algebra.value}",
                    t.line,
                    t.column,
                )
        if self.algebra is None:
            self.algebra = AlgebraId.SPHERE

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.column)

    def take(self, kind=None, text=None):
        t = self.tok
        if (kind and t.kind != kind) or (text and t.text != text):
            want = text or kind
            got = t.text or "end of input"
            raise self.error(f"expected {want}, got {got!r}")
        self.i += 1
        return t

    def at(self, text):
        return self.tok.kind == "op" and self.tok.text == text

    def parse(self):
        if self.tok.kind == "end":
            raise self.error("empty expression")
        value = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected token {self.tok.text!r}")
        return _lift(value, self.algebra, self.ctx)

    def expr(self):
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self.take().text == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while self.at("+") or self.at("-"):
            op = self.take().text
            rhs = self.term()
            value = _add(value, rhs, self.algebra, self.ctx, op)
        return value

    def term(self):
        value = self.factor()
        while self.at("*"):
            self.take()
            value = value * self.factor()
        return value

    def factor(self):
        value = self.atom()
        if self.at("^"):
            self.take()
            t = self.tok
            if t.kind != "num" or not t.text.isdigit():
                raise self.error("exponent must be a nonnegative integer")
            self.take()
            value = value ** int(t.text)
        return value

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.take()
            return mpmath.mpf(t.text)
        if t.kind == "op" and t.text == "(":
            self.take()
            value = self.expr()
            self.take("op", ")")
            return value
        if t.kind == "name":
            self.take()
            if t.text == "q":
                if self.at("^"):
                    self.take()
                    sign = 1
                    if self.at("-") or self.at("+"):
                        sign = -1 if self.take().text == "-" else 1
                    e = self.tok
                    if e.kind != "num" or not e.text.isdigit():
                        raise self.error("exponent of q must be an integer")
                    self.take()
                    return self.ctx.q ** (sign * int(e.text))
                return self.ctx.q
            if t.text == "i":
                return mpmath.mpc(0, 1)
            if t.text in ("x(-1)", "x0", "x1"):
                idx = {"x(-1)": -1, "x0": 0, "x1": 1}[t.text]
                return sphere_x(self.ctx)[idx]
            if t.text == "Kinv":
                return generator("Ki", self.ctx)
            if _algebra_of_name(t.text):
                return generator(t.text, self.ctx)
            raise self.error(f"unknown name {t.text!r}", t)
        raise self.error(f"unexpected token {t.text or 'end of input'!r}", t)


def _lift(value, alg, ctx):
    if isinstance(value, AlgebraElement):
        return value
    return unit(alg, ctx) * value


def _add(x, y, alg, ctx, op):
    if not isinstance(x, AlgebraElement) and not isinstance(y, AlgebraElement):
        return x + y if op == "+" else x - y
    x, y = _lift(x, alg, ctx), _lift(y, alg, ctx)
    return x + y if op == "+" else x - y


def parse(src: str, ctx: ScalarContext | None = None):
    """Parse ``src`` and return ``(AlgebraId, element in normal form)``."""
    ctx = ctx or default_context()
    if not src or not src.strip():
        raise ParseError("empty expression", 1, 1)
    elem = _Parser(src, ctx).parse()
    return elem.algebra, elem
