"""Text syntax for scalars, cubic forms and projective points.

Grammar (whitespace is ignored)::

    expr    := ['+' | '-'] term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := primary ['^' INT]
    primary := INT | 'w' | 'x0' | 'x1' | 'x2' | '(' expr ')'

``w`` is the cube root of unity.  Division is allowed only by nonzero
constants.  A cubic must expand to a form whose monomials all have
degree 3.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError
from .poly import Cubic, Poly
from .scalar import Eis

_TOKEN = re.compile(r"\s*(?:(\d+)|(x[0-2])|(w)|([-+*/^():]))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "int", "var", "w", "op", "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(_Tok("int", m.group(1), start))
        elif m.group(2):
            toks.append(_Tok("var", m.group(2), start))
        elif m.group(3):
            toks.append(_Tok("w", "w", start))
        else:
            toks.append(_Tok("op", m.group(4), start))
        pos = m.end()
    toks.append(_Tok("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        # (start, end, poly) for each top-level summand
        self.top_terms: list[tuple[int, int, Poly]] = []

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> None:
        if self.cur.text != text or self.cur.kind != "op":
            found = self.cur.text or "end of input"
            raise ParseError(f"expected {text!r}, found {found!r}", self.cur.pos)
        self.take()

    def parse(self) -> Poly:
        if self.cur.kind == "end":
            raise ParseError("empty expression", 0)
        p = self.expr(top=True)
        if self.cur.kind != "end":
            raise ParseError(f"unexpected {self.cur.text!r}", self.cur.pos)
        return p

    def expr(self, top: bool = False) -> Poly:
        sign = 1
        if self.cur.kind == "op" and self.cur.text in "+-":
            sign = -1 if self.take().text == "-" else 1
        start = self.cur.pos
        t = self.term()
        if top:
            self.top_terms.append((start, self.cur.pos, t))
        acc = t if sign > 0 else -t
        while self.cur.kind == "op" and self.cur.text in "+-":
            op = self.take().text
            start = self.cur.pos
            t = self.term()
            if top:
                self.top_terms.append((start, self.cur.pos, t))
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.cur.kind == "op" and self.cur.text in "*/":
            op = self.take()
            rhs = self.factor()
            if op.text == "*":
                acc = acc * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero", op.pos)
                if rhs.degree() > 0:
                    raise ParseError("division by a non-constant", op.pos)
                acc = acc * (1 / rhs.terms[(0, 0, 0)])
        return acc

    def factor(self) -> Poly:
        base = self.primary()
        if self.cur.kind == "op" and self.cur.text == "^":
            self.take()
            tok = self.take()
            if tok.kind != "int":
                raise ParseError("expected integer exponent", tok.pos)
            base = base ** int(tok.text)
        return base

    def primary(self) -> Poly:
        tok = self.take()
        if tok.kind == "int":
            return Poly.const(Eis(int(tok.text)))
        if tok.kind == "w":
            return Poly.const(Eis(0, 1))
        if tok.kind == "var":
            return Poly.var(int(tok.text[1]))
        if tok.kind == "op" and tok.text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        found = tok.text or "end of input"
        raise ParseError(f"unexpected {found!r}", tok.pos)


def parse_poly(text: str) -> Poly:
    return _Parser(text).parse()


def parse_cubic(text: str) -> Cubic:
    """Parse and expand a ternary cubic form."""
    parser = _Parser(text)
    p = parser.parse()
    if not p.is_homogeneous(3):
        for start, end, t in parser.top_terms:
            if not t.is_homogeneous(3):
                snippet = text[start:end].strip()
                raise ParseError(f"term {snippet!r} is not of degree 3", start)
        raise ParseError("expression is not homogeneous of degree 3", 0)
    return Cubic.from_poly(p)


def parse_scalar(text: str) -> Eis:
    p = parse_poly(text)
    if p.degree() > 0:
        raise ParseError("scalar expression contains a variable", 0)
    return p.terms.get((0, 0, 0), Eis(0))


def parse_point(text: str) -> tuple[Eis, Eis, Eis]:
    """Parse ``(a : b : c)`` into a coordinate triple."""
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ParseError("point must look like (a : b : c)", 0)
    parts = s[1:-1].split(":")
    if len(parts) != 3:
        raise ParseError("point needs exactly three coordinates", 0)
    coords = tuple(parse_scalar(p) for p in parts)
    if not any(coords):
        raise ParseError("all coordinates are zero", 0)
    return coords
