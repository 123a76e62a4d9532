"""Text syntax for homogeneous forms.

    expr   ::= ['+'|'-'] term (('+'|'-') term)*
    term   ::= factor ('*' factor)*
    factor ::= atom ['^' integer]
    atom   ::= integer | '[' integer (',' integer)* ']' | 'x' index | '(' expr ')'

Whitespace is ignored.  Integers are reduced into the prime field; bracketed
vectors are extension-field elements in the modulus basis (lowest power
first).  Parentheses are accepted so products such as ``(x0+x1)*x2`` can be
written as they usually are; they expand before the homogeneity check.
"""
from __future__ import annotations

import re
from typing import Optional, Sequence

from .gf import FieldSpec
from .quadric import QuadraticForm
from .varieties import AlgebraicSet, Form

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x\d+)|(?P<op>[-+*^()\[\],]))")

Poly = dict  # sorted monomial tuple -> code


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: Optional[int] = None):
        self.pos = pos
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{where}: {text!r}" if text else message)


class _Parser:
    def __init__(self, text: str, n: int, F: FieldSpec):
        self.text = text
        self.n = n
        self.F = F
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos].isspace():
                pos += 1
                continue
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
            kind = m.lastgroup
            start = m.start(kind)
            self.tokens.append((kind, m.group(kind), start))
            pos = m.end()
        self.i = 0

    def peek(self) -> Optional[tuple[str, str, int]]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, value: Optional[str] = None) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.text, len(self.text))
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1]!r}", self.text, tok[2])
        self.i += 1
        return tok

    # polynomial helpers
    def padd(self, a: Poly, b: Poly, sign: int = 1) -> Poly:
        F = self.F
        out = dict(a)
        for m, c in b.items():
            c = c if sign > 0 else F.neg(c)
            out[m] = F.add(out.get(m, 0), c)
        return {m: c for m, c in out.items() if c}

    def pmul(self, a: Poly, b: Poly) -> Poly:
        F = self.F
        out: Poly = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = tuple(sorted(ma + mb))
                out[m] = F.add(out.get(m, 0), F.mul(ca, cb))
        return {m: c for m, c in out.items() if c}

    def parse(self) -> Poly:
        if not self.tokens:
            raise ParseError("empty form", self.text, 0)
        poly = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return poly

    def expr(self) -> Poly:
        sign = 1
        tok = self.peek()
        if tok and tok[1] in "+-" and tok[0] == "op":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        poly = self.padd({}, self.term(), sign)
        while (tok := self.peek()) is not None and tok[1] in ("+", "-"):
            self.take()
            poly = self.padd(poly, self.term(), -1 if tok[1] == "-" else 1)
        return poly

    def term(self) -> Poly:
        poly = self.factor()
        while (tok := self.peek()) is not None and tok[1] == "*":
            self.take()
            poly = self.pmul(poly, self.factor())
        return poly

    def factor(self) -> Poly:
        base = self.atom()
        tok = self.peek()
        if tok is not None and tok[1] == "^":
            self.take()
            kind, value, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer", self.text, pos)
            out: Poly = {(): 1}
            for _ in range(int(value)):
                out = self.pmul(out, base)
            return out
        return base

    def atom(self) -> Poly:
        kind, value, pos = self.take()
        F = self.F
        if kind == "num":
            c = F.from_int(int(value))
            return {(): c} if c else {}
        if kind == "var":
            idx = int(value[1:])
            if idx > self.n:
                raise ParseError(f"variable {value} out of range for n={self.n}", self.text, pos)
            return {(idx,): 1}
        if value == "(":
            poly = self.expr()
            self.take(")")
            return poly
        if value == "[":
            digits = []
            while True:
                k, v, p = self.take()
                if k != "num":
                    raise ParseError("expected an integer inside [...]", self.text, p)
                digits.append(int(v))
                k, v, p = self.take()
                if v == "]":
                    break
                if v != ",":
                    raise ParseError("expected ',' or ']'", self.text, p)
            if len(digits) > F.m:
                raise ParseError(f"coefficient vector longer than the extension degree {F.m}", self.text, pos)
            c = F.from_coeffs(digits)
            return {(): c} if c else {}
        raise ParseError(f"unexpected {value!r}", self.text, pos)


def _term_text(mono: tuple[int, ...]) -> str:
    return "*".join(f"x{i}" for i in mono) if mono else "constant"


def parse_form(text: str, n: int, F: FieldSpec, degree: Optional[int] = None) -> Form:
    """Parse a homogeneous form; ``degree=None`` infers it from the terms."""
    poly = _Parser(text, n, F).parse()
    if not poly:
        raise ParseError("the form is zero", text)
    degrees = {len(m) for m in poly}
    want = degree if degree is not None else max(degrees)
    for m in sorted(poly, key=lambda m: (len(m), m)):
        if len(m) != want:
            raise ParseError(f"term {_term_text(m)} has degree {len(m)}, expected {want}", text)
    if want < 1:
        raise ParseError("constant forms define no variety", text)
    return Form.from_dict(n, F, want, poly)


def parse_quadric(text: str, n: int, F: FieldSpec) -> QuadraticForm:
    return parse_form(text, n, F, degree=2).to_quadratic()


_DECL = re.compile(r"^\s*(deg|dim)\s*=\s*(\d+)\s*$")


def parse_algebraic_set(items: Sequence[str], n: int, F: FieldSpec) -> AlgebraicSet:
    """Form strings plus optional ``deg=<d>`` / ``dim=<s>`` declarations."""
    forms, deg, dim = [], None, None
    for item in items:
        m = _DECL.match(item)
        if m:
            if m.group(1) == "deg":
                deg = int(m.group(2))
            else:
                dim = int(m.group(2))
            continue
        forms.append(parse_form(item, n, F))
    if not forms:
        raise ParseError("no forms given")
    return AlgebraicSet(tuple(forms), declared_dim=dim, declared_deg=deg)
