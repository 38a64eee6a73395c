"""Surface syntax for algebra elements.

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)?
    atom   := scalar | 'p' '(' vset ')' | 's' '(' edgeref ')' | 'st' '(' edgeref ')' | '(' expr ')'
    vset   := '{' id (',' id)* '}'
    edgeref:= classid (':' nat)?
    scalar := nat | nat '/' nat

A bare scalar c denotes c times the unit (the sum of all vertex projections).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ExprSyntaxError, ScalarNotInField, UnknownEdge, UnknownSymbol, UnknownVertex
from .ultragraph import EdgeRef


@dataclass(frozen=True)
class Scalar:
    value: Fraction


@dataclass(frozen=True)
class Proj:
    vertices: tuple


@dataclass(frozen=True)
class Gen:
    edge: EdgeRef


@dataclass(frozen=True)
class Star:
    node: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Prod:
    factors: tuple


@dataclass(frozen=True)
class Sum:
    terms: tuple  # ((sign, node), ...)


_NAME = re.compile(r"[A-Za-z0-9_'.]+")
_NAT = re.compile(r"\d+")


class _Parser:
    def __init__(self, text: str):
        self.t = text
        self.i = 0

    def ws(self):
        while self.i < len(self.t) and self.t[self.i].isspace():
            self.i += 1

    def peek(self, s: str) -> bool:
        self.ws()
        return self.t.startswith(s, self.i)

    def eat(self, s: str):
        if not self.peek(s):
            got = self.t[self.i:self.i + 8] or "end of input"
            raise ExprSyntaxError(f"expected {s!r}, got {got!r}", self.i)
        self.i += len(s)

    def nat(self) -> int:
        self.ws()
        m = _NAT.match(self.t, self.i)
        if not m:
            raise ExprSyntaxError("expected a natural number", self.i)
        self.i = m.end()
        return int(m.group())

    def name(self) -> str:
        self.ws()
        m = _NAME.match(self.t, self.i)
        if not m:
            raise ExprSyntaxError("expected an identifier", self.i)
        self.i = m.end()
        return m.group()

    def expr(self):
        terms = []
        sign = 1
        if self.peek("-"):
            self.eat("-")
            sign = -1
        terms.append((sign, self.term()))
        while True:
            if self.peek("+"):
                self.eat("+")
                terms.append((1, self.term()))
            elif self.peek("-"):
                self.eat("-")
                terms.append((-1, self.term()))
            else:
                break
        return terms[0][1] if len(terms) == 1 and terms[0][0] == 1 else Sum(tuple(terms))

    def term(self):
        fs = [self.factor()]
        while self.peek("*"):
            self.eat("*")
            fs.append(self.factor())
        return fs[0] if len(fs) == 1 else Prod(tuple(fs))

    def factor(self):
        a = self.atom()
        if self.peek("^"):
            self.eat("^")
            return Pow(a, self.nat())
        return a

    def edgeref(self) -> EdgeRef:
        cls = self.name()
        idx = 0
        if self.peek(":"):
            self.eat(":")
            idx = self.nat()
        return EdgeRef(cls, idx)

    def atom(self):
        self.ws()
        if self.peek("("):
            self.eat("(")
            node = self.expr()
            self.eat(")")
            return node
        m = _NAT.match(self.t, self.i)
        if m:
            num = self.nat()
            if self.peek("/"):
                self.eat("/")
                den = self.nat()
                if den == 0:
                    raise ExprSyntaxError("zero denominator", self.i)
                return Scalar(Fraction(num, den))
            return Scalar(Fraction(num))
        for kw in ("st", "s", "p"):
            if self.t.startswith(kw, self.i):
                j = self.i + len(kw)
                while j < len(self.t) and self.t[j].isspace():
                    j += 1
                if j < len(self.t) and self.t[j] == "(":
                    self.i = j + 1
                    if kw == "p":
                        self.eat("{")
                        vs = [self.name()]
                        while self.peek(","):
                            self.eat(",")
                            vs.append(self.name())
                        self.eat("}")
                        self.eat(")")
                        return Proj(tuple(vs))
                    e = self.edgeref()
                    self.eat(")")
                    return Gen(e) if kw == "s" else Star(Gen(e))
        raise ExprSyntaxError("expected a scalar, p(...), s(...), st(...) or '('", self.i)


def parse_ast(text: str):
    p = _Parser(text)
    node = p.expr()
    p.ws()
    if p.i != len(text):
        raise ExprSyntaxError(f"unexpected {text[p.i:p.i + 8]!r}", p.i)
    return node


def evaluate(node, alg):
    try:
        return _eval(node, alg)
    except UnknownVertex as exc:
        raise UnknownSymbol(f"unknown vertex {exc}") from None
    except UnknownEdge as exc:
        raise UnknownSymbol(f"unknown edge {exc}") from None
    except ZeroDivisionError as exc:
        raise ScalarNotInField(str(exc)) from None


def _eval(node, alg):
    if isinstance(node, Scalar):
        return alg.scalar(node.value)
    if isinstance(node, Proj):
        return alg.p(node.vertices)
    if isinstance(node, Gen):
        return alg.s(node.edge)
    if isinstance(node, Star):
        return alg.star(_eval(node.node, alg))
    if isinstance(node, Pow):
        return _eval(node.base, alg) ** node.exponent
    if isinstance(node, Prod):
        out = _eval(node.factors[0], alg)
        for f in node.factors[1:]:
            out = out * _eval(f, alg)
        return out
    if isinstance(node, Sum):
        out = alg.zero()
        for sign, t in node.terms:
            y = _eval(t, alg)
            out = out + y if sign > 0 else out - y
        return out
    raise TypeError(node)


def parse_expr(text: str, g_or_alg, field=None):
    from .algebra import LeavittPathAlgebra
    from .fields import QQ
    if isinstance(g_or_alg, LeavittPathAlgebra):
        alg = g_or_alg
    else:
        alg = LeavittPathAlgebra(g_or_alg, field or QQ)
    return alg.normal_form(evaluate(parse_ast(text), alg))


def format_monomial(m) -> str:
    a, v, b = m
    parts = [f"s({e})" for e in a] + ["p({%s})" % v] + [f"st({e})" for e in reversed(b)]
    return "*".join(parts)


def format_element(x) -> str:
    K = x.algebra.field
    items = x.sorted_terms()
    if not items:
        return "0"
    out = []
    for i, (m, c) in enumerate(items):
        c = K.signed(c)
        neg = c < 0
        mag = -c if neg else c
        body = format_monomial(m)
        if mag != 1:
            body = f"{mag}*{body}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)
