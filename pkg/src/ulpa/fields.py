"""Exact coefficient fields: the rationals, prime fields, and simple extensions.

Polynomials are plain lists of coefficients, lowest degree first, with no
trailing zeros.  The zero polynomial is the empty list.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """Q when ``p`` is None, otherwise the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    def __repr__(self):
        return f"Field({self.name})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    zero = 0
    one = 1

    def __call__(self, x):
        p = self.p
        if isinstance(x, str):
            x = Fraction(x.strip())
        if p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"{x} has no image in F{p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    coerce = __call__

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a) if self.p is None else pow(int(a), -1, self.p)

    def iszero(self, a) -> bool:
        return not a

    def elements(self):
        if self.p is None:
            raise ValueError("Q is infinite")
        return range(self.p)

    def fmt(self, a) -> str:
        return str(a)

    def signed(self, a):
        """Representative used for printing: F_p residues above p/2 print as negatives."""
        if self.p is None:
            return a
        a = int(a) % self.p
        return a - self.p if a > self.p // 2 else a


QQ = Field()


def parse_field(text: str) -> Field:
    t = text.strip().lower()
    if t in ("q", "qq", "rationals"):
        return QQ
    m = re.fullmatch(r"f_?(\d+)", t)
    if not m:
        raise ValueError(f"unknown field {text!r}; use q or f<p>")
    return Field(int(m.group(1)))


# -- polynomials over a Field ------------------------------------------------

def ptrim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def padd(K, a, b):
    n = max(len(a), len(b))
    return ptrim([K.add(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)])


def psub(K, a, b):
    return padd(K, a, [K.neg(c) for c in b])


def pmul(K, a, b):
    if not a or not b:
        return []
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = K.add(out[i + j], K.mul(x, y))
    return ptrim(out)


def pdivmod(K, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = ptrim(a)
    q = [K.zero] * max(len(a) - len(b) + 1, 0)
    lead = K.inv(b[-1])
    while len(a) >= len(b):
        c = K.mul(a[-1], lead)
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] = K.sub(a[i + k], K.mul(c, y))
        a = ptrim(a)
    return ptrim(q), a


def pinv_mod(K, a, f):
    """Inverse of a modulo f by the extended Euclidean algorithm."""
    r0, r1 = list(f), ptrim(a)
    s0, s1 = [], [K.one]
    while r1:
        q, r = pdivmod(K, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(K, s0, pmul(K, q, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("not invertible modulo f")
    c = K.inv(r0[0])
    return pdivmod(K, [K.mul(c, x) for x in s0], f)[1]


def monic_polys(K: Field, degree: int):
    """All monic polynomials of the given degree over a finite field."""
    for tail in product(K.elements(), repeat=degree):
        yield list(tail) + [K.one]


# -- Laurent polynomials -------------------------------------------------------

@dataclass(frozen=True)
class LaurentPoly:
    """Finitely supported map exponent -> nonzero coefficient."""

    field: Field
    terms: tuple  # ((exponent, coefficient), ...) sorted by exponent

    @classmethod
    def from_dict(cls, field: Field, d: dict) -> "LaurentPoly":
        return cls(field, tuple(sorted((int(e), field(c)) for e, c in d.items() if field(c))))

    @classmethod
    def from_coeffs(cls, field: Field, coeffs, shift: int = 0) -> "LaurentPoly":
        return cls.from_dict(field, {i + shift: c for i, c in enumerate(coeffs)})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def low(self) -> int:
        return self.terms[0][0]

    @property
    def high(self) -> int:
        return self.terms[-1][0]

    @property
    def degree(self) -> int:
        """Degree of the canonical polynomial representative."""
        return self.high - self.low if self.terms else -1

    def canonical(self) -> "LaurentPoly":
        if not self.terms:
            raise ValueError("zero has no canonical form")
        K = self.field
        lead = K.inv(self.terms[-1][1])
        return LaurentPoly(K, tuple((e - self.low, K.mul(c, lead)) for e, c in self.terms))

    def coeffs(self) -> list:
        """Coefficient list of the canonical polynomial, lowest degree first."""
        c = self.canonical()
        out = [self.field.zero] * (c.degree + 1)
        for e, a in c.terms:
            out[e] = a
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        K = self.field
        parts = []
        for e, c in reversed(self.terms):
            c = K.signed(c)
            neg = c < 0
            mag = -c if neg else c
            if e == 0:
                body = str(mag)
            else:
                xs = "x" if e == 1 else f"x^{e}"
                body = xs if mag == 1 else f"{mag}*{xs}"
            parts.append(("-" if neg else "+", body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


_TERM = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*(\*?\s*x(?:\s*\^\s*(-?\d+))?)?\s*")


def parse_laurent(text: str, field: Field) -> LaurentPoly:
    """Parse text such as ``x^2 + x + 1`` or ``x^-1 - 2``."""
    pos, acc, t = 0, {}, text.strip()
    if not t:
        raise ValueError("empty polynomial")
    first = True
    while pos < len(t):
        m = _TERM.match(t, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"cannot parse polynomial {text!r} at {pos}")
        if not first and not m.group(1):
            raise ValueError(f"missing operator in {text!r} at {pos}")
        sign = -1 if m.group(1) == "-" else 1
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3):
            exp = int(m.group(4)) if m.group(4) is not None else 1
        else:
            exp = 0
        acc[exp] = acc.get(exp, 0) + sign * coef
        pos = m.end()
        first = False
    f = LaurentPoly.from_dict(field, acc)
    if f.is_zero():
        raise ValueError("zero polynomial")
    return f


# -- simple extensions F = K[x]/(f) -------------------------------------------

class ResidueField:
    """K[x]/(f) for an irreducible f; elements are coefficient tuples of length < deg f."""

    def __init__(self, f: LaurentPoly):
        self.base = f.field
        self.modulus = f.coeffs()
        self.poly = f.canonical()
        if len(self.modulus) < 2:
            raise ValueError("modulus must have positive degree")

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def zero(self):
        return ()

    @property
    def one(self):
        return (self.base.one,)

    @property
    def xbar(self):
        return self._red([self.base.zero, self.base.one])

    def _red(self, a):
        return tuple(pdivmod(self.base, ptrim(a), self.modulus)[1])

    def __call__(self, c):
        return self._red([self.base(c)])

    coerce = __call__

    def add(self, a, b):
        return tuple(padd(self.base, a, b))

    def sub(self, a, b):
        return tuple(psub(self.base, a, b))

    def neg(self, a):
        return tuple(self.base.neg(c) for c in a)

    def mul(self, a, b):
        return self._red(pmul(self.base, a, b))

    def inv(self, a):
        return tuple(pinv_mod(self.base, list(a), self.modulus))

    def power(self, a, n: int):
        if n < 0:
            a, n = self.inv(a), -n
        out = self.one
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def iszero(self, a) -> bool:
        return not a

    def evaluate(self, g: LaurentPoly, at):
        out = self.zero
        for e, c in g.terms:
            out = self.add(out, self.mul(self(c), self.power(at, e)))
        return out

    def fmt(self, a) -> str:
        if not a:
            return "0"
        K = self.base
        return str(LaurentPoly.from_dict(K, dict(enumerate(a)))).replace("x", "xbar")
