"""Prime, primitive and simple: algebra-level verdicts and ideal enumeration."""
from __future__ import annotations

from dataclasses import dataclass, field as dfield
from fractions import Fraction

from .errors import ImproperPair, NotIrreducible, UnsupportedDegree, UnsupportedEnumeration
from .fields import Field, LaurentPoly, monic_polys, pdivmod
from .lattice import (AdmissiblePair, admissible_pairs, breaking_vertices, check_admissible,
                      enumerate_hs, h_of_vertex)
from .ultragraph import (Cycle, Ultragraph, big_m, cycle_has_exit, dd_witness, enumerate_cycles,
                         exclusive_cycles)


@dataclass(frozen=True)
class Verdict:
    value: bool
    witness: object = None

    def __bool__(self):
        return self.value


@dataclass(frozen=True)
class Graded:
    pair: AdmissiblePair
    case: str | None = dfield(default=None, compare=False)

    def show(self, g: Ultragraph) -> str:
        return f"Graded{self.pair.show(g)}"


@dataclass(frozen=True)
class NonGradedPrime:
    cycle: Cycle
    f: LaurentPoly

    def __post_init__(self):
        object.__setattr__(self, "f", self.f.canonical())

    def pair(self, g: Ultragraph) -> AdmissiblePair:
        W = h_of_vertex(g, self.cycle.base(g))
        return AdmissiblePair(W, breaking_vertices(g, W))

    def show(self, g: Ultragraph) -> str:
        return f"NonGraded({self.cycle}, {self.f})"


def descriptor_key(g: Ultragraph, d):
    if isinstance(d, Graded):
        return (0, d.pair.key(g))
    return (1, d.cycle, d.f.degree, tuple(d.f.coeffs()))


# -- Laurent irreducibility ----------------------------------------------------

def _divisors(n: int):
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


def _has_rational_root(coeffs) -> bool:
    den = 1
    for c in coeffs:
        den = den * Fraction(c).denominator // _gcd(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in coeffs]
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if sum(c * r ** i for i, c in enumerate(ints)) == 0:
                    return True
    return False


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def is_irreducible_laurent(f: LaurentPoly) -> bool:
    if f.is_zero():
        return False
    K = f.field
    c = f.coeffs()
    n = len(c) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if K.p is None:
        if n > 3:
            raise UnsupportedDegree(f"irreducibility over Q is decided only up to degree 3, got {n}")
        return not _has_rational_root(c)
    for d in range(1, n // 2 + 1):
        for q in monic_polys(K, d):
            if not pdivmod(K, c, q)[1]:
                return False
    return True


def irreducible_laurents(field: Field, max_degree: int) -> list:
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    if field.p is None:
        raise UnsupportedEnumeration("Q has infinitely many irreducibles; supply explicit polynomials")
    out = []
    for n in range(1, max_degree + 1):
        for c in monic_polys(field, n):
            if c[0] and is_irreducible_laurent(LaurentPoly.from_coeffs(field, c)):
                out.append(LaurentPoly.from_coeffs(field, c))
    return out


def check_irreducible(f: LaurentPoly) -> LaurentPoly:
    if not is_irreducible_laurent(f):
        raise NotIrreducible(str(f))
    return f.canonical()


# -- algebra level ---------------------------------------------------------------

def exitless_cycle(g: Ultragraph):
    for c in enumerate_cycles(g):
        if not cycle_has_exit(g, c):
            return c
    return None


def is_prime_algebra(g: Ultragraph) -> Verdict:
    w = dd_witness(g)
    return Verdict(w is None, w)


def is_primitive_algebra(g: Ultragraph) -> Verdict:
    w = dd_witness(g)
    if w is not None:
        return Verdict(False, ("not downward directed", w))
    c = exitless_cycle(g)
    if c is not None:
        return Verdict(False, ("cycle without exit", c))
    return Verdict(True)


def is_simple_algebra(g: Ultragraph) -> Verdict:
    for W in enumerate_hs(g):
        if 0 < len(W) < len(g.vertices):
            return Verdict(False, ("proper hereditary saturated set", g.vsort(W)))
    c = exitless_cycle(g)
    if c is not None:
        return Verdict(False, ("cycle without exit", c))
    return Verdict(True)


# -- graded primes -----------------------------------------------------------------

@dataclass(frozen=True)
class GradedClass:
    prime: bool
    case: str | None = None
    witness: object = None


def classify_graded(g: Ultragraph, pair: AdmissiblePair) -> GradedClass:
    check_admissible(g, pair)
    W = pair.W
    if len(W) == len(g.vertices):
        raise ImproperPair("W is the whole vertex set")
    rest = frozenset(g.vertices) - W
    unbroken = g.vsort(breaking_vertices(g, W) - pair.S)
    if len(unbroken) >= 2:
        return GradedClass(False, None, ("two breaking vertices outside S", unbroken[:2]))
    if not unbroken:
        w = dd_witness(g, rest)
        if w is None:
            return GradedClass(True, "i")
        return GradedClass(False, None, ("complement not downward directed", w))
    b = unbroken[0]
    missing = g.vsort(rest - big_m(g, b))
    if not missing:
        return GradedClass(True, "ii", b)
    return GradedClass(False, None, ("complement is not M(%s)" % b, missing[0]))


def cycles_outside(g: Ultragraph, W) -> list:
    return [c for c in enumerate_cycles(g) if not set(c.vertices(g)) & W]


def has_exit_outside(g: Ultragraph, c: Cycle, W) -> bool:
    """Exit of c that survives in the complement of W."""
    n = len(c.edges)
    for i, e in enumerate(c.edges):
        nxt = c.edges[(i + 1) % n]
        if not (g.range(e) - {g.source(nxt)}) <= W:
            return True
        for cl in g.out_classes[g.source(e)]:
            if cl.range <= W:
                continue
            if cl.id != e.cls or cl.is_omega or cl.multiplicity > 1:
                return True
    return False


def enumerate_graded_primes(g: Ultragraph) -> list:
    out = []
    for pair in admissible_pairs(g, proper=True):
        r = classify_graded(g, pair)
        if r.prime:
            out.append(Graded(pair, r.case))
    return out


def _nongraded(g: Ultragraph, field: Field, max_degree: int, polys=None) -> list:
    cycles = exclusive_cycles(g)
    if not cycles:
        return []
    if polys is None:
        polys = irreducible_laurents(field, max_degree)
    else:
        polys = [check_irreducible(f) for f in polys]
    return [NonGradedPrime(c, f) for c in cycles for f in polys]


def enumerate_primes(g: Ultragraph, field: Field, max_degree: int = 1, polys=None) -> list:
    out = enumerate_graded_primes(g) + _nongraded(g, field, max_degree, polys)
    return sorted(out, key=lambda d: descriptor_key(g, d))


def enumerate_primitives(g: Ultragraph, field: Field, max_degree: int = 1, polys=None) -> list:
    out = []
    for d in enumerate_graded_primes(g):
        if d.case == "ii":
            out.append(d)
        elif all(has_exit_outside(g, c, d.pair.W) for c in cycles_outside(g, d.pair.W)):
            out.append(Graded(d.pair, "iii"))
    out += _nongraded(g, field, max_degree, polys)
    return sorted(out, key=lambda d: descriptor_key(g, d))


def primes_all_graded(g: Ultragraph, field: Field, max_degree: int = 1) -> bool:
    return not any(isinstance(d, NonGradedPrime) for d in enumerate_primes(g, field, max_degree))
