"""Exact arithmetic in the Leavitt path algebra of a finitely presented ultragraph.

Elements are finite linear combinations of monomials s_alpha p_v s_beta^*,
where alpha and beta are (possibly empty) paths and v is a single vertex in
r(alpha) and r(beta).  Products of monomials are again monomials or zero.
The Cuntz-Krieger relation at a regular vertex w is oriented as a rewrite
rule that removes the designated pair (gamma(w), v0(w)) from the tails of
alpha and beta; irreducible monomials span the algebra.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import NamedTuple

from .errors import CycleHasExit, FieldMismatch, ImproperPair, NotInCorner, SpecMismatch
from .fields import QQ, Field, LaurentPoly
from .ultragraph import (Cycle, EdgeRef, Ultragraph, check_cycle, cycle_has_exit,
                         enumerate_cycles)


class Monomial(NamedTuple):
    alpha: tuple
    vertex: str
    beta: tuple

    @property
    def degree(self) -> int:
        return len(self.alpha) - len(self.beta)

    def star(self) -> "Monomial":
        return Monomial(self.beta, self.vertex, self.alpha)


def mono_key(m: Monomial):
    return (len(m.alpha) + len(m.beta), len(m.alpha), m.alpha, m.vertex, m.beta)


@dataclass(frozen=True)
class DesignatedChoice:
    """gamma(w) and v0(w) for every regular vertex w."""

    pairs: tuple  # ((w, gamma edge, v0), ...)

    @classmethod
    def default(cls, g: Ultragraph) -> "DesignatedChoice":
        out = []
        for w in g.vertices:
            if g.is_regular(w):
                c = g.out_classes[w][0]
                out.append((w, EdgeRef(c.id, 0), g.vsort(c.range)[0]))
        return cls(tuple(out))

    def as_dict(self) -> dict:
        return {w: (e, v0) for w, e, v0 in self.pairs}


class _Rule(NamedTuple):
    w: str
    v0: str
    others: tuple  # (edge, vertex) pairs other than (gamma, v0)


class LeavittPathAlgebra:
    def __init__(self, graph: Ultragraph, field: Field = QQ, choice: DesignatedChoice | None = None):
        self.graph = graph
        self.field = field
        self.choice = choice or DesignatedChoice.default(graph)
        rules = {}
        for w, gamma, v0 in self.choice.pairs:
            if not graph.is_regular(w) or graph.source(gamma) != w or v0 not in graph.range(gamma):
                raise ValueError(f"bad designated pair at {w}")
            others = tuple(
                (e, u)
                for e in graph.edges_from(w)
                for u in graph.vsort(graph.range(e))
                if (e, u) != (gamma, v0)
            )
            rules[gamma] = _Rule(w, v0, others)
        self._rules = rules

    def __repr__(self):
        return f"LeavittPathAlgebra({len(self.graph.vertices)} vertices, {self.field.name})"

    # -- constructors ------------------------------------------------------
    def element(self, terms=None) -> "Element":
        return Element(self, terms or {})

    def zero(self) -> "Element":
        return Element(self, {})

    def monomial(self, alpha, v, beta, coeff=1) -> "Element":
        g = self.graph
        alpha = tuple(EdgeRef(*e) for e in alpha)
        beta = tuple(EdgeRef(*e) for e in beta)
        g.check_vertex(v)
        for path in (alpha, beta):
            if path and (not g.is_path(path) or v not in g.range(path[-1])):
                raise ValueError(f"invalid monomial ({alpha}, {v}, {beta})")
        return Element(self, {Monomial(alpha, v, beta): self.field(coeff)})

    def p(self, *vs) -> "Element":
        """Vertex projection; several arguments (or one iterable) atomize a set."""
        if len(vs) == 1 and not isinstance(vs[0], str):
            vs = tuple(vs[0])
        terms = {}
        for v in set(vs):
            self.graph.check_vertex(v)
            terms[Monomial((), v, ())] = self.field.one
        return Element(self, terms)

    def _edge(self, e) -> EdgeRef:
        if isinstance(e, str):
            e = EdgeRef(e, 0)
        return self.graph.check_edge(EdgeRef(*e))

    def s(self, e) -> "Element":
        e = self._edge(e)
        return Element(self, {Monomial((e,), u, ()): self.field.one for u in self.graph.range(e)})

    def st(self, e) -> "Element":
        e = self._edge(e)
        return Element(self, {Monomial((), u, (e,)): self.field.one for u in self.graph.range(e)})

    def scalar(self, c) -> "Element":
        return self.p(self.graph.vertices) * self.field(c)

    def unit(self) -> "Element":
        return self.p(self.graph.vertices)

    def s_path(self, edges) -> "Element":
        out = self.unit()
        for e in edges:
            out = out * self.s(e)
        return out

    # -- core arithmetic ---------------------------------------------------
    def mono_mul(self, m1: Monomial, m2: Monomial):
        a, u, b = m1
        c, w, d = m2
        lb, lc = len(b), len(c)
        if lb == lc:
            if b != c or u != w:
                return None
            return Monomial(a, u, d)
        if lb > lc:
            if b[:lc] != c:
                return None
            rest = b[lc:]
            if self.graph.source(rest[0]) != w:
                return None
            return Monomial(a, u, d + rest)
        if c[:lb] != b:
            return None
        rest = c[lb:]
        if self.graph.source(rest[0]) != u:
            return None
        return Monomial(a + rest, w, d)

    def mul_raw(self, x: "Element", y: "Element") -> "Element":
        self._check(x, y)
        K = self.field
        out = {}
        for m1, c1 in x.terms.items():
            for m2, c2 in y.terms.items():
                m = self.mono_mul(m1, m2)
                if m is None:
                    continue
                c = K.add(out.get(m, K.zero), K.mul(c1, c2))
                if c:
                    out[m] = c
                else:
                    out.pop(m, None)
        return Element(self, out)

    def mul(self, x: "Element", y: "Element") -> "Element":
        return self.normal_form(self.mul_raw(x, y))

    def _check(self, x, y):
        if x.algebra is y.algebra:
            return
        if x.algebra.graph != y.algebra.graph:
            raise SpecMismatch("elements live over different ultragraphs")
        if x.algebra.field != y.algebra.field:
            raise FieldMismatch(f"{x.algebra.field.name} vs {y.algebra.field.name}")
        if x.algebra.choice != y.algebra.choice:
            raise SpecMismatch("elements use different designated choices")

    # -- normal form -------------------------------------------------------
    def reducible(self, m: Monomial) -> bool:
        a, u, b = m
        if not a or not b or a[-1] != b[-1]:
            return False
        r = self._rules.get(a[-1])
        return r is not None and r.v0 == u

    def rewrite(self, m: Monomial):
        """One rewrite step: list of (monomial, sign) replacing m."""
        a, u, b = m
        r = self._rules[a[-1]]
        a2, b2 = a[:-1], b[:-1]
        out = [(Monomial(a2, r.w, b2), 1)]
        for e, x in r.others:
            out.append((Monomial(a2 + (e,), x, b2 + (e,)), -1))
        return out

    def normal_form(self, x: "Element", rng: random.Random | None = None) -> "Element":
        K = self.field
        terms = dict(x.terms)
        pending = [m for m in terms if self.reducible(m)]
        if rng is None:
            pending.sort(key=mono_key)
        while pending:
            m = pending.pop(rng.randrange(len(pending))) if rng else pending.pop()
            c = terms.pop(m, None)
            if c is None:
                continue
            for m2, sign in self.rewrite(m):
                add = c if sign > 0 else K.neg(c)
                old = terms.get(m2)
                new = K.add(old, add) if old is not None else add
                if new:
                    terms[m2] = new
                    if old is None and self.reducible(m2):
                        pending.append(m2)
                else:
                    terms.pop(m2, None)
        return Element(self, terms)

    def is_zero(self, x: "Element") -> bool:
        return not self.normal_form(x).terms

    def equals(self, x: "Element", y: "Element") -> bool:
        self._check(x, y)
        return self.is_zero(x - y)

    def star(self, x: "Element") -> "Element":
        return Element(self, {m.star(): c for m, c in x.terms.items()})

    def homogeneous_components(self, x: "Element") -> dict:
        out = {}
        for m, c in self.normal_form(x).terms.items():
            out.setdefault(m.degree, {})[m] = c
        return {d: Element(self, t) for d, t in sorted(out.items())}


class Element:
    """Immutable linear combination of monomials."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LeavittPathAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = {m: c for m, c in terms.items() if c}

    def _coerce(self, other):
        if isinstance(other, Element):
            self.algebra._check(self, other)
            return other
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        K = self.algebra.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = K.add(out.get(m, K.zero), c)
        return Element(self.algebra, out)

    def __neg__(self):
        K = self.algebra.field
        return Element(self.algebra, {m: K.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def scale(self, k):
        K = self.algebra.field
        k = K(k)
        return Element(self.algebra, {m: K.mul(k, c) for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.algebra.mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, Element):
            return self.algebra.mul(other, self)
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 1:
            return self.algebra.unit() if n == 0 else NotImplemented
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        try:
            return self.algebra.equals(self, other)
        except (SpecMismatch, FieldMismatch):
            return False

    __hash__ = None

    def __bool__(self):
        return not self.algebra.is_zero(self)

    def is_zero(self) -> bool:
        return self.algebra.is_zero(self)

    def star(self) -> "Element":
        return self.algebra.star(self)

    def normal_form(self, rng=None) -> "Element":
        return self.algebra.normal_form(self, rng)

    def degrees(self) -> set:
        return {m.degree for m in self.terms}

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: mono_key(t[0]))

    def __repr__(self):
        from .expr import format_element
        return format_element(self)

    __str__ = __repr__


# -- module level operations ----------------------------------------------------

def algebra_for(g_or_alg, field: Field = QQ) -> LeavittPathAlgebra:
    if isinstance(g_or_alg, LeavittPathAlgebra):
        return g_or_alg
    return LeavittPathAlgebra(g_or_alg, field)


def atomize(alg: LeavittPathAlgebra, A) -> Element:
    return alg.p(tuple(A))


def mul(x: Element, y: Element) -> Element:
    return x.algebra.mul(x, y)


def star(x: Element) -> Element:
    return x.algebra.star(x)


def normal_form(x: Element, choice: DesignatedChoice | None = None, rng=None) -> Element:
    alg = x.algebra
    if choice is not None and choice != alg.choice:
        alt = LeavittPathAlgebra(alg.graph, alg.field, choice)
        return alt.normal_form(Element(alt, x.terms), rng)
    return alg.normal_form(x, rng)


def is_zero(x: Element) -> bool:
    return x.algebra.is_zero(x)


def equals(x: Element, y: Element) -> bool:
    return x.algebra.equals(x, y)


def homogeneous_components(x: Element) -> dict:
    return x.algebra.homogeneous_components(x)


# -- defining relations ------------------------------------------------------

@dataclass
class RelationReport:
    checked: list  # (relation id, instance text)
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures

    def counts(self) -> dict:
        out = {}
        for rel, _ in self.checked:
            out[rel] = out.get(rel, 0) + 1
        return out


def relation_instances(alg: LeavittPathAlgebra):
    """Yield (relation id, description, element that must vanish)."""
    g = alg.graph
    fam = []
    for v in g.vertices:
        fam.append(frozenset([v]))
    for c in g.classes:
        if c.range not in fam:
            fam.append(c.range)
    fam.append(frozenset())

    def P(A):
        return alg.p(tuple(A))

    for A, B in product(fam, repeat=2):
        da, db = "{%s}" % ",".join(g.vsort(A)), "{%s}" % ",".join(g.vsort(B))
        yield "1", f"p_{da} p_{db} = p_(A&B)", P(A) * P(B) - P(A & B)
        yield "1", f"p_{da}+p_{db} = p_(A|B)+p_(A&B)", P(A | B) - P(A) - P(B) + P(A & B)
    edges = []
    for c in sorted(g.classes, key=lambda c: c.id):
        edges.append(EdgeRef(c.id, 0))
        if c.is_omega or c.multiplicity > 1:
            edges.append(EdgeRef(c.id, 1))
    for e in edges:
        s, st = alg.s(e), alg.st(e)
        src, rng = P([g.source(e)]), P(g.range(e))
        yield "2", f"p_s({e}) s_{e} = s_{e}", src * s - s
        yield "2", f"s_{e} p_r({e}) = s_{e}", s * rng - s
        yield "2", f"p_r({e}) s*_{e} = s*_{e}", rng * st - st
        yield "2", f"s*_{e} p_s({e}) = s*_{e}", st * src - st
    for e, f in product(edges, repeat=2):
        lhs = alg.st(e) * alg.s(f)
        rhs = P(g.range(e)) if e == f else alg.zero()
        yield "3", f"s*_{e} s_{f}", lhs - rhs
    for v in g.vertices:
        if g.is_regular(v):
            x = alg.p(v)
            for e in g.edges_from(v):
                x = x - alg.s(e) * alg.st(e)
            yield "4", f"p_{v} = sum s_e s*_e", x


def check_defining_relations(g_or_alg, choice: DesignatedChoice | None = None, field: Field = QQ) -> RelationReport:
    alg = algebra_for(g_or_alg, field)
    if choice is not None and choice != alg.choice:
        alg = LeavittPathAlgebra(alg.graph, alg.field, choice)
    checked, failures = [], []
    for rel, desc, x in relation_instances(alg):
        checked.append((rel, desc))
        if not alg.is_zero(x):
            failures.append((rel, desc))
    return RelationReport(checked, failures)


# -- quotient homomorphism -----------------------------------------------------

def quotient_algebra(alg: LeavittPathAlgebra, pair):
    from .lattice import quotient
    q = quotient(alg.graph, pair)
    return q, LeavittPathAlgebra(q.graph, alg.field)


def quotient_map(x: Element, pair, target: LeavittPathAlgebra | None = None, q=None) -> Element:
    from .lattice import breaking_vertices, quotient
    alg = x.algebra
    g = alg.graph
    W = pair.W
    if len(W) == len(g.vertices):
        raise ImproperPair("W is the whole vertex set")
    if q is None:
        q = quotient(g, pair)
    if target is None:
        target = LeavittPathAlgebra(q.graph, alg.field)
    primed = breaking_vertices(g, W) - pair.S
    K = alg.field
    out = {}

    def killed(path):
        return any(g.range(e) <= W for e in path)

    for (a, v, b), c in x.terms.items():
        if v in W or killed(a) or killed(b):
            continue
        images = [v]
        if v in primed:
            images.append(q.primed(v))
        for u in images:
            m = Monomial(a, u, b)
            out[m] = K.add(out.get(m, K.zero), c)
    return target.normal_form(Element(target, out))


def graded_membership(x: Element, pair) -> bool:
    return quotient_map(x, pair).is_zero()


# -- corners and generator shapes --------------------------------------------

def corner_laurent(x: Element, c: Cycle) -> LaurentPoly:
    alg = x.algebra
    g = alg.graph
    check_cycle(g, c)
    if cycle_has_exit(g, c):
        raise CycleHasExit(str(c))
    v = c.base(g)
    n = len(c.edges)
    acc = {}
    K = alg.field
    for (a, u, b), coef in alg.normal_form(x).terms.items():
        if u != v or len(a) % n or len(b) % n:
            raise NotInCorner(f"monomial outside the corner at {v}")
        if a != c.edges * (len(a) // n) or b != c.edges * (len(b) // n):
            raise NotInCorner(f"monomial outside the corner at {v}")
        k = (len(a) - len(b)) // n
        acc[k] = K.add(acc.get(k, K.zero), coef)
    return LaurentPoly.from_dict(K, acc)


@dataclass(frozen=True)
class GeneratorMatch:
    A: tuple
    v: str
    S: tuple
    cycle: Cycle | None
    coefficients: tuple  # ((r, k), ...)


def _subsets(items):
    items = list(items)
    for n in range(len(items) + 1):
        for mask in range(1 << len(items)):
            if bin(mask).count("1") == n:
                yield tuple(x for i, x in enumerate(items) if mask >> i & 1)


def _concrete_cycles_at(g: Ultragraph, v, support_edges) -> list:
    """Concrete cycles based at v, with indices drawn from index 0 and the support."""
    out = []
    for shape in enumerate_cycles(g):
        if v not in shape.vertices(g):
            continue
        shape = shape.based_at(g, v)
        choices = []
        for e in shape.edges:
            idx = {0} | {f.index for f in support_edges if f.cls == e.cls}
            choices.append(sorted(EdgeRef(e.cls, i) for i in idx))
        for combo in product(*choices):
            out.append(Cycle(tuple(combo)))
    return out


def _cycle_count(g: Ultragraph, shape: Cycle):
    n = 1
    for e in shape.edges:
        m = g.edge_class(e).multiplicity
        if not isinstance(m, int):
            return None
        n *= m
    return n


def matches_generator_form(x: Element):
    """Find (A, v, S, c, k_i, r_i) with x = (p_A + sum k_i s_c^{r_i})(p_A - sum_{e in S} s_e s_e*).

    Returns a GeneratorMatch or None.
    """
    alg = x.algebra
    g = alg.graph
    x = alg.normal_form(x)
    comps = alg.homogeneous_components(x)
    if any(d < 0 for d in comps):
        return None
    support_edges = {e for m in x.terms for e in m.alpha + m.beta}
    x0 = comps.get(0, alg.zero())
    positive = {d: y for d, y in comps.items() if d > 0}
    for A in _subsets(g.vertices):
        if not A:
            continue
        pA = alg.p(A)
        for v in A:
            outs = [e for e in g.edges_from(v, cap=0)]
            outs += sorted(e for e in support_edges if g.source(e) == v and g.edge_class(e).is_omega)
            for S in _subsets(outs):
                y0 = pA
                for e in S:
                    y0 = y0 - alg.s(e) * alg.st(e)
                if not alg.equals(x0, y0):
                    continue
                if not positive:
                    return GeneratorMatch(g.vsort(A), v, S, None, ())
                for c in _concrete_cycles_at(g, v, support_edges):
                    if not set(A) <= g.range(c.edges[-1]):
                        continue
                    rivals = [d for d in enumerate_cycles(g) if v in d.vertices(g)
                              and set(A) <= g.range(d.based_at(g, v).edges[-1])]
                    if len(rivals) != 1 or _cycle_count(g, rivals[0]) != 1:
                        continue
                    coeffs = _fit_powers(alg, c, y0, positive)
                    if coeffs is not None:
                        return GeneratorMatch(g.vsort(A), v, S, c, coeffs)
    return None


def _fit_powers(alg, c: Cycle, y0: Element, positive: dict):
    n = len(c.edges)
    K = alg.field
    out = []
    for d, xd in sorted(positive.items()):
        if d % n:
            return None
        r = d // n
        base = alg.s_path(c.edges * r) * y0
        if base.is_zero():
            return None
        m, cb = base.sorted_terms()[0]
        cx = xd.terms.get(m)
        if cx is None:
            return None
        k = K.mul(cx, K.inv(cb))
        if not alg.equals(xd, base.scale(k)):
            return None
        out.append((r, k))
    return tuple(out)
