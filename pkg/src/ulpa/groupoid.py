"""Tight filters, the shift map, isotropy and induced module actions.

A filter is described by its word.  Infinite words are eventually periodic
(prefix, cycle, phase), mirroring TailElem; finite words end at a sink or an
infinite emitter (the anchor).  Germs are triples (xi, k, eta) with
sigma^m(xi) = sigma^n(eta) and k = m - n.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .chen import (ChenModule, InfEmitterMod, IntoVertex, PeriodicPathMod, SinkMod, TailElem,
                   TwistedMod, describe)
from .errors import EmptyWord, InvalidGerm, MismatchFound
from .fields import QQ, Field
from .ultragraph import Cycle, EdgeRef, Ultragraph, enumerate_cycles, is_cycle, paths_into


class SinkAnchor(NamedTuple):
    v: str


class EmitterAnchor(NamedTuple):
    v: str


@dataclass(frozen=True)
class FinType:
    alpha: tuple
    anchor: object

    def __str__(self):
        kind = "Sink" if isinstance(self.anchor, SinkAnchor) else "Emitter"
        word = ".".join(str(e) for e in self.alpha) or "-"
        return f"Fin({word}; {kind} {self.anchor.v})"


@dataclass(frozen=True)
class InfType:
    prefix: tuple
    cycle: Cycle  # canonical rotation
    phase: int

    def __str__(self):
        word = ".".join(str(e) for e in self.prefix) or "-"
        return f"Inf({word}; {self.cycle}@{self.phase})"


def _canon_tail(cycle: Cycle, prefix, phase) -> InfType:
    c = cycle.edges
    L = len(c)
    prefix = tuple(prefix)
    phase %= L
    while prefix and prefix[-1] == c[(phase - 1) % L]:
        prefix = prefix[:-1]
        phase = (phase - 1) % L
    return InfType(prefix, cycle, phase)


def inf_filter(g: Ultragraph, rho, c: Cycle) -> InfType:
    """The filter of the infinite path rho c c c ..."""
    rho = tuple(EdgeRef(*e) for e in rho)
    if not is_cycle(g, c) or (rho and not g.is_path(rho + c.edges)):
        raise ValueError("rho c^infinity is not a path")
    c0 = c.canonical()
    return _canon_tail(c0, rho, c0.edges.index(c.edges[0]))


def fin_filter(g: Ultragraph, alpha, v) -> FinType:
    alpha = tuple(EdgeRef(*e) for e in alpha)
    if alpha and (not g.is_path(alpha) or v not in g.range(alpha[-1])):
        raise ValueError("anchor must lie in the range of the word")
    if g.is_sink(v):
        return FinType(alpha, SinkAnchor(v))
    if g.is_infinite_emitter(v):
        return FinType(alpha, EmitterAnchor(v))
    raise ValueError(f"{v} is regular; finite words must end at a sink or an infinite emitter")


def word_length(xi):
    return len(xi.alpha) if isinstance(xi, FinType) else None


def first_vertex(g: Ultragraph, xi):
    if isinstance(xi, FinType):
        return g.source(xi.alpha[0]) if xi.alpha else xi.anchor.v
    return g.source(xi.prefix[0]) if xi.prefix else g.source(xi.cycle.edges[xi.phase])


def finite_type_filters(g: Ultragraph, max_len: int, cap: int | None = None) -> list:
    cap = max(max_len, 1) if cap is None else cap
    out = []
    for v in g.vertices:
        if g.is_sink(v):
            anchor = SinkAnchor(v)
        elif g.is_infinite_emitter(v):
            anchor = EmitterAnchor(v)
        else:
            continue
        out.append(FinType((), anchor))
        for p in paths_into(g, v, max_len, cap):
            out.append(FinType(p, anchor))

    def key(f):
        return (len(f.alpha), f.alpha, isinstance(f.anchor, EmitterAnchor), g.vindex[f.anchor.v])
    return sorted(out, key=key)


def infinite_type_filters(g: Ultragraph, max_prefix: int, cap: int | None = None) -> list:
    cap = max(max_prefix, 1) if cap is None else cap
    out = []
    for c in enumerate_cycles(g):
        L = len(c.edges)
        for k in range(L):
            out.append(InfType((), c, k))
            for p in paths_into(g, g.source(c.edges[k]), max_prefix, cap):
                if p[-1] != c.edges[(k - 1) % L]:
                    out.append(InfType(p, c, k))
    return sorted(out, key=lambda f: (len(f.prefix), f.prefix, f.cycle, f.phase))


def shift(g: Ultragraph, xi):
    if isinstance(xi, FinType):
        if not xi.alpha:
            raise EmptyWord(str(xi))
        return FinType(xi.alpha[1:], xi.anchor)
    if xi.prefix:
        return InfType(xi.prefix[1:], xi.cycle, xi.phase)
    return InfType((), xi.cycle, (xi.phase + 1) % len(xi.cycle.edges))


def shift_n(g: Ultragraph, xi, n: int):
    for _ in range(n):
        xi = shift(g, xi)
    return xi


def prepend(g: Ultragraph, e: EdgeRef, xi):
    """Filter of the word e followed by the word of xi, or None if that is not a path."""
    if first_vertex(g, xi) not in g.range(e):
        return None
    if isinstance(xi, FinType):
        return FinType((e,) + xi.alpha, xi.anchor)
    return _canon_tail(xi.cycle, (e,) + xi.prefix, xi.phase)


class Trivial(NamedTuple):
    pass


class IntegerGroup(NamedTuple):
    period: int  # the germ (xi, period, xi) generates the isotropy group


def isotropy(g: Ultragraph, xi):
    if isinstance(xi, InfType):
        return IntegerGroup(len(xi.cycle.edges))
    return Trivial()


# -- germs -------------------------------------------------------------------------

@dataclass(frozen=True)
class GermTriple:
    source: object
    k: int
    target: object

    def __str__(self):
        return f"({self.source}, {self.k}, {self.target})"


def _shift_bound(xi, eta, k: int) -> int:
    b = abs(k)
    for f in (xi, eta):
        b += len(f.alpha) if isinstance(f, FinType) else len(f.prefix) + 2 * len(f.cycle.edges)
    return b


def germ_witness(g: Ultragraph, t: GermTriple):
    """(m, n) with m - n = k and sigma^m(source) = sigma^n(target), or None."""
    xi, eta, k = t.source, t.target, t.k
    for m in range(max(k, 0), _shift_bound(xi, eta, k) + 1):
        n = m - k
        if n < 0:
            continue
        if isinstance(xi, FinType) and m > len(xi.alpha):
            break
        if isinstance(eta, FinType) and n > len(eta.alpha):
            continue
        if shift_n(g, xi, m) == shift_n(g, eta, n):
            return m, n
    return None


def check_germ(g: Ultragraph, t: GermTriple) -> GermTriple:
    if germ_witness(g, t) is None:
        raise InvalidGerm(str(t))
    return t


def induced_act(g: Ultragraph, gen, t: GermTriple, validate: bool = True) -> dict:
    """Action of p_A, s_e or s_e* on a germ; a dict germ -> 1, empty for zero."""
    if validate:
        check_germ(g, t)
    kind, x = gen
    xi = t.source
    if kind == "p":
        verts = {x} if isinstance(x, str) else set(x)
        return {t: 1} if first_vertex(g, xi) in verts else {}
    e = x
    if kind == "s":
        new = prepend(g, e, xi)
        return {} if new is None else {GermTriple(new, t.k + 1, t.target): 1}
    if kind == "st":
        if isinstance(xi, FinType):
            if xi.alpha and xi.alpha[0] == e:
                return {GermTriple(shift(g, xi), t.k - 1, t.target): 1}
            return {}
        head = xi.prefix[0] if xi.prefix else xi.cycle.edges[xi.phase]
        if head == e:
            return {GermTriple(shift(g, xi), t.k - 1, t.target): 1}
        return {}
    raise ValueError(f"unknown generator {gen!r}")


# -- comparison with Chen modules ----------------------------------------------------

@dataclass
class CompareReport:
    desc: object
    depth: int
    checked: int = 0
    mismatch: object = None

    @property
    def ok(self) -> bool:
        return self.mismatch is None


class _Bijection:
    """Basis element <-> germ triple for one Chen module."""

    def __init__(self, g: Ultragraph, M: ChenModule):
        self.g = g
        self.M = M
        if M.kind == "vertex":
            v = M.v
            self.anchor = SinkAnchor(v) if g.is_sink(v) else EmitterAnchor(v)
            self.unit = FinType((), self.anchor)
        else:
            self.c0 = M.c0
            self.L = M.L
            self.point = M.point
            self.unit = InfType(M.point.prefix, M.c0, M.point.phase)
            self.xbar = getattr(M, "xbar", None)

    def k0(self, b: TailElem) -> int:
        return len(b.prefix) + (self.point.phase - b.phase) % self.L - len(self.point.prefix)

    def to_germ(self, b) -> GermTriple:
        if self.M.kind == "vertex":
            return GermTriple(FinType(b.path, self.anchor), len(b.path), self.unit)
        return GermTriple(InfType(b.prefix, self.c0, b.phase), self.k0(b), self.unit)

    def from_germ(self, t: GermTriple):
        """(basis element, scalar) represented by the germ."""
        ring = self.M.ring
        if t.target != self.unit:
            raise MismatchFound("target", str(t))
        xi = t.source
        if self.M.kind == "vertex":
            if not isinstance(xi, FinType) or xi.anchor != self.anchor or t.k != len(xi.alpha):
                raise MismatchFound("germ outside the unit space", str(t))
            return IntoVertex(xi.alpha), ring.one
        b = TailElem(xi.prefix, xi.phase)
        diff = t.k - self.k0(b)
        if diff % self.L:
            raise MismatchFound("germ lag", str(t))
        j = diff // self.L
        if self.xbar is None:
            return b, ring.one
        return b, ring.power(self.xbar, j)


def generators(g: Ultragraph, cap: int) -> list:
    out = [("p", v) for v in g.vertices]
    for c in sorted(g.classes, key=lambda c: c.id):
        for i in c.indices(cap):
            e = EdgeRef(c.id, i)
            out.append(("s", e))
            out.append(("st", e))
    return out


def compare_induced_chen(g: Ultragraph, desc, depth: int, field: Field = QQ, cap: int | None = None,
                         strict: bool = False) -> CompareReport:
    M = ChenModule(g, desc, field)
    bij = _Bijection(g, M)
    cap = depth if cap is None else cap
    rep = CompareReport(desc, depth)
    gens = generators(g, cap)
    for b in M.basis(depth, cap):
        t = bij.to_germ(b)
        check_germ(g, t)
        for gen in gens:
            lhs = M.act_gen(gen, b)
            rhs_germs = induced_act(g, gen, t, validate=False)
            rhs = None
            for t2 in rhs_germs:
                check_germ(g, t2)
                rhs = bij.from_germ(t2)
            rep.checked += 1
            if lhs != rhs:
                rep.mismatch = (gen, str(b), lhs, rhs)
                if strict:
                    raise MismatchFound(gen, str(b))
                return rep
    return rep


__all__ = [
    "SinkAnchor", "EmitterAnchor", "FinType", "InfType", "GermTriple", "Trivial", "IntegerGroup",
    "inf_filter", "fin_filter", "finite_type_filters", "infinite_type_filters", "shift",
    "isotropy", "induced_act", "germ_witness", "check_germ", "compare_induced_chen", "describe",
    "SinkMod", "InfEmitterMod", "PeriodicPathMod", "TwistedMod",
]
