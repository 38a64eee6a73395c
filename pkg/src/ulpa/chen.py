"""Chen simple modules: truncated bases, generator actions and annihilators.

Four module types are supported:

* SinkMod(v): basis {v} plus every path p with v in r(p), v a sink.
* InfEmitterMod(v): the same basis over an infinite emitter v.
* PeriodicPathMod(rho, c): tail-equivalence class of rho c c c ...
* TwistedMod(c, f): the same basis over F = K[x]/(f), where s on the first
  edge of c carries the extra scalar xbar.

Infinite paths are eventually periodic and stored as TailElem(prefix, phase):
the path prefix followed by the canonical rotation of c started at position
phase.  Prefixes never end with the cycle edge preceding the phase.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dfield
from typing import NamedTuple

from .algebra import LeavittPathAlgebra, Monomial
from .classify import (Graded, NonGradedPrime, check_irreducible, classify_graded,
                       cycles_outside, has_exit_outside)
from .errors import CounterexampleFound, DepthExceeded, InvalidDesc, NotBasisElem, NotPrimitive
from .fields import QQ, Field, LaurentPoly, ResidueField
from .lattice import (AdmissiblePair, breaking_vertices, graded_ideal_generators, h_of_vertex)
from .ultragraph import (Cycle, EdgeRef, Ultragraph, big_m, exclusive_cycles, is_cycle,
                         paths_into, reachability)


@dataclass(frozen=True)
class SinkMod:
    v: str


@dataclass(frozen=True)
class InfEmitterMod:
    v: str


@dataclass(frozen=True)
class PeriodicPathMod:
    rho: tuple
    cycle: Cycle

    def __post_init__(self):
        object.__setattr__(self, "rho", tuple(EdgeRef(*e) for e in self.rho))


@dataclass(frozen=True)
class TwistedMod:
    cycle: Cycle
    f: LaurentPoly

    def __post_init__(self):
        object.__setattr__(self, "f", self.f.canonical())


@dataclass(frozen=True)
class NotRepresentable:
    reason: str


class IntoVertex(NamedTuple):
    path: tuple

    def __str__(self):
        return ".".join(str(e) for e in self.path) if self.path else "()"


class TailElem(NamedTuple):
    prefix: tuple
    phase: int

    def __str__(self):
        pre = ".".join(str(e) for e in self.prefix) or "-"
        return f"({pre}|{self.phase})"


def describe(desc) -> str:
    if isinstance(desc, SinkMod):
        return f"SinkMod({desc.v})"
    if isinstance(desc, InfEmitterMod):
        return f"InfEmitterMod({desc.v})"
    if isinstance(desc, PeriodicPathMod):
        rho = ".".join(str(e) for e in desc.rho) or "-"
        return f"PeriodicPathMod({rho}, {desc.cycle})"
    if isinstance(desc, TwistedMod):
        return f"TwistedMod({desc.cycle}, {desc.f})"
    return repr(desc)


def _is_x_minus_one(f: LaurentPoly) -> bool:
    K = f.field
    return f.coeffs() == [K.neg(K.one), K.one]


class ChenModule:
    """A Chen module over a fixed ultragraph and base field."""

    def __init__(self, g: Ultragraph, desc, field: Field = QQ):
        self.graph = g
        self.desc = desc
        self.field = field
        self.ring = field
        self.twist_edge = None
        if isinstance(desc, (SinkMod, InfEmitterMod)):
            g.check_vertex(desc.v)
            self.kind = "vertex"
            self.v = desc.v
            if isinstance(desc, SinkMod) and not g.is_sink(desc.v):
                raise InvalidDesc(f"{desc.v} is not a sink")
            if isinstance(desc, InfEmitterMod):
                self.emitter_case = _emitter_case(g, desc.v)
        elif isinstance(desc, (PeriodicPathMod, TwistedMod)):
            self.kind = "tail"
            c = desc.cycle
            if not is_cycle(g, c):
                raise InvalidDesc(f"{c} is not a cycle")
            self.c0 = c.canonical()
            self.L = len(c.edges)
            if isinstance(desc, PeriodicPathMod):
                if desc.rho and not g.is_path(desc.rho + c.edges):
                    raise InvalidDesc("rho does not lead into the cycle")
                offset = self.c0.edges.index(c.edges[0])
                self.point = self.canon(desc.rho, offset)
            else:
                if c.canonical() not in [x.canonical() for x in exclusive_cycles(g)]:
                    raise InvalidDesc(f"{c} is not an exclusive cycle")
                if desc.f.field != field:
                    raise InvalidDesc("polynomial is over a different field")
                check_irreducible(desc.f)
                if _is_x_minus_one(desc.f):
                    raise InvalidDesc("x - 1 gives the untwisted module; use PeriodicPathMod")
                self.ring = ResidueField(desc.f)
                self.twist_edge = c.edges[0]
                self.xbar = self.ring.xbar
                self.xbar_inv = self.ring.inv(self.xbar)
                self.point = TailElem((), self.c0.edges.index(c.edges[0]))
        else:
            raise InvalidDesc(repr(desc))

    # -- basis -------------------------------------------------------------
    def canon(self, prefix, phase) -> TailElem:
        prefix = tuple(prefix)
        c = self.c0.edges
        phase %= self.L
        while prefix and prefix[-1] == c[(phase - 1) % self.L]:
            prefix = prefix[:-1]
            phase = (phase - 1) % self.L
        return TailElem(prefix, phase)

    def source(self, b):
        g = self.graph
        if self.kind == "vertex":
            return g.source(b.path[0]) if b.path else self.v
        return g.source(b.prefix[0]) if b.prefix else g.source(self.c0.edges[b.phase])

    def size(self, b) -> int:
        return len(b.path) if self.kind == "vertex" else len(b.prefix)

    def check_basis(self, b):
        g = self.graph
        if self.kind == "vertex":
            if not isinstance(b, IntoVertex):
                raise NotBasisElem(repr(b))
            if b.path and (not g.is_path(b.path) or self.v not in g.range(b.path[-1])):
                raise NotBasisElem(str(b))
        else:
            if not isinstance(b, TailElem) or self.canon(b.prefix, b.phase) != b:
                raise NotBasisElem(repr(b))
            if b.prefix and not g.is_path(b.prefix + (self.c0.edges[b.phase],)):
                raise NotBasisElem(str(b))
        return b

    def basis(self, depth: int, cap: int | None = None) -> list:
        g = self.graph
        cap = depth if cap is None else cap
        if self.kind == "vertex":
            return [IntoVertex(())] + [IntoVertex(p) for p in paths_into(g, self.v, depth, cap)]
        c = self.c0.edges
        out = []
        for k in range(self.L):
            out.append(TailElem((), k))
        for k in range(self.L):
            for p in paths_into(g, g.source(c[k]), depth, cap):
                if p[-1] != c[(k - 1) % self.L]:
                    out.append(TailElem(p, k))
        return sorted(out, key=lambda b: (len(b.prefix), b.prefix, b.phase))

    # -- action ------------------------------------------------------------
    def act_gen(self, gen, b):
        """Image of one basis element: (basis element, scalar) or None for zero."""
        kind, x = gen
        ring = self.ring
        if kind == "p":
            verts = {x} if isinstance(x, str) else set(x)
            return (b, ring.one) if self.source(b) in verts else None
        e = x
        g = self.graph
        if kind == "s":
            if self.source(b) not in g.range(e):
                return None
            if self.kind == "vertex":
                return IntoVertex((e,) + b.path), ring.one
            scal = self.xbar if e == self.twist_edge else ring.one
            return self.canon((e,) + b.prefix, b.phase), scal
        if kind == "st":
            if self.kind == "vertex":
                if b.path and b.path[0] == e:
                    return IntoVertex(b.path[1:]), ring.one
                return None
            scal = self.xbar_inv if e == self.twist_edge else ring.one
            if b.prefix:
                if b.prefix[0] == e:
                    return TailElem(b.prefix[1:], b.phase), scal
                return None
            if self.c0.edges[b.phase] == e:
                return TailElem((), (b.phase + 1) % self.L), scal
            return None
        raise ValueError(f"unknown generator {gen!r}")

    def act(self, gen, vec: dict) -> dict:
        ring = self.ring
        out = {}
        for b, c in vec.items():
            r = self.act_gen(gen, b)
            if r is None:
                continue
            b2, k = r
            _acc(ring, out, b2, ring.mul(c, k))
        return out

    def act_monomial(self, m: Monomial, b):
        a, u, beta = m
        ring = self.ring
        scal = ring.one
        cur = b
        for gen in [("st", e) for e in beta] + [("p", u)] + [("s", e) for e in reversed(a)]:
            r = self.act_gen(gen, cur)
            if r is None:
                return None
            cur, k = r
            scal = ring.mul(scal, k)
        return cur, scal

    def act_element(self, x, vec: dict, depth: int | None = None) -> dict:
        ring = self.ring
        out = {}
        for b, c in vec.items():
            for m, coef in x.terms.items():
                r = self.act_monomial(m, b)
                if r is None:
                    continue
                b2, k = r
                if depth is not None and self.size(b2) > depth:
                    raise DepthExceeded(f"{b2} lies beyond depth {depth}")
                _acc(ring, out, b2, ring.mul(c, ring.mul(ring(coef), k)))
        return out


def _acc(ring, out, b, c):
    new = ring.add(out[b], c) if b in out else c
    if ring.iszero(new):
        out.pop(b, None)
    else:
        out[b] = new


def _emitter_case(g: Ultragraph, v) -> str:
    if not g.is_infinite_emitter(v):
        raise InvalidDesc(f"{v} is not an infinite emitter")
    H = h_of_vertex(g, v)
    if v in breaking_vertices(g, H):
        return "breaking"
    if all(c.range <= H for c in g.out_classes[v]):
        return "absorbed"
    raise InvalidDesc(f"{v} is neither breaking for H({v}) nor emits only into H({v})")


# -- module level API -------------------------------------------------------------

def basis_enumerate(g: Ultragraph, desc, depth: int, field: Field = QQ, cap: int | None = None) -> list:
    return ChenModule(g, desc, field).basis(depth, cap)


def act(g: Ultragraph, desc, gen, b, field: Field = QQ) -> dict:
    M = ChenModule(g, desc, field)
    M.check_basis(b)
    return M.act(gen, {b: M.ring.one})


def act_element(g: Ultragraph, desc, x, vec: dict, depth: int | None = None) -> dict:
    M = ChenModule(g, desc, x.algebra.field)
    return M.act_element(x, vec, depth)


def _hull_of(g: Ultragraph, vertices) -> frozenset:
    reach = reachability(g)
    vs = set(vertices)
    return frozenset(w for w in g.vertices if not (reach[w] & vs))


def annihilator_descriptor(g: Ultragraph, desc, field: Field = QQ):
    M = ChenModule(g, desc, field)
    if isinstance(desc, SinkMod):
        W = h_of_vertex(g, desc.v)
        return Graded(AdmissiblePair(W, breaking_vertices(g, W)))
    if isinstance(desc, InfEmitterMod):
        W = h_of_vertex(g, desc.v)
        B = breaking_vertices(g, W)
        if M.emitter_case == "breaking":
            return Graded(AdmissiblePair(W, B - {desc.v}))
        return Graded(AdmissiblePair(W, B))
    if isinstance(desc, TwistedMod):
        return NonGradedPrime(desc.cycle, desc.f)
    c0 = desc.cycle.canonical()
    if c0 in exclusive_cycles(g):
        return NonGradedPrime(c0, LaurentPoly.from_dict(field, {0: -1, 1: 1}))
    verts = [g.source(e) for e in desc.rho] + [g.source(e) for e in desc.cycle.edges]
    W = _hull_of(g, verts)
    return Graded(AdmissiblePair(W, breaking_vertices(g, W)))


def ideal_generators(alg: LeavittPathAlgebra, d) -> list:
    """Explicit generators of a graded ideal or of a non-graded prime."""
    g = alg.graph
    if isinstance(d, Graded):
        return graded_ideal_generators(alg, d.pair)
    gens = graded_ideal_generators(alg, d.pair(g))
    sc = alg.s_path(d.cycle.edges)
    v = d.cycle.base(g)
    acc = alg.zero()
    power = alg.p(v)
    for i, coef in enumerate(d.f.coeffs()):
        if i:
            power = power * sc
        acc = acc + power.scale(coef)
    return gens + [acc]


def annihilator_generators(g: Ultragraph, desc, field: Field = QQ):
    d = annihilator_descriptor(g, desc, field)
    return d, ideal_generators(LeavittPathAlgebra(g, field), d)


@dataclass
class AnnihilatorReport:
    desc: object
    ideal: object
    generators: int
    basis_size: int
    depth: int
    counterexample: object = None
    silent_vertices: list = dfield(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.counterexample is None and not self.silent_vertices


def check_annihilator(g: Ultragraph, desc, depth: int, field: Field = QQ, cap: int | None = None,
                      strict: bool = False) -> AnnihilatorReport:
    M = ChenModule(g, desc, field)
    d, gens = annihilator_generators(g, desc, field)
    basis = M.basis(depth, cap)
    rep = AnnihilatorReport(desc, d, len(gens), len(basis), depth)
    ring = M.ring
    for i, x in enumerate(gens):
        for b in basis:
            if M.act_element(x, {b: ring.one}):
                rep.counterexample = (i, str(x), str(b))
                if strict:
                    raise CounterexampleFound(str(x), str(b))
                return rep
    W = d.pair.W if isinstance(d, Graded) else d.pair(g).W
    sources = {M.source(b) for b in basis}
    rep.silent_vertices = [u for u in g.vertices if u not in W and u not in sources]
    return rep


def module_for_primitive(g: Ultragraph, P, field: Field = QQ):
    if isinstance(P, NonGradedPrime):
        if _is_x_minus_one(P.f):
            return PeriodicPathMod((), P.cycle)
        return TwistedMod(P.cycle, P.f)
    r = classify_graded(g, P.pair)
    if not r.prime:
        raise NotPrimitive(f"{P.pair.show(g)} is not prime")
    if r.case == "ii":
        return InfEmitterMod(r.witness)
    W = P.pair.W
    if not all(has_exit_outside(g, c, W) for c in cycles_outside(g, W)):
        raise NotPrimitive(f"{P.pair.show(g)} has a cycle without exit in the complement")
    for v in g.vertices:
        if v in W:
            continue
        if all(c.range <= W for c in g.out_classes[v]):
            return SinkMod(v) if g.is_sink(v) else InfEmitterMod(v)
    rest = frozenset(g.vertices) - W
    excl = set(exclusive_cycles(g))
    for c in cycles_outside(g, W):
        if c in excl:
            continue
        if big_m(g, c.base(g)) == rest:
            return PeriodicPathMod((), c)
    return NotRepresentable("no eventually periodic path with the right hull")


def all_chen_modules(g: Ultragraph, field: Field, max_degree: int = 2) -> list:
    """Every Chen module descriptor this package can build on g."""
    from .classify import irreducible_laurents
    out = []
    for v in g.vertices:
        if g.is_sink(v):
            out.append(SinkMod(v))
        elif g.is_infinite_emitter(v):
            try:
                _emitter_case(g, v)
                out.append(InfEmitterMod(v))
            except InvalidDesc:
                pass
    from .ultragraph import enumerate_cycles
    for c in enumerate_cycles(g):
        out.append(PeriodicPathMod((), c))
    if field.p is not None:
        for c in exclusive_cycles(g):
            for f in irreducible_laurents(field, max_degree):
                if not _is_x_minus_one(f):
                    out.append(TwistedMod(c, f))
    return out
