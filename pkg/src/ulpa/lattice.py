"""Hereditary saturated sets, breaking vertices, admissible pairs and quotients.

With a finite vertex set every hereditary saturated family of vertex sets is
the power set of its union W, so the lattice is stored as vertex sets W.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ImproperPair, NonFiniteGenerator, NotAdmissible, NotHereditarySaturated
from .ultragraph import EdgeClass, EdgeRef, Ultragraph, reachability


def is_hereditary(g: Ultragraph, W) -> bool:
    W = frozenset(W)
    return all(c.range <= W for c in g.classes if c.source in W)


def is_saturated(g: Ultragraph, W) -> bool:
    W = frozenset(W)
    for v in g.vertices:
        if v in W or not g.is_regular(v):
            continue
        if all(c.range <= W for c in g.out_classes[v]):
            return False
    return True


def is_hereditary_saturated(g: Ultragraph, W) -> bool:
    return is_hereditary(g, W) and is_saturated(g, W)


def hs_closure(g: Ultragraph, X) -> frozenset:
    W = set(X)
    for v in W:
        g.check_vertex(v)
    changed = True
    while changed:
        changed = False
        for c in g.classes:
            if c.source in W and not c.range <= W:
                W |= c.range
                changed = True
        for v in g.vertices:
            if v not in W and g.is_regular(v) and all(c.range <= W for c in g.out_classes[v]):
                W.add(v)
                changed = True
    return frozenset(W)


def vset_key(g: Ultragraph, W):
    return (len(W), sorted(g.vindex[v] for v in W))


def enumerate_hs(g: Ultragraph) -> list:
    """All hereditary saturated sets, grown upward from the least one."""
    if "hs" in g._cache:
        return g._cache["hs"]
    start = hs_closure(g, ())
    seen = {start}
    todo = [start]
    while todo:
        W = todo.pop()
        for v in g.vertices:
            if v not in W:
                T = hs_closure(g, W | {v})
                if T not in seen:
                    seen.add(T)
                    todo.append(T)
    out = sorted(seen, key=lambda W: vset_key(g, W))
    g._cache["hs"] = out
    return out


def escaping_count(g: Ultragraph, v, W):
    """Number of edges from v whose range leaves W; None means infinitely many."""
    n = 0
    for c in g.out_classes[v]:
        if not c.range <= W:
            if c.is_omega:
                return None
            n += c.multiplicity
    return n


def escaping_edges(g: Ultragraph, v, W) -> list:
    W = frozenset(W)
    if escaping_count(g, v, W) is None:
        raise NonFiniteGenerator(f"{v} has infinitely many edges leaving {sorted(W)}")
    return [EdgeRef(c.id, i) for c in g.out_classes[v] if not c.range <= W for i in c.indices()]


def breaking_vertices(g: Ultragraph, W) -> frozenset:
    W = frozenset(W)
    if not is_hereditary_saturated(g, W):
        raise NotHereditarySaturated(sorted(W))
    out = set()
    for v in g.vertices:
        if g.is_infinite_emitter(v):
            n = escaping_count(g, v, W)
            if n is not None and n > 0:
                out.add(v)
    return frozenset(out)


@dataclass(frozen=True)
class AdmissiblePair:
    W: frozenset
    S: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "W", frozenset(self.W))
        object.__setattr__(self, "S", frozenset(self.S))

    def key(self, g: Ultragraph):
        return (vset_key(g, self.W), vset_key(g, self.S))

    def show(self, g: Ultragraph) -> str:
        return "({%s}, {%s})" % (",".join(g.vsort(self.W)), ",".join(g.vsort(self.S)))


def check_admissible(g: Ultragraph, pair: AdmissiblePair) -> AdmissiblePair:
    for v in pair.W | pair.S:
        g.check_vertex(v)
    B = breaking_vertices(g, pair.W)
    if not pair.S <= B:
        raise NotAdmissible(f"S={sorted(pair.S)} is not inside B_W={sorted(B)}")
    return pair


def admissible_pairs(g: Ultragraph, proper: bool = False) -> list:
    out = []
    for W in enumerate_hs(g):
        if proper and len(W) == len(g.vertices):
            continue
        B = g.vsort(breaking_vertices(g, W))
        for mask in range(1 << len(B)):
            out.append(AdmissiblePair(W, frozenset(b for i, b in enumerate(B) if mask >> i & 1)))
    return sorted(out, key=lambda p: p.key(g))


@dataclass(frozen=True, order=True)
class QuotientVertex:
    kind: str  # "plain" or "primed"
    vertex: str


def Plain(v) -> QuotientVertex:
    return QuotientVertex("plain", v)


def Primed(v) -> QuotientVertex:
    return QuotientVertex("primed", v)


@dataclass(frozen=True, eq=False)
class Quotient:
    """A quotient ultragraph together with the names given to its vertices."""

    graph: Ultragraph
    pair: AdmissiblePair
    names: dict  # QuotientVertex -> vertex id in graph

    def name(self, qv: QuotientVertex) -> str:
        return self.names[qv]

    def primed(self, v) -> str | None:
        return self.names.get(Primed(v))


def quotient(g: Ultragraph, pair: AdmissiblePair) -> Quotient:
    check_admissible(g, pair)
    W, S = pair.W, pair.S
    if len(W) == len(g.vertices):
        raise ImproperPair("W is the whole vertex set")
    B = breaking_vertices(g, W)
    primed = B - S
    taken = set(g.vertices)
    names = {}
    verts = []
    for v in g.vertices:
        if v not in W:
            names[Plain(v)] = v
            verts.append(v)
    for v in g.vertices:
        if v in primed:
            name = v + "'"
            while name in taken:
                name += "'"
            taken.add(name)
            names[Primed(v)] = name
            verts.append(name)
    classes = []
    for c in g.classes:
        if c.range <= W:
            continue
        rng = {u for u in c.range if u not in W}
        rng |= {names[Primed(u)] for u in c.range if u in primed}
        classes.append(EdgeClass(c.id, c.source, frozenset(rng), c.multiplicity))
    return Quotient(Ultragraph(tuple(verts), tuple(classes)), pair, names)


def h_of_vertex(g: Ultragraph, v) -> frozenset:
    g.check_vertex(v)
    reach = reachability(g)
    W = frozenset(w for w in g.vertices if v not in reach[w])
    if not is_hereditary_saturated(g, W):
        raise NotHereditarySaturated(f"H({v}) = {sorted(W)} is not saturated")
    return W


def graded_ideal_generators(alg, pair: AdmissiblePair) -> list:
    """p_v for v in W, then p_v - sum s_e s_e* over edges from v leaving W, for v in S."""
    g = alg.graph
    check_admissible(g, pair)
    out = [alg.p(v) for v in g.vsort(pair.W)]
    for v in g.vsort(pair.S):
        x = alg.p(v)
        for e in escaping_edges(g, v, pair.W):
            x = x - alg.s(e) * alg.st(e)
        out.append(x)
    return out
