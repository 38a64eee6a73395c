"""Finitely presented ultragraphs and their combinatorics.

An ultragraph has a finite ordered vertex list and a list of edge classes.
Each class has a source vertex, a nonempty range set and a multiplicity,
either a positive integer or OMEGA (countably many parallel edges).
A concrete edge is an EdgeRef (class id, index).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

from .errors import NotACycle, UnknownEdge, UnknownVertex, ValidationError


class _Omega:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "OMEGA"

    def __str__(self):
        return "omega"

    def __reduce__(self):
        return (_Omega, ())


OMEGA = _Omega()


class EdgeRef(NamedTuple):
    cls: str
    index: int = 0

    def __str__(self):
        return self.cls if self.index == 0 else f"{self.cls}:{self.index}"


@dataclass(frozen=True)
class EdgeClass:
    id: str
    source: str
    range: frozenset
    multiplicity: object = 1

    def __post_init__(self):
        object.__setattr__(self, "range", frozenset(self.range))

    @property
    def is_omega(self) -> bool:
        return self.multiplicity is OMEGA

    def indices(self, cap: int | None = None):
        """Edge indices of this class; OMEGA classes need an explicit cap."""
        if self.is_omega:
            if cap is None:
                raise ValueError(f"class {self.id} has infinitely many edges")
            return range(cap)
        return range(self.multiplicity)


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str


@dataclass(frozen=True, eq=False)
class Ultragraph:
    vertices: tuple
    classes: tuple
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "classes", tuple(self.classes))

    def __eq__(self, other):
        return (isinstance(other, Ultragraph) and self.vertices == other.vertices
                and self.classes == other.classes)

    def __hash__(self):
        return hash((self.vertices, self.classes))

    @cached_property
    def class_map(self) -> dict:
        return {c.id: c for c in self.classes}

    @cached_property
    def vindex(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def out_classes(self) -> dict:
        out = {v: [] for v in self.vertices}
        for c in sorted(self.classes, key=lambda c: c.id):
            out[c.source].append(c)
        return {v: tuple(cs) for v, cs in out.items()}

    def vsort(self, vs) -> tuple:
        """Vertices in presentation order."""
        idx = self.vindex
        return tuple(sorted(vs, key=idx.__getitem__))

    def check_vertex(self, v):
        if v not in self.vindex:
            raise UnknownVertex(v)

    def edge_class(self, e) -> EdgeClass:
        c = self.class_map.get(e[0])
        if c is None:
            raise UnknownEdge(str(e[0]))
        return c

    def check_edge(self, e: EdgeRef) -> EdgeRef:
        c = self.edge_class(e)
        if e.index < 0 or (not c.is_omega and e.index >= c.multiplicity):
            raise UnknownEdge(f"{e}: index out of range for multiplicity {c.multiplicity}")
        return e

    def source(self, e) -> str:
        return self.class_map[e[0]].source

    def range(self, e) -> frozenset:
        return self.class_map[e[0]].range

    def is_sink(self, v) -> bool:
        return not self.out_classes[v]

    def is_infinite_emitter(self, v) -> bool:
        return any(c.is_omega for c in self.out_classes[v])

    def is_regular(self, v) -> bool:
        return not self.is_sink(v) and not self.is_infinite_emitter(v)

    def edges_from(self, v, cap: int | None = None) -> list:
        """Concrete edges with source v; OMEGA classes contribute indices below cap."""
        return [EdgeRef(c.id, i) for c in self.out_classes[v] for i in c.indices(cap)]

    def is_path(self, edges) -> bool:
        try:
            for e in edges:
                self.check_edge(e)
        except UnknownEdge:
            return False
        return all(self.source(b) in self.range(a) for a, b in zip(edges, edges[1:]))

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "classes": [
                {"id": c.id, "source": c.source, "range": list(self.vsort(c.range)),
                 "multiplicity": "omega" if c.is_omega else c.multiplicity}
                for c in self.classes
            ],
        }


def make(vertices, classes) -> Ultragraph:
    """Build and validate from ``(id, source, range, multiplicity)`` tuples."""
    cls = []
    for c in classes:
        cid, src, rng = c[0], c[1], c[2]
        mult = c[3] if len(c) > 3 else 1
        if isinstance(mult, str) and mult.lower() == "omega":
            mult = OMEGA
        cls.append(EdgeClass(cid, src, frozenset(rng), mult))
    return validate(Ultragraph(tuple(vertices), tuple(cls)))


def violations(g: Ultragraph) -> list:
    out = []
    seen = set()
    for v in g.vertices:
        if v in seen:
            out.append(Violation("DuplicateId", f"vertex {v}"))
        seen.add(v)
    cseen = set()
    for c in g.classes:
        if c.id in cseen:
            out.append(Violation("DuplicateId", f"class {c.id}"))
        cseen.add(c.id)
        if c.source not in seen:
            out.append(Violation("UnknownVertex", f"source {c.source} of class {c.id}"))
        if not c.range:
            out.append(Violation("EmptyRange", f"class {c.id}"))
        for u in sorted(c.range - seen):
            out.append(Violation("UnknownVertex", f"range vertex {u} of class {c.id}"))
        m = c.multiplicity
        if m is not OMEGA and (not isinstance(m, int) or isinstance(m, bool) or m < 1):
            out.append(Violation("BadMultiplicity", f"class {c.id} has multiplicity {m!r}"))
    return out


def validate(g: Ultragraph) -> Ultragraph:
    bad = violations(g)
    if bad:
        raise ValidationError(bad)
    return g


def vertex_census(g: Ultragraph) -> dict:
    return {
        "sinks": tuple(v for v in g.vertices if g.is_sink(v)),
        "regular": tuple(v for v in g.vertices if g.is_regular(v)),
        "infinite_emitters": tuple(v for v in g.vertices if g.is_infinite_emitter(v)),
    }


def successors(g: Ultragraph) -> dict:
    out = {v: set() for v in g.vertices}
    for c in g.classes:
        out[c.source] |= c.range
    return out


def reachability(g: Ultragraph) -> dict:
    """Map v -> frozenset of all w with v >= w."""
    if "reach" in g._cache:
        return g._cache["reach"]
    succ = successors(g)
    reach = {}
    for v in g.vertices:
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in succ[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        reach[v] = frozenset(seen)
    g._cache["reach"] = reach
    return reach


def geq(g: Ultragraph, v, w) -> bool:
    return w in reachability(g)[v]


def big_m(g: Ultragraph, v) -> frozenset:
    g.check_vertex(v)
    reach = reachability(g)
    return frozenset(w for w in g.vertices if v in reach[w])


def dd_witness(g: Ultragraph, within=None):
    """First pair of vertices in ``within`` with no common lower bound inside it."""
    reach = reachability(g)
    vs = g.vsort(g.vertices if within is None else within)
    allowed = frozenset(vs)
    for i, v in enumerate(vs):
        for w in vs[i + 1:]:
            if not (reach[v] & reach[w] & allowed):
                return (v, w)
    return None


def is_downward_directed(g: Ultragraph, within=None) -> bool:
    return dd_witness(g, within) is None


# -- cycles -------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Cycle:
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(EdgeRef(*e) for e in self.edges))
        if not self.edges:
            raise NotACycle("empty edge list")

    @classmethod
    def of(cls, *names) -> "Cycle":
        """Cycle from class ids (index 0) or ``class:index`` strings."""
        out = []
        for n in names:
            if isinstance(n, EdgeRef):
                out.append(n)
            elif ":" in n:
                a, b = n.split(":")
                out.append(EdgeRef(a, int(b)))
            else:
                out.append(EdgeRef(n, 0))
        return cls(tuple(out))

    def __len__(self):
        return len(self.edges)

    def __str__(self):
        return "".join(str(e) for e in self.edges) if all(
            len(e.cls) == 1 and e.index == 0 for e in self.edges
        ) else ".".join(str(e) for e in self.edges)

    def rotate(self, k: int) -> "Cycle":
        k %= len(self.edges)
        return Cycle(self.edges[k:] + self.edges[:k])

    def canonical(self) -> "Cycle":
        return min(self.rotate(k) for k in range(len(self.edges)))

    def base(self, g: Ultragraph):
        return g.source(self.edges[0])

    def vertices(self, g: Ultragraph) -> tuple:
        return tuple(g.source(e) for e in self.edges)

    def based_at(self, g: Ultragraph, v) -> "Cycle":
        return self.rotate(self.vertices(g).index(v))


def is_cycle(g: Ultragraph, c: Cycle) -> bool:
    if not g.is_path(c.edges):
        return False
    srcs = c.vertices(g)
    return len(set(srcs)) == len(srcs) and srcs[0] in g.range(c.edges[-1])


def check_cycle(g: Ultragraph, c: Cycle) -> Cycle:
    for e in c.edges:
        g.check_edge(e)
    if not is_cycle(g, c):
        raise NotACycle(str(c))
    return c


def enumerate_cycles(g: Ultragraph) -> list:
    """Cycle shapes (index-0 witnesses) in canonical rotation, sorted."""
    if "cycles" in g._cache:
        return g._cache["cycles"]
    found = []
    classes = sorted(g.classes, key=lambda c: c.id)

    def extend(path, used):
        last = path[-1]
        for c in classes:
            if c.source in last.range and c.source not in used and c.id > path[0].id:
                extend(path + [c], used | {c.source})
        if path[0].source in last.range:
            found.append(Cycle(tuple(EdgeRef(c.id, 0) for c in path)))

    for c in classes:
        extend([c], {c.source})
    out = sorted(found, key=lambda c: (len(c), c))
    g._cache["cycles"] = out
    return out


def cycle_has_exit(g: Ultragraph, c: Cycle) -> bool:
    check_cycle(g, c)
    n = len(c.edges)
    for i, e in enumerate(c.edges):
        nxt = c.edges[(i + 1) % n]
        for u in g.range(e):
            if g.is_sink(u):
                return True
            for cl in g.out_classes[u]:
                if cl.id != nxt.cls or cl.is_omega or cl.multiplicity > 1:
                    return True
    return False


def exclusive_cycles(g: Ultragraph) -> list:
    cycles = enumerate_cycles(g)
    vsets = [frozenset(c.vertices(g)) for c in cycles]
    out = []
    for i, c in enumerate(cycles):
        if any(g.edge_class(e).multiplicity != 1 for e in c.edges):
            continue
        if any(vsets[i] & vsets[j] for j in range(len(cycles)) if j != i):
            continue
        out.append(c)
    return out


def condition_k(g: Ultragraph) -> bool:
    return not exclusive_cycles(g)


def paths_from(g: Ultragraph, v, length: int, cap: int | None = None):
    """All paths of exactly the given length (>= 1) starting at v."""
    def rec(prefix, at, left):
        if left == 0:
            yield tuple(prefix)
            return
        for e in g.edges_from(at, cap):
            rng = g.range(e)
            if left == 1:
                yield tuple(prefix + [e])
            else:
                for u in g.vsort(rng):
                    for p in rec(prefix + [e], u, left - 1):
                        yield p
    return rec([], v, length)


def paths_into(g: Ultragraph, v, max_len: int, cap: int | None = None) -> list:
    """All paths p with 1 <= |p| <= max_len and v in r(p), sorted by length then edges."""
    into = {u: [] for u in g.vertices}
    for c in sorted(g.classes, key=lambda c: c.id):
        for i in c.indices(cap):
            for u in c.range:
                into[u].append(EdgeRef(c.id, i))
    out = []
    layer = [(e,) for e in into[v]]
    length = 1
    while layer and length <= max_len:
        out.extend(layer)
        nxt = []
        for p in layer:
            s = g.source(p[0])
            for e in into[s]:
                nxt.append((e,) + p)
        layer = nxt
        length += 1
    return sorted(set(out), key=lambda p: (len(p), p))


def all_presentations(vertices, max_classes: int, mults=(1, 2, OMEGA)):
    """Every ultragraph on the given vertices with up to max_classes classes
    (class ids c0, c1, ...), listed up to reordering of classes."""
    vs = tuple(vertices)
    ranges = []
    for mask in range(1, 1 << len(vs)):
        ranges.append(frozenset(v for i, v in enumerate(vs) if mask >> i & 1))
    kinds = [(s, r, m) for s in vs for r in ranges for m in mults]
    kinds.sort(key=lambda k: (vs.index(k[0]), sorted(vs.index(x) for x in k[1]), str(k[2])))

    def combos(start, k):
        if k == 0:
            yield ()
            return
        for i in range(start, len(kinds)):
            for rest in combos(i, k - 1):
                yield (kinds[i],) + rest

    for n in range(max_classes + 1):
        for combo in combos(0, n):
            yield Ultragraph(vs, tuple(EdgeClass(f"c{i}", s, r, m) for i, (s, r, m) in enumerate(combo)))


__all__ = [
    "OMEGA", "EdgeRef", "EdgeClass", "Ultragraph", "Violation", "Cycle", "make", "validate",
    "violations", "vertex_census", "reachability", "geq", "big_m", "is_downward_directed",
    "dd_witness", "enumerate_cycles", "cycle_has_exit", "exclusive_cycles", "condition_k",
    "is_cycle", "check_cycle", "paths_into", "paths_from", "all_presentations",
]
