import random

import pytest

from ulpa.algebra import LeavittPathAlgebra
from ulpa.corpus import corpus


@pytest.fixture(scope="session")
def specs():
    return corpus()


def generator_atoms(g, cap=2):
    """Names usable in expressions: vertices and edges (omega indices below cap)."""
    edges = [e for v in g.vertices for e in g.edges_from(v, cap)]
    return list(g.vertices), edges


def random_monomial(alg, rng, max_len=3):
    """Product of random generators; may well be zero."""
    g = alg.graph
    verts, edges = generator_atoms(g)
    x = alg.p(rng.choice(verts))
    for _ in range(rng.randint(0, max_len)):
        kind = rng.randrange(3) if edges else 0
        if kind == 0:
            x = x * alg.p(rng.choice(verts))
        elif kind == 1:
            x = x * alg.s(rng.choice(edges))
        else:
            x = x * alg.st(rng.choice(edges))
    return x


def random_element(alg, rng, terms=2):
    x = alg.zero()
    for _ in range(rng.randint(1, terms)):
        x = x + random_monomial(alg, rng).scale(rng.randint(-2, 2))
    return x


def random_expr(g, rng, depth=3):
    """Random text in the expression grammar."""
    verts, edges = generator_atoms(g)

    def edge():
        e = rng.choice(edges)
        return f"{e.cls}:{e.index}" if e.index or rng.random() < 0.2 else e.cls

    def atom(d):
        r = rng.random()
        if r < 0.15:
            return rng.choice(["2", "(-1)", "1/2", "3", "0"])
        if r < 0.45 or not edges:
            vs = rng.sample(verts, rng.randint(1, len(verts)))
            return "p({%s})" % ",".join(vs)
        if r < 0.65:
            return f"s({edge()})"
        if r < 0.85:
            return f"st({edge()})"
        if d <= 0:
            return f"s({edge()})"
        return "(" + expr(d - 1) + ")"

    def factor(d):
        a = atom(d)
        return a + (f"^{rng.randint(0, 2)}" if rng.random() < 0.15 else "")

    def term(d):
        return "*".join(factor(d) for _ in range(rng.randint(1, 3)))

    def expr(d):
        out = term(d)
        for _ in range(rng.randint(0, 2)):
            out += rng.choice([" + ", " - "]) + term(d)
        return out

    return expr(depth)


@pytest.fixture
def rng():
    return random.Random(12345)


def algebra(g, field=None):
    from ulpa.fields import QQ
    return LeavittPathAlgebra(g, field or QQ)
