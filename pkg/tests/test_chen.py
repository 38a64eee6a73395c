import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_element
from ulpa.algebra import LeavittPathAlgebra, relation_instances
from ulpa.chen import (ChenModule, InfEmitterMod, IntoVertex, NotRepresentable, PeriodicPathMod,
                       SinkMod, TailElem, TwistedMod, act, all_chen_modules, annihilator_descriptor,
                       annihilator_generators, basis_enumerate, check_annihilator, module_for_primitive)
from ulpa.classify import Graded, NonGradedPrime, enumerate_primitives
from ulpa.corpus import CURATED, G_FAN, G_LOOP, G_OMEGA
from ulpa.errors import CounterexampleFound, InvalidDesc, NotBasisElem
from ulpa.fields import Field, parse_laurent
from ulpa.lattice import AdmissiblePair
from ulpa.ultragraph import Cycle, EdgeRef

F2 = Field(2)
E = EdgeRef("e", 0)
CE = Cycle.of("e")
X2X1 = parse_laurent("x^2 + x + 1", F2)


def test_basis_examples():
    assert basis_enumerate(G_FAN, SinkMod("w"), 2) == [IntoVertex(()), IntoVertex((E,)), IntoVertex((E, E))]
    assert basis_enumerate(G_LOOP, PeriodicPathMod((), CE), 1) == [TailElem((), 0)]
    assert basis_enumerate(G_OMEGA, InfEmitterMod("u"), 1) == [IntoVertex(()), IntoVertex((EdgeRef("g", 0),))]


def test_action_examples():
    assert act(G_FAN, SinkMod("w"), ("st", E), IntoVertex((E,))) == {IntoVertex(()): 1}
    assert act(G_FAN, SinkMod("w"), ("st", E), IntoVertex(())) == {}
    M = ChenModule(G_LOOP, TwistedMod(CE, X2X1), F2)
    assert M.act(("s", E), {TailElem((), 0): M.ring.one}) == {TailElem((), 0): M.ring.xbar}


def test_bad_descriptors():
    with pytest.raises(InvalidDesc):
        ChenModule(G_FAN, SinkMod("v"))
    with pytest.raises(InvalidDesc):
        ChenModule(G_LOOP, TwistedMod(CE, parse_laurent("x + 1", F2)), F2)
    with pytest.raises(NotBasisElem):
        act(G_FAN, SinkMod("w"), ("p", "v"), TailElem((), 0))


def test_annihilator_descriptors():
    assert annihilator_descriptor(G_FAN, SinkMod("w")) == Graded(AdmissiblePair(frozenset()))
    assert annihilator_generators(G_FAN, SinkMod("w"))[1] == []
    assert annihilator_descriptor(G_OMEGA, InfEmitterMod("u")) == Graded(AdmissiblePair(frozenset({"w"})))
    assert annihilator_descriptor(G_LOOP, TwistedMod(CE, X2X1), F2) == NonGradedPrime(CE, X2X1)


def test_annihilator_checks():
    assert check_annihilator(G_OMEGA, InfEmitterMod("u"), 6).ok
    assert check_annihilator(G_LOOP, TwistedMod(CE, X2X1), 8, F2).ok
    rep = check_annihilator(G_FAN, SinkMod("w"), 6)
    assert rep.ok and rep.generators == 0


def test_annihilator_detects_wrong_module():
    # claim the twisted module is annihilated by the ideal of a different polynomial
    from ulpa.chen import ideal_generators
    alg = LeavittPathAlgebra(G_LOOP, F2)
    M = ChenModule(G_LOOP, TwistedMod(CE, X2X1), F2)
    wrong = ideal_generators(alg, NonGradedPrime(CE, parse_laurent("x + 1", F2)))[-1]
    assert M.act_element(wrong, {TailElem((), 0): M.ring.one})


def test_module_for_primitive_examples():
    assert module_for_primitive(G_LOOP, NonGradedPrime(CE, X2X1), F2) == TwistedMod(CE, X2X1)
    assert module_for_primitive(G_OMEGA, Graded(AdmissiblePair(frozenset({"w"})))) == InfEmitterMod("u")
    assert module_for_primitive(G_FAN, Graded(AdmissiblePair(frozenset()))) == SinkMod("w")


def test_primitive_round_trip(specs):
    for name, g in specs.items():
        for P in enumerate_primitives(g, F2, 2):
            d = module_for_primitive(g, P, F2)
            assert not isinstance(d, NotRepresentable), name
            rep = check_annihilator(g, d, 6, F2)
            assert rep.ok, (name, P.show(g), rep.counterexample, rep.silent_vertices)
            assert annihilator_descriptor(g, d, F2) == P


def test_strict_mode_raises(monkeypatch):
    import ulpa.chen as chen
    alg = LeavittPathAlgebra(G_FAN)
    fake = Graded(AdmissiblePair(frozenset({"w"})))
    monkeypatch.setattr(chen, "annihilator_generators", lambda g, d, field=None: (fake, [alg.p("w")]))
    rep = check_annihilator(G_FAN, SinkMod("w"), 3)
    assert not rep.ok and rep.counterexample is not None
    with pytest.raises(CounterexampleFound):
        check_annihilator(G_FAN, SinkMod("w"), 3, strict=True)


def _modules():
    out = []
    for name in sorted(CURATED):
        g = CURATED[name]
        for d in all_chen_modules(g, F2, 2):
            out.append((name, d))
    return out


MODULES = _modules()


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(MODULES), st.integers(0, 10 ** 6))
def test_action_is_a_module(pair, seed):
    name, d = pair
    g = CURATED[name]
    rng = random.Random(seed)
    alg = LeavittPathAlgebra(g, F2)
    M = ChenModule(g, d, F2)
    basis = M.basis(3)
    b = rng.choice(basis)
    one = {b: M.ring.one}
    x, y = random_element(alg, rng), random_element(alg, rng)
    assert M.act_element(x * y, one) == M.act_element(x, M.act_element(y, one))
    assert M.act_element(x + y, one) == _add(M, M.act_element(x, one), M.act_element(y, one))


def _add(M, u, v):
    out = dict(u)
    for k, c in v.items():
        s = M.ring.add(out.get(k, M.ring.zero), c)
        if M.ring.iszero(s):
            out.pop(k, None)
        else:
            out[k] = s
    return out


def test_relations_act_as_zero():
    for name in sorted(CURATED):
        g = CURATED[name]
        alg = LeavittPathAlgebra(g, F2)
        rels = [x for _, _, x in relation_instances(alg)]
        for d in all_chen_modules(g, F2, 2):
            M = ChenModule(g, d, F2)
            for b in M.basis(2):
                for x in rels:
                    assert M.act_element(x, {b: M.ring.one}) == {}, (name, d, b)
