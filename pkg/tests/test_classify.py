import pytest

from ulpa.classify import (Graded, NonGradedPrime, classify_graded, enumerate_primes,
                           enumerate_primitives, irreducible_laurents, is_prime_algebra,
                           is_primitive_algebra, is_simple_algebra, primes_all_graded)
from ulpa.corpus import G_FAN, G_LOOP, G_OMEGA, LOOP2
from ulpa.errors import NotIrreducible
from ulpa.fields import QQ, Field, parse_laurent
from ulpa.lattice import AdmissiblePair, admissible_pairs, quotient
from ulpa.ultragraph import Cycle, condition_k, exclusive_cycles, is_downward_directed, make, reachability

F2, F3 = Field(2), Field(3)
ISOLATED = make(["a", "b"], [])


def shows(g, ds):
    return [d.show(g) for d in ds]


def test_algebra_level():
    assert is_prime_algebra(G_FAN)
    v = is_prime_algebra(ISOLATED)
    assert not v and v.witness == ("a", "b")
    assert is_prime_algebra(G_LOOP)
    assert is_primitive_algebra(G_FAN)
    v = is_primitive_algebra(G_LOOP)
    assert not v and v.witness[1] == Cycle.of("e")
    assert is_primitive_algebra(make(["v"], []))
    assert not is_simple_algebra(G_FAN)
    assert is_simple_algebra(LOOP2)
    assert not is_simple_algebra(G_LOOP)


def test_classify_graded_examples():
    r = classify_graded(G_FAN, AdmissiblePair(frozenset({"w"})))
    assert r.prime and r.case == "i"
    r = classify_graded(G_OMEGA, AdmissiblePair(frozenset({"w"})))
    assert r.prime and r.case == "ii" and r.witness == "u"
    r = classify_graded(ISOLATED, AdmissiblePair(frozenset()))
    assert not r.prime and r.witness is not None


def test_primes_examples():
    assert shows(G_LOOP, enumerate_primes(G_LOOP, F2, 2)) == [
        "Graded({}, {})", "NonGraded(e, x + 1)", "NonGraded(e, x^2 + x + 1)"]
    assert shows(G_FAN, enumerate_primes(G_FAN, F2, 1)) == [
        "Graded({}, {})", "Graded({w}, {})", "NonGraded(e, x + 1)"]
    assert shows(ISOLATED, enumerate_primes(ISOLATED, F2, 1)) == ["Graded({a}, {})", "Graded({b}, {})"]


def test_primitives_examples():
    assert shows(G_LOOP, enumerate_primitives(G_LOOP, F2, 2)) == [
        "NonGraded(e, x + 1)", "NonGraded(e, x^2 + x + 1)"]
    assert shows(G_FAN, enumerate_primitives(G_FAN, F2, 1)) == ["Graded({}, {})", "NonGraded(e, x + 1)"]
    ps = enumerate_primitives(G_OMEGA, F2, 1)
    assert Graded(AdmissiblePair(frozenset({"w"}))) in ps


def test_primes_over_q_with_explicit_polys():
    ps = enumerate_primes(G_LOOP, QQ, polys=[parse_laurent("x^2 - 2", QQ)])
    assert shows(G_LOOP, ps) == ["Graded({}, {})", "NonGraded(e, x^2 - 2)"]
    with pytest.raises(NotIrreducible):
        enumerate_primes(G_LOOP, QQ, polys=[parse_laurent("x^2 - 1", QQ)])


def test_condition_k_equivalence(specs):
    for name, g in specs.items():
        assert primes_all_graded(g, F2, 2) == condition_k(g), name


def test_count_law(specs):
    for p in (2, 3):
        K = Field(p)
        for d in (1, 2, 3):
            n_irr = len(irreducible_laurents(K, d))
            for g in specs.values():
                ng = [x for x in enumerate_primes(g, K, d) if isinstance(x, NonGradedPrime)]
                assert len(ng) == len(exclusive_cycles(g)) * n_irr


def _quotient_is_prime(g, pair):
    return is_downward_directed(quotient(g, pair).graph)


def test_graded_primes_match_quotient_oracle(specs):
    for name, g in specs.items():
        emitted = {d.pair for d in enumerate_primes(g, F2, 1) if isinstance(d, Graded)}
        for pair in admissible_pairs(g, proper=True):
            assert (pair in emitted) == _quotient_is_prime(g, pair), (name, pair.show(g))


def test_rejections_carry_real_witnesses(specs):
    for g in specs.values():
        for pair in admissible_pairs(g, proper=True):
            r = classify_graded(g, pair)
            if r.prime:
                continue
            kind, w = r.witness
            rest = set(g.vertices) - pair.W
            reach = reachability(g)
            if kind.startswith("two breaking"):
                a, b = w
                assert a in rest and b in rest and a not in pair.S and b not in pair.S
            elif kind.startswith("complement not"):
                a, b = w
                assert not (reach[a] & reach[b] & rest)
            else:
                assert w in rest


def test_graded_primitives_match_quotient_oracle(specs):
    for name, g in specs.items():
        got = {d.pair for d in enumerate_primitives(g, F2, 1) if isinstance(d, Graded)}
        for pair in admissible_pairs(g, proper=True):
            want = bool(is_primitive_algebra(quotient(g, pair).graph))
            assert (pair in got) == want, (name, pair.show(g))


def test_primitives_are_primes(specs):
    for g in specs.values():
        primes = set(enumerate_primes(g, F2, 2))
        assert set(enumerate_primitives(g, F2, 2)) <= primes
