import random

import pytest
from hypothesis import given, settings

from quiverhom.generators import random_finset_rep, random_quiver, random_set_morphism
from quiverhom.quiver import Path, Quiver, compose_paths, enumerate_paths
from quiverhom.setrep import (THETA, FinSetRep, PGammaSystem, SetMorphism, SetRepError,
                              check_system_action, classify_morphism, compose, diagonal,
                              direct_sum, from_system, product, related_exact_check,
                              to_system, to_system_morphism)

from helpers import rngs

A2 = Quiver.from_edges([1, 2], [("a", 1, 2)])


def two_point_line():
    return FinSetRep(A2, {1: ["x1", "y1"], 2: ["x2", "y2"]}, {"a": {"x1": "x2", "y1": "y2"}})


def folded_line():
    return FinSetRep(A2, {1: ["u1", "v1"], 2: ["u2", "v2"]}, {"a": {"u1": "u2", "v1": "u2"}})


def crossing_morphism():
    # swaps at vertex 1, collapses at vertex 2
    return SetMorphism(two_point_line(), folded_line(),
                       {1: {"x1": "v1", "y1": "u1"}, 2: {"x2": "u2", "y2": "u2"}})


def test_two_point_line_system():
    s = to_system(two_point_line())
    assert len(s.carrier) == 5 and THETA in s.carrier
    a = Path.of_arrows(A2, ["a"])
    assert s.act(a, "x1") == "x2" and s.act(a, "y1") == "y2"
    assert s.act(a, "x2") is THETA
    assert s.act(Path.trivial(2), "x1") is THETA
    assert check_system_action(s, 2)


def test_empty_and_singleton_systems():
    empty = FinSetRep.empty(A2)
    s = to_system(empty)
    assert s.carrier == frozenset({THETA})
    assert from_system(s) == empty
    q = Quiver.from_edges([1], [])
    s1 = to_system(FinSetRep(q, {1: ["a"]}, {}))
    assert s1.carrier == frozenset({"a", THETA})
    assert s1.act(Path.trivial(1), "a") == "a"


def test_round_trip_two_point_line():
    assert from_system(to_system(two_point_line())) == two_point_line()


def test_system_rejects_bad_action():
    with pytest.raises(SetRepError, match="leaves the target part"):
        PGammaSystem(A2, frozenset({THETA, "p", "q"}), {1: {"p"}, 2: {"q"}}, {"a": {"p": "p"}})


def test_null_propagation_enforced():
    with pytest.raises(SetRepError, match="null propagation"):
        FinSetRep(A2, {1: ["x"], 2: []}, {"a": {}})


def test_crossing_morphism_is_neither():
    h = crossing_morphism()
    c = classify_morphism(h)
    assert (c.mono, c.epi, c.iso) == (False, False, False)
    assert not related_exact_check(SetMorphism.from_empty(h.source), h).exact
    r = related_exact_check(h, SetMorphism.to_empty(h.target))
    assert not r.exact and r.witness[0] == 2


def test_identity_and_inclusion_classes():
    rep = two_point_line()
    c = classify_morphism(SetMorphism.identity(rep))
    assert (c.mono, c.epi, c.iso) == (True, True, True)
    sub = FinSetRep(A2, {1: ["x1"], 2: ["x2"]}, {"a": {"x1": "x2"}})
    inc = SetMorphism(sub, rep, {1: {"x1": "x1"}, 2: {"x2": "x2"}})
    c = classify_morphism(inc)
    assert (c.mono, c.epi, c.iso) == (True, False, False)


def test_sum_product_cardinalities():
    a, b = two_point_line(), folded_line()
    s = direct_sum(a, a)
    assert [s.size(v) for v in A2.vertices] == [4, 4]
    assert [direct_sum(a, FinSetRep.empty(A2)).size(v) for v in A2.vertices] == [2, 2]
    p = product(a, b)
    assert [p.size(v) for v in A2.vertices] == [4, 4]
    pt = FinSetRep(A2, {1: ["p"], 2: ["q"]}, {"a": {"p": "q"}})
    assert [product(a, pt).size(v) for v in A2.vertices] == [2, 2]


def test_diagonal_is_subobject():
    d, incl = diagonal(two_point_line())
    assert classify_morphism(incl).mono
    assert [d.size(v) for v in A2.vertices] == [2, 2]


def _random_rep(rng):
    q = random_quiver(rng, rng.randint(1, 5), rng.randint(0, 6))
    return random_finset_rep(rng, q, max_elems=4)


@settings(max_examples=100, deadline=None)
@given(rngs())
def test_round_trips(rng):
    rep = _random_rep(rng)
    s = to_system(rep)
    assert from_system(s) == rep
    assert to_system(from_system(s)) == s
    assert check_system_action(s, 2)


@settings(max_examples=60, deadline=None)
@given(rngs())
def test_system_functor_preserves_composition(rng):
    rep = _random_rep(rng)
    h = random_set_morphism(rng, rep)
    g = random_set_morphism(rng, h.target)
    gh = compose(g, h)
    fg, fh, fgh = to_system_morphism(g), to_system_morphism(h), to_system_morphism(gh)
    assert all(fgh[m] == fg[fh[m]] for m in fh)
    # the induced map commutes with the path action
    s1, s2 = to_system(rep), to_system(h.target)
    for p in enumerate_paths(rep.quiver, 2):
        for m in s1.carrier:
            assert fh[s1.act(p, m)] == s2.act(p, fh[m])


@settings(max_examples=100, deadline=None)
@given(rngs())
def test_related_exactness_at_empty_ends(rng):
    rep = _random_rep(rng)
    h = random_set_morphism(rng, rep)
    c = classify_morphism(h)
    assert related_exact_check(SetMorphism.from_empty(rep), h).exact == c.mono
    if all(h.target.size(v) >= 2 for v in rep.quiver.vertices):
        assert related_exact_check(h, SetMorphism.to_empty(h.target)).exact == c.epi


def test_zero_morphism_from_condition_gamma():
    q = Quiver.from_edges([1], [])
    a = FinSetRep(q, {1: ["p"]}, {})
    z = SetMorphism.to_empty(a)
    assert z.is_zero
    assert to_system_morphism(z) == {THETA: THETA, "p": THETA}
