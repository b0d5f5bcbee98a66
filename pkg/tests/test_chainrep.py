import json
import random

import pytest
from hypothesis import given, settings

from quiverhom.chainrep import (ChainRep, ChainRepMorphism, antipodal_quotient_h0,
                                basepoint_subrep, cycle_fixed_limit, excision_check, homology,
                                homology_rep, induced_homology_map, projection_report,
                                relative_homology, rep_homology, rep_limit, rho, rho_naturality,
                                s_gamma, s_gamma_morphism, verify_homotopy)
from quiverhom.checks import FIXTURES
from quiverhom.formats import parse_input
from quiverhom.generators import (cone_contraction, cone_rep, constant_rep, join_quivers,
                                  perturb_homotopy, polygon, polygon_map, random_quiver,
                                  random_quotient_morphism, random_simplicial_rep,
                                  scaled_cycle_rep)
from quiverhom.intalg import (AbRep, AbRepMorphism, FgAbGroup, GroupHom, IntMatrix, ab_limit,
                              left_exactness_check)
from quiverhom.quiver import Quiver
from quiverhom.simplicial import (EMPTY, ChainMap, SimplicialComplex, SimplicialMap,
                                  SimplicialRep, SimplicialRepMorphism, chain_complex_of,
                                  chain_map_of, sub_representation, validate_complex)

from helpers import rngs

POINT = SimplicialComplex.from_facets([(0,)])
TRIANGLE = polygon(3)
A2 = Quiver.from_edges([1, 2], [("a", 1, 2)])


def fixture(name):
    return parse_input(FIXTURES / name)


def groups(crep, top):
    lim = rep_limit(crep)
    return [str(homology(lim.complex, n)) for n in range(top + 1)]


def test_point_rep_over_connected_quiver():
    q = Quiver.from_edges([1, 2, 3], [("a", 1, 2), ("b", 3, 2), ("c", 1, 1)])
    crep = s_gamma(constant_rep(q, POINT))
    assert groups(crep, 2) == ["Z", "0", "0"]
    r = rho(crep, 0)
    assert r.hom.is_injective() and r.hom.is_surjective()


def test_cospan_gives_three_complexes():
    q = Quiver.from_edges([1, 2, 3], [("a", 1, 2), ("b", 3, 2)])
    big = SimplicialComplex.from_facets([(0, 1, 2)])
    rep = SimplicialRep(q, {1: POINT, 2: big, 3: TRIANGLE},
                        {"a": SimplicialMap(POINT, big, {0: 0}),
                         "b": SimplicialMap(TRIANGLE, big, {0: 0, 1: 1, 2: 2})})
    crep = s_gamma(rep)
    assert len(crep.complexes) == 3 and len(crep.maps) == 2
    hrep = homology_rep(crep, 1)
    assert [str(hrep.groups[v]) for v in q.vertices] == ["0", "0", "Z"]


def test_line_of_hexagons():
    q = Quiver.from_edges([1, 2, 3, 4], [("a1", 1, 2), ("a2", 2, 3), ("a3", 3, 4)])
    hexes = {v: polygon(6, 10 * v) for v in q.vertices}
    maps = {f"a{v}": polygon_map(hexes[v], hexes[v + 1], v, v % 2 == 0) for v in (1, 2, 3)}
    crep = s_gamma(SimplicialRep(q, hexes, maps))
    lim = rep_limit(crep)
    assert lim.complex.ranks == (6, 6)
    assert groups(crep, 1) == ["Z", "Z"]
    assert all(projection_report(lim, v).isomorphism for v in q.vertices)
    r = rho(crep, 1, lim)
    assert r.hom.is_injective() and r.hom.is_surjective()


def test_doubling_loop_has_zero_limit():
    q = Quiver.from_edges([1], [("l", 1, 1)])
    c = chain_complex_of(POINT)
    crep = ChainRep(q, {1: c}, {"l": ChainMap(c, c, (IntMatrix([[2]]),))})
    assert rep_limit(crep).complex.ranks in ((), (0,))


def test_antipodal_acts_trivially_on_h1():
    rep = fixture("hexagon_loop.json")
    hrep = homology_rep(s_gamma(rep), 1)
    (a,) = rep.quiver.arrows
    assert hrep.homs[a.id].matrix == IntMatrix([[1]])


def test_limit_of_two_components_is_product():
    rng = random.Random(3)
    r1 = random_simplicial_rep(rng, random_quiver(rng, 2, 2, connected=True), connected=True)
    r2 = random_simplicial_rep(rng, random_quiver(rng, 3, 3, connected=True, first=3, prefix="b"),
                               connected=True)
    lim = rep_limit(s_gamma(join_quivers(r1, r2)))
    l1, l2 = rep_limit(s_gamma(r1)), rep_limit(s_gamma(r2))
    for n in range(lim.top_degree + 1):
        assert lim.complex.rank(n) == l1.complex.rank(n) + l2.complex.rank(n)


@settings(max_examples=60, deadline=None)
@given(rngs())
def test_components_multiply(rng):
    q1 = random_quiver(rng, rng.randint(1, 3), rng.randint(0, 3))
    q2 = random_quiver(rng, rng.randint(1, 3), rng.randint(0, 3), first=10, prefix="b")
    r1, r2 = random_simplicial_rep(rng, q1), random_simplicial_rep(rng, q2)
    joint = s_gamma(join_quivers(r1, r2))
    for n in range(3):
        want = FgAbGroup.direct_sum([rep_homology(s_gamma(r1), n).group,
                                     rep_homology(s_gamma(r2), n).group])
        assert rep_homology(joint, n).group.invariant_factors == want.invariant_factors


@pytest.mark.parametrize("m", [1, 2, 3])
def test_constant_circle_over_m_points(m):
    q = Quiver.from_edges(range(m), [])
    assert groups(s_gamma(constant_rep(q, TRIANGLE)), 1) == [f"Z^{m}" if m > 1 else "Z"] * 2


def _sphere_like(rng, q, size):
    # the same polygon everywhere, arrows act by rotations shared by parallel arrows
    shifts = {}
    maps = {}
    k = polygon(size)
    for a in q.arrows:
        s = shifts.setdefault((a.src, a.tgt), rng.randrange(size))
        maps[a.id] = polygon_map(k, k, s, False)
    return SimplicialRep(q, {v: k for v in q.vertices}, maps)


@settings(max_examples=60, deadline=None)
@given(rngs())
def test_isomorphism_reps_project_injectively(rng):
    n = rng.randint(1, 4)
    q = random_quiver(rng, n, rng.randint(n - 1, n + 2), connected=True)
    crep = s_gamma(_sphere_like(rng, q, rng.choice([3, 4, 5])))
    lim = rep_limit(crep)
    for v in q.vertices:
        assert projection_report(lim, v).injective
    # a tree, up to parallel arrows in the same direction
    undirected = {tuple(sorted((a.src, a.tgt))) for a in q.arrows}
    directed = {(a.src, a.tgt) for a in q.arrows}
    if all(a.src != a.tgt for a in q.arrows) and len(undirected) == len(directed) == n - 1:
        assert all(projection_report(lim, v).isomorphism for v in q.vertices)


# rho

def _random_rep(rng, max_vertices=4):
    q = random_quiver(rng, rng.randint(1, max_vertices), rng.randint(0, max_vertices + 1))
    return random_simplicial_rep(rng, q, max_points=4)


@settings(max_examples=40, deadline=None)
@given(rngs())
def test_rho_kills_boundaries(rng):
    crep = s_gamma(_random_rep(rng))
    lim = rep_limit(crep)
    for n in range(2):
        r = rho(crep, n, lim)
        d = lim.complex.boundary(n + 1)
        for b in d.columns():
            x = lim.inclusion[n] @ b
            for v in crep.quiver.vertices:
                h = r.vertex_homology[v]
                assert h.group.is_zero(h.class_of(lim.component(n, v, x)))


@settings(max_examples=40, deadline=None)
@given(rngs())
def test_rho_natural(rng):
    theta = s_gamma_morphism(random_quotient_morphism(rng, _random_rep(rng)))
    assert rho_naturality(theta, 0) and rho_naturality(theta, 1)


# homotopies

def test_zero_homotopy_between_equal_maps():
    crep = s_gamma(fixture("hexagon_loop.json"))
    ident = ChainRepMorphism.identity(crep)
    rep = verify_homotopy(ident, ident, {})
    assert rep.ok and all(rep.homology_agrees.values())


def test_interval_contraction():
    q = Quiver.from_edges([1], [])
    edge = SimplicialComplex.from_facets([(0, 1)])
    rep = SimplicialRep(q, {1: edge}, {})
    crep = s_gamma(rep)
    const = s_gamma_morphism(SimplicialRepMorphism(rep, rep, {1: SimplicialMap(edge, edge, {0: 0, 1: 0})}))
    ident = ChainRepMorphism.identity(crep)
    # F(v0) = 0, F(v1) = [v0, v1]
    F = {1: [IntMatrix([[0, 1]])]}
    rep_ok = verify_homotopy(const, ident, F)
    assert rep_ok.ok and rep_ok.homology_agrees[0]
    bad = verify_homotopy(const, ident, {1: [IntMatrix([[1, 1]])]})
    assert not bad.ok
    assert bad.failures[0].startswith("vertex 1, degree 0: dF + Fd != beta - alpha")


@settings(max_examples=30, deadline=None)
@given(rngs())
def test_cone_homotopies(rng):
    cone = cone_rep(_random_rep(rng, 3))
    alpha, beta, F = cone_contraction(cone)
    good = verify_homotopy(alpha, beta, F)
    assert good.ok and all(good.homology_agrees.values())
    bad = verify_homotopy(alpha, beta, perturb_homotopy(rng, F))
    assert not bad.ok and bad.failures


@settings(max_examples=30, deadline=None)
@given(rngs())
def test_homotopy_equivalent_reps_share_homology(rng):
    cone = cone_rep(_random_rep(rng, 3))
    q = cone.quiver
    pt = constant_rep(q, POINT)
    mu = SimplicialRepMorphism(cone, pt, {v: SimplicialMap(cone.complexes[v], POINT,
                                                           {x: 0 for x in cone.complexes[v].vertices})
                                          for v in q.vertices})
    nu = SimplicialRepMorphism(pt, cone, {v: SimplicialMap(POINT, cone.complexes[v], {0: 0})
                                          for v in q.vertices})
    mu_c, nu_c = s_gamma_morphism(mu), s_gamma_morphism(nu)
    alpha, beta, F = cone_contraction(cone)
    assert nu_c.compose(mu_c).components == alpha.components
    assert verify_homotopy(nu_c.compose(mu_c), beta, F).ok
    assert verify_homotopy(mu_c.compose(nu_c), ChainRepMorphism.identity(s_gamma(pt)), {}).ok
    for n in range(3):
        assert rep_homology(s_gamma(cone), n).group.is_isomorphic(
            rep_homology(s_gamma(pt), n).group)


# relative homology and excision

def test_relative_examples():
    rep = constant_rep(A2, TRIANGLE)
    ident = s_gamma_morphism(SimplicialRepMorphism.identity(rep))
    assert all(relative_homology(ident, n).group.is_trivial() for n in range(2))
    _, incl = basepoint_subrep(rep, {1: 0, 2: 0})
    c = s_gamma_morphism(incl)
    assert [str(relative_homology(c, n)) for n in range(2)] == ["0", "Z"]
    _, empty = sub_representation(rep, {1: EMPTY, 2: EMPTY})
    assert [str(relative_homology(s_gamma_morphism(empty), n)) for n in range(2)] == ["Z", "Z"]


def test_relative_rejects_non_injective():
    rep = constant_rep(A2, TRIANGLE)
    pt = constant_rep(A2, POINT)
    collapse = SimplicialRepMorphism(rep, pt, {v: SimplicialMap(TRIANGLE, POINT, {0: 0, 1: 0, 2: 0})
                                               for v in A2.vertices})
    with pytest.raises(ValueError, match="not injective"):
        relative_homology(s_gamma_morphism(collapse), 0)


def test_excision_examples():
    rep = constant_rep(A2, TRIANGLE)
    full = excision_check(rep, {1: TRIANGLE, 2: TRIANGLE}, {1: EMPTY, 2: EMPTY})
    assert full.covered and full.vanishes
    raw = json.loads((FIXTURES / "hexagon_arcs.json").read_text())
    arcs = fixture("hexagon_arcs.json")
    A = {int(v): validate_complex(k) for v, k in raw["cover"]["A"].items()}
    B = {int(v): validate_complex(k) for v, k in raw["cover"]["B"].items()}
    r = excision_check(arcs, A, B)
    assert r.covered and not r.pieces_preserved and r.vanishes
    part = excision_check(rep, {1: POINT, 2: POINT}, {1: EMPTY, 2: EMPTY})
    assert not part.covered and str(part.h1.group) == "Z"


# cycles

@pytest.mark.parametrize("m", [1, 2, 3])
def test_doubling_round_trip_vanishes(m):
    cl = cycle_fixed_limit(scaled_cycle_rep(m, TRIANGLE, 2))
    assert cl.certified
    assert all(r == 0 for r in cl.limit.complex.ranks)
    assert str(homology(cl.limit.complex, 1)) == "0"
    ident = cycle_fixed_limit(scaled_cycle_rep(m, TRIANGLE, 1))
    assert str(homology(ident.limit.complex, 1)) == "Z"


def test_antipodal_three_cycle_fixed_chains():
    cl = cycle_fixed_limit(s_gamma(fixture("hexagon_3cycle.json")))
    assert cl.certified and cl.limit.complex.ranks == (3, 3)
    h0 = homology(cl.limit.complex, 0)
    assert str(h0) == "Z"
    # the generator projects to v_i + v_(i+3) at the base vertex
    g = cl.limit.component(0, 1, cl.limit.inclusion[0] @ h0.generators[0])
    assert sorted(abs(x) for x in g) == [0, 0, 0, 0, 1, 1]


@pytest.mark.parametrize("name, text", [
    ("hexagon_loop.json", "Z/2"),
    ("hexagon_2cycle.json", "0"),
    ("hexagon_3cycle.json", "Z/2"),
    ("square_loop.json", "Z/2"),
])
def test_antipodal_h0(name, text):
    assert str(antipodal_quotient_h0(fixture(name)).h0) == text


# degreewise short exact sequences from subrepresentations

def _forward_closed_sub(rng, rep):
    q = rep.quiver
    keep = {v: {x for x in rep.complexes[v].vertices if rng.random() < 0.4} for v in q.vertices}
    changed = True
    while changed:
        changed = False
        for a in q.arrows:
            img = {rep.maps[a.id](x) for x in keep[a.src]}
            if not img <= keep[a.tgt]:
                keep[a.tgt] |= img
                changed = True
    return {v: SimplicialComplex(keep[v], [s for s in rep.complexes[v].all_simplices()
                                            if set(s) <= keep[v]])
            for v in q.vertices}


@settings(max_examples=40, deadline=None)
@given(rngs())
def test_limit_left_exact_degreewise(rng):
    rep = _random_rep(rng)
    sub, incl = sub_representation(rep, _forward_closed_sub(rng, rep))
    A, B = s_gamma(sub), s_gamma(rep)
    inc = s_gamma_morphism(incl)
    q = rep.quiver
    for n in range(2):
        ga = {v: FgAbGroup.free(A.complexes[v].rank(n)) for v in q.vertices}
        gb = {v: FgAbGroup.free(B.complexes[v].rank(n)) for v in q.vertices}
        gc = {v: FgAbGroup(B.complexes[v].rank(n), inc.components[v].matrix(n)) for v in q.vertices}
        ra = AbRep(q, ga, {a.id: GroupHom(ga[a.src], ga[a.tgt], A.maps[a.id].matrix(n))
                           for a in q.arrows})
        rb = AbRep(q, gb, {a.id: GroupHom(gb[a.src], gb[a.tgt], B.maps[a.id].matrix(n))
                           for a in q.arrows})
        rc = AbRep(q, gc, {a.id: GroupHom(gc[a.src], gc[a.tgt], B.maps[a.id].matrix(n))
                           for a in q.arrows})
        alpha = AbRepMorphism(ra, rb, {v: GroupHom(ga[v], gb[v], inc.components[v].matrix(n))
                                       for v in q.vertices})
        beta = AbRepMorphism(rb, rc, {v: GroupHom(gb[v], gc[v], IntMatrix.identity(gb[v].n_generators))
                                      for v in q.vertices})
        assert left_exactness_check(alpha, beta).exact
        # the abelian limit and the limit complex agree on ranks
        assert ab_limit(ra).group.free_rank == rep_limit(A).complex.rank(n)
