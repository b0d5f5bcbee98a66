import pytest
from hypothesis import given, settings

from quiverhom.chainrep import homology
from quiverhom.generators import polygon, polygon_map
from quiverhom.simplicial import (ChainComplex, ComplexError, SimplicialComplex, SimplicialMap,
                                  chain_complex_of, chain_map_of, quotient_by_subcomplexes,
                                  validate_complex, validate_simplicial_map)
from quiverhom.intalg import IntMatrix

from helpers import rngs

TRIANGLE = SimplicialComplex.from_facets([(0, 1), (1, 2), (0, 2)])
DISK = SimplicialComplex.from_facets([(0, 1, 2)])
HEXAGON = polygon(6)
# six-vertex real projective plane
RP2 = SimplicialComplex.from_facets([(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
                                     (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6)])


def test_triangle_closure():
    k = validate_complex({"facets": [[0, 1], [1, 2], [0, 2]]})
    assert (len(k.n_simplices(0)), len(k.n_simplices(1)), k.dim) == (3, 3, 1)


def test_disk_closure():
    assert [len(x) for x in DISK.simplices] == [3, 3, 1]


def test_repeated_vertex_rejected():
    with pytest.raises(ComplexError, match="repeats a vertex"):
        SimplicialComplex.from_facets([(0, 0, 1)])


def test_antipodal_map_valid():
    f = validate_simplicial_map(HEXAGON, HEXAGON, {"vertex_map": {i: (i + 3) % 6 for i in range(6)}})
    m0 = chain_map_of(f).matrix(0)
    assert all(m0.data[(i + 3) % 6][i] == 1 for i in range(6))
    assert sum(sum(r) for r in m0.data) == 6


def test_non_simplicial_map_rejected():
    two_points = SimplicialComplex([0, 1], [])
    with pytest.raises(ComplexError, match="not a simplex"):
        SimplicialMap(TRIANGLE, two_points, {0: 0, 1: 1, 2: 1})


def test_chain_complex_examples():
    pt = chain_complex_of(SimplicialComplex.from_facets([(0,)]))
    assert pt.ranks == (1,)
    tri = chain_complex_of(TRIANGLE)
    assert tri.ranks == (3, 3)
    # d1 columns are v1-v0, v2-v1, v2-v0; rank 2 by hand
    from quiverhom.intalg import hnf_kernel_basis
    assert hnf_kernel_basis(tri.boundary(1)).cols == 1
    disk = chain_complex_of(DISK)
    assert disk.ranks == (3, 3, 1)
    assert (disk.boundary(1) @ disk.boundary(2)).is_zero()


def test_identity_and_collapse_chain_maps():
    ident = chain_map_of(SimplicialMap.identity(DISK))
    assert all(ident.matrix(n) == IntMatrix.identity(r) for n, r in enumerate(ident.source.ranks))
    edge = SimplicialComplex.from_facets([(0, 1)])
    collapse = chain_map_of(SimplicialMap(edge, edge, {0: 0, 1: 0}))
    assert collapse.matrix(1).is_zero()


@pytest.mark.parametrize("k, expected", [
    (SimplicialComplex.from_facets([(0,)]), ["Z", "0"]),
    (TRIANGLE, ["Z", "Z"]),
    (DISK, ["Z", "0", "0"]),
    (SimplicialComplex.from_facets([(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]), ["Z", "0", "Z"]),
    (SimplicialComplex.from_facets([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]), ["Z^2", "Z^2"]),
    (RP2, ["Z", "Z/2", "0"]),
])
def test_homology_of_known_spaces(k, expected):
    c = chain_complex_of(k)
    assert [str(homology(c, n)) for n in range(len(expected))] == expected


def test_rp2_is_a_closed_surface():
    counts = {}
    for s in RP2.facets:
        for i in range(3):
            e = s[:i] + s[i + 1:]
            counts[e] = counts.get(e, 0) + 1
    assert len(counts) == 15 and set(counts.values()) == {2}


def test_quotient_examples():
    full = quotient_by_subcomplexes(HEXAGON, HEXAGON, SimplicialComplex((), ()))
    assert full.ranks == ()
    same = quotient_by_subcomplexes(HEXAGON, SimplicialComplex((), ()), SimplicialComplex((), ()))
    assert same.ranks == chain_complex_of(HEXAGON).ranks
    a = SimplicialComplex.from_facets([(0, 1)])
    b = SimplicialComplex.from_facets([(3, 4)])
    assert quotient_by_subcomplexes(HEXAGON, a, b).ranks == (2, 4)


def test_quotient_rejects_non_subcomplex():
    with pytest.raises(ComplexError, match="A is not a subcomplex"):
        quotient_by_subcomplexes(TRIANGLE, SimplicialComplex.from_facets([(0, 7)]),
                                 SimplicialComplex((), ()))


def test_chain_complex_checks_dd():
    with pytest.raises(ComplexError, match="boundary squared"):
        ChainComplex((1, 1, 1), (IntMatrix([[1]]), IntMatrix([[1]])))


def _random_complex(rng, n):
    facets = []
    for _ in range(rng.randint(1, 5)):
        size = rng.randint(1, min(4, n))
        facets.append(tuple(rng.sample(range(n), size)))
    return SimplicialComplex(range(n), facets)


@settings(max_examples=80, deadline=None)
@given(rngs())
def test_euler_characteristic_two_ways(rng):
    k = _random_complex(rng, rng.randint(1, 6))
    c = chain_complex_of(k)
    chi = sum((-1) ** n * r for n, r in enumerate(c.ranks))
    assert chi == sum((-1) ** n * homology(c, n).free_rank for n in range(len(c.ranks)))


@settings(max_examples=80, deadline=None)
@given(rngs())
def test_chain_map_functorial(rng):
    # any vertex map into a full simplex is simplicial
    k = _random_complex(rng, rng.randint(1, 5))
    s1 = SimplicialComplex.from_facets([tuple(range(4))])
    s2 = SimplicialComplex.from_facets([tuple(range(3))])
    f = SimplicialMap(k, s1, {v: rng.randrange(4) for v in k.vertices})
    g = SimplicialMap(s1, s2, {v: rng.randrange(3) for v in s1.vertices})
    assert chain_map_of(g.compose(f)) == chain_map_of(g).compose(chain_map_of(f))


def test_polygon_rotation_degree_one():
    h = polygon(6)
    for shift in range(6):
        f = chain_map_of(polygon_map(h, h, shift, False))
        z = homology(f.source, 1).generators[0]
        assert f.matrix(1) @ z == tuple(z)
    refl = chain_map_of(polygon_map(h, h, 0, True))
    z = homology(refl.source, 1).generators[0]
    assert refl.matrix(1) @ z == tuple(-x for x in z)


def test_json_round_trip():
    assert SimplicialComplex.from_json(RP2.to_json()) == RP2
