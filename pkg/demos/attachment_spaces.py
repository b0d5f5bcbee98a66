"""Attachment spaces: glue the vertex complexes along the arrow maps.

A line of four hexagons joined by rotations and reflections glues back to
a single hexagon.  Adding a second quiver component adds a second
connected piece, and sigma carries limit homology into the glued space.

    python demos/attachment_spaces.py
"""

from quiverhom.atspace import at_space, component_count, h_natural, sigma
from quiverhom.chainrep import homology
from quiverhom.generators import constant_rep, join_quivers, polygon, polygon_map
from quiverhom.quiver import Quiver
from quiverhom.simplicial import SimplicialComplex, SimplicialRep, chain_complex_of

q = Quiver.from_edges([1, 2, 3, 4], [("a1", 1, 2), ("a2", 2, 3), ("a3", 3, 4)])
hexes = {v: polygon(6, 10 * v) for v in q.vertices}
line = SimplicialRep(q, hexes, {f"a{v}": polygon_map(hexes[v], hexes[v + 1], v, v % 2 == 0)
                                for v in (1, 2, 3)})
at = at_space(line)
print(f"line of hexagons: {at.n_classes} classes from {at.n_pairs} identifications, "
      f"H1 = {homology(chain_complex_of(at.complex), 1)}")

tri = constant_rep(Quiver.from_edges([7, 8], [("b", 7, 8)]), polygon(3))
both = join_quivers(line, tri)
at2 = at_space(both)
print(f"with a second component: {component_count(at2)} connected pieces "
      f"(quiver components: {len(both.quiver.components())})")

s = sigma(both)
print(f"sigma: base independent {all(c.base_independent for c in s.components)}, "
      f"chain map {all(c.chain_map for c in s.components)}")
for n in range(2):
    print(f"H{n}(sigma) = {h_natural(both, n, s).matrix.tolist()}")

point = SimplicialComplex.from_facets([(0,)])
print(f"point over any connected quiver glues to {at_space(constant_rep(q, point)).n_classes} point")
