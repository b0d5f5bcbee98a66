"""A hexagon with its antipodal map, placed over three different quivers.

Over a loop or an oriented 3-cycle (odd length) the limit picks out the
antipodal-symmetric chains, and the circle modulo their image has H0 = Z/2.
Over an oriented 2-cycle the round trip is the identity and the quotient
vanishes.

    python demos/antipodal_hexagon.py
"""

from quiverhom.atspace import at_space, h_natural
from quiverhom.chainrep import antipodal_quotient_h0, homology, rep_limit, s_gamma
from quiverhom.generators import polygon
from quiverhom.quiver import Quiver
from quiverhom.simplicial import SimplicialMap, SimplicialRep

HEX = polygon(6)
ANTI = SimplicialMap(HEX, HEX, {i: (i + 3) % 6 for i in range(6)})


def antipodal_rep(q):
    return SimplicialRep(q, {v: HEX for v in q.vertices}, {a.id: ANTI for a in q.arrows})


def cycle(m):
    return Quiver.from_edges(range(1, m + 1), [(f"c{i}", i, i % m + 1) for i in range(1, m + 1)])


for m in (1, 2, 3):
    rep = antipodal_rep(cycle(m))
    lim = rep_limit(s_gamma(rep))
    groups = [str(homology(lim.complex, n)) for n in range(2)]
    quot = antipodal_quotient_h0(rep)
    print(f"oriented {m}-cycle: limit ranks {list(lim.complex.ranks)}, "
          f"H0 = {groups[0]}, H1 = {groups[1]}, "
          f"H0(circle / limit image) = {quot.h0}")

loop = antipodal_rep(cycle(1))
at = at_space(loop)
print(f"\nattachment space of the loop: {at.n_classes} classes, "
      f"f-vector {[len(x) for x in at.complex.simplices]}")
print(f"H0(sigma) on the loop: {h_natural(loop, 0).matrix.tolist()}  (multiplication by 2)")
