"""
Seeded random instances for the property suites.

Every generator takes a ``random.Random`` so that a suite run is a pure
function of its seed.
"""

from __future__ import annotations

import random
from itertools import combinations

from .atspace import UnionFind
from .chainrep import ChainRep, ChainRepMorphism, s_gamma, s_gamma_morphism
from .intalg import AbRep, AbRepMorphism, FgAbGroup, GroupHom, IntMatrix, Lattice
from .quiver import Quiver
from .setrep import FinSetRep, SetMorphism, direct_sum
from .simplicial import (ChainComplex, ChainMap, SimplicialComplex, SimplicialMap, SimplicialRep,
                         SimplicialRepMorphism, chain_complex_of)


def random_quiver(rng: random.Random, n_vertices: int, n_arrows: int, connected: bool = False,
                  loops: bool = True, first: int = 1, prefix: str = "a") -> Quiver:
    """Quiver on ``first .. first + n_vertices - 1``.

    With ``connected`` a random spanning tree (random orientations) is laid
    down first, so ``n_arrows`` is raised to at least ``n_vertices - 1``.
    """
    verts = list(range(first, first + n_vertices))
    edges = []
    if connected:
        for k in range(1, n_vertices):
            u, w = verts[k], verts[rng.randrange(k)]
            edges.append((u, w) if rng.random() < 0.5 else (w, u))
    while len(edges) < n_arrows:
        u, w = rng.choice(verts), rng.choice(verts)
        if u == w and not loops:
            continue
        edges.append((u, w))
    rng.shuffle(edges)
    return Quiver.from_edges(verts, [(f"{prefix}{i}", u, w) for i, (u, w) in enumerate(edges)])


def disjoint_union(q1: Quiver, q2: Quiver) -> Quiver:
    """Union of two quivers with disjoint vertex sets and arrow ids."""
    return Quiver.from_edges(list(q1.vertices) + list(q2.vertices),
                             [(a.id, a.src, a.tgt) for a in q1.arrows + q2.arrows])


# finite set representations


def random_finset_rep(rng: random.Random, q: Quiver, max_elems: int = 4, min_elems: int = 0,
                      prefix: str = "") -> FinSetRep:
    size = {v: rng.randint(min_elems, max_elems) for v in q.vertices}
    changed = True
    while changed:
        changed = False
        for a in q.arrows:
            if size[a.tgt] == 0 and size[a.src]:
                size[a.src] = 0
                changed = True
    sets = {v: [f"{prefix}{v}.{k}" for k in range(size[v])] for v in q.vertices}
    maps = {a.id: {x: rng.choice(sets[a.tgt]) for x in sets[a.src]} for a in q.arrows}
    return FinSetRep(q, sets, maps)


def random_set_morphism(rng: random.Random, rep: FinSetRep, extra: int = 3) -> SetMorphism:
    """A morphism out of ``rep``: a random compatible quotient followed by a summand inclusion.

    The quotient merges random pairs and closes the relation under the arrow
    maps; the summand is a random representation (or nothing).
    """
    q = rep.quiver
    uf = UnionFind((v, x) for v in q.vertices for x in rep.sets[v])
    if rng.random() < 0.5:
        for v in q.vertices:
            xs = rep.sets[v]
            for _ in range(rng.randint(0, len(xs))):
                uf.union((v, rng.choice(xs)), (v, rng.choice(xs)))
    changed = True
    while changed:
        changed = False
        for a in q.arrows:
            f = rep.maps[a.id]
            xs = rep.sets[a.src]
            for x, y in combinations(xs, 2):
                if uf.find((a.src, x)) == uf.find((a.src, y)):
                    changed |= uf.union((a.tgt, f[x]), (a.tgt, f[y]))
    rep_of = {}
    for g in uf.groups():
        for p in g:
            rep_of[p] = g[0][1] + "/"
    sets = {v: sorted({rep_of[(v, x)] for x in rep.sets[v]}) for v in q.vertices}
    maps = {a.id: {rep_of[(a.src, x)]: rep_of[(a.tgt, y)] for x, y in rep.maps[a.id].items()}
            for a in q.arrows}
    quot = FinSetRep(q, sets, maps)
    if rng.random() < 0.5:
        side = random_finset_rep(rng, q, extra, prefix="r")
    else:
        side = FinSetRep.empty(q)
    target = direct_sum(quot, side)
    comps = {v: {x: rep_of[(v, x)] + "#L" for x in rep.sets[v]} for v in q.vertices}
    return SetMorphism(rep, target, comps)


# simplicial representations


def _random_complex_facets(rng: random.Random, verts: list, connected: bool) -> list:
    facets = []
    if connected:
        for k in range(1, len(verts)):
            facets.append((verts[k], verts[rng.randrange(k)]))
    for _ in range(rng.randint(0, len(verts))):
        k = rng.randint(1, min(3, len(verts)))
        facets.append(tuple(rng.sample(verts, k)))
    facets.extend((v,) for v in verts)
    return facets


def close_under_maps(q: Quiver, facets: dict, vmaps: dict) -> SimplicialRep:
    """Add the image of every simplex to the target complex until the maps are simplicial."""
    facets = {v: {tuple(sorted(s)) for s in f} for v, f in facets.items()}
    verts = {v: sorted({x for s in f for x in s}) for v, f in facets.items()}
    changed = True
    while changed:
        changed = False
        for a in q.arrows:
            m = vmaps[a.id]
            for s in list(facets[a.src]):
                img = tuple(sorted({m[x] for x in s}))
                if not any(set(img) <= set(t) for t in facets[a.tgt]):
                    facets[a.tgt].add(img)
                    changed = True
    cx = {v: SimplicialComplex(verts[v], facets[v]) for v in q.vertices}
    maps = {a.id: SimplicialMap(cx[a.src], cx[a.tgt], dict(vmaps[a.id])) for a in q.arrows}
    return SimplicialRep(q, cx, maps)


def random_simplicial_rep(rng: random.Random, q: Quiver, max_points: int = 4,
                          connected: bool = False, offset: int = 0) -> SimplicialRep:
    """Random complexes on at most ``max_points`` vertices, random vertex maps, closed up."""
    verts = {v: list(range(offset, offset + rng.randint(1, max_points))) for v in q.vertices}
    facets = {v: _random_complex_facets(rng, verts[v], connected) for v in q.vertices}
    vmaps = {a.id: {x: rng.choice(verts[a.tgt]) for x in verts[a.src]} for a in q.arrows}
    return close_under_maps(q, facets, vmaps)


def random_quotient_morphism(rng: random.Random, rep: SimplicialRep) -> SimplicialRepMorphism:
    """Collapse a random relation (closed under the arrow maps) at every vertex.

    Each class is named by its smallest vertex, so the components are
    retractions onto class representatives.
    """
    q = rep.quiver
    uf = UnionFind((v, x) for v in q.vertices for x in rep.complexes[v].vertices)
    for v in q.vertices:
        xs = rep.complexes[v].vertices
        for _ in range(rng.randint(0, max(0, len(xs) - 1))):
            uf.union((v, rng.choice(xs)), (v, rng.choice(xs)))
    changed = True
    while changed:
        changed = False
        for a in q.arrows:
            f = rep.maps[a.id]
            for x, y in combinations(f.source.vertices, 2):
                if uf.find((a.src, x)) == uf.find((a.src, y)):
                    changed |= uf.union((a.tgt, f(x)), (a.tgt, f(y)))
    r = {}
    for g in uf.groups():
        for p in g:
            r[p] = g[0][1]
    facets = {v: [{r[(v, x)] for x in s} for s in rep.complexes[v].facets] for v in q.vertices}
    vmaps = {a.id: {r[(a.src, x)]: r[(a.tgt, rep.maps[a.id](x))] for x in rep.complexes[a.src].vertices}
             for a in q.arrows}
    target = close_under_maps(q, facets, vmaps)
    comps = {v: SimplicialMap(rep.complexes[v], target.complexes[v],
                              {x: r[(v, x)] for x in rep.complexes[v].vertices})
             for v in q.vertices}
    return SimplicialRepMorphism(rep, target, comps)


def union_rep(r1: SimplicialRep, r2: SimplicialRep) -> SimplicialRep:
    """Vertexwise disjoint union over a common quiver (vertex labels must not clash)."""
    q = r1.quiver
    cx, maps = {}, {}
    for v in q.vertices:
        a, b = r1.complexes[v], r2.complexes[v]
        cx[v] = SimplicialComplex(a.vertices + b.vertices, a.all_simplices() + b.all_simplices())
    for al in q.arrows:
        m = dict(r1.maps[al.id].vertex_map)
        m.update(r2.maps[al.id].vertex_map)
        maps[al.id] = SimplicialMap(cx[al.src], cx[al.tgt], m)
    return SimplicialRep(q, cx, maps)


def join_quivers(r1: SimplicialRep, r2: SimplicialRep) -> SimplicialRep:
    """Representation of the disjoint union of two quivers."""
    q = disjoint_union(r1.quiver, r2.quiver)
    return SimplicialRep(q, {**r1.complexes, **r2.complexes}, {**r1.maps, **r2.maps})


def constant_rep(q: Quiver, k: SimplicialComplex) -> SimplicialRep:
    ident = SimplicialMap.identity(k)
    return SimplicialRep(q, {v: k for v in q.vertices}, {a.id: ident for a in q.arrows})


def polygon(n: int, first: int = 0) -> SimplicialComplex:
    return SimplicialComplex.from_facets([(first + i, first + (i + 1) % n) for i in range(n)])


def polygon_map(src: SimplicialComplex, tgt: SimplicialComplex, shift: int, flip: bool) -> SimplicialMap:
    """Rotation (optionally after a reflection) between two polygons of the same size."""
    n = len(src.vertices)
    a, b = src.vertices[0], tgt.vertices[0]
    return SimplicialMap(src, tgt, {a + i: b + ((-i if flip else i) + shift) % n for i in range(n)})


# cones and homotopies


def cone_rep(rep: SimplicialRep) -> SimplicialRep:
    """Cone on every vertex complex with apex 0 (old vertices shifted up by one)."""
    q = rep.quiver
    cx = {}
    for v in q.vertices:
        k = rep.complexes[v]
        cx[v] = SimplicialComplex([0] + [x + 1 for x in k.vertices],
                                  [(0,) + tuple(x + 1 for x in s) for s in k.facets] or [(0,)])
    maps = {}
    for a in q.arrows:
        f = rep.maps[a.id]
        m = {0: 0}
        m.update({x + 1: f(x) + 1 for x in f.source.vertices})
        maps[a.id] = SimplicialMap(cx[a.src], cx[a.tgt], m)
    return SimplicialRep(q, cx, maps)


def cone_contraction(cone: SimplicialRep) -> tuple:
    """(constant-to-apex, identity, homotopy) on a cone representation.

    The homotopy sends a simplex ``s`` missing the apex to ``[0, s]`` and
    kills simplices containing it, so ``dF + Fd = id - const``.
    """
    q = cone.quiver
    const = SimplicialRepMorphism(cone, cone, {
        v: SimplicialMap(cone.complexes[v], cone.complexes[v],
                         {x: 0 for x in cone.complexes[v].vertices}) for v in q.vertices})
    crep = s_gamma(cone)
    alpha = s_gamma_morphism(const)
    beta = ChainRepMorphism.identity(crep)
    F = {}
    for v in q.vertices:
        k = cone.complexes[v]
        mats = []
        for n in range(k.dim + 1):
            rows = [[0] * len(k.n_simplices(n)) for _ in range(len(k.n_simplices(n + 1)))]
            for j, s in enumerate(k.n_simplices(n)):
                if s[0] != 0:
                    rows[k.index((0,) + s)][j] = 1
            mats.append(IntMatrix(rows, len(rows), len(k.n_simplices(n))))
        F[v] = mats
    return alpha, beta, F


def scaled_homotopy(alpha: ChainRepMorphism, beta: ChainRepMorphism, F: dict, k: int) -> tuple:
    """From ``F: alpha ~ beta`` build ``kF: alpha ~ alpha + k(beta - alpha)``."""
    crep_a, crep_b = alpha.source, alpha.target
    comps = {}
    for v in crep_a.quiver.vertices:
        a, b = alpha.components[v], beta.components[v]
        mats = tuple(a.matrix(n) + (b.matrix(n) - a.matrix(n)).scale(k)
                     for n in range(max(crep_a.top_degree, crep_b.top_degree) + 1))
        comps[v] = ChainMap(a.source, a.target, mats)
    beta2 = ChainRepMorphism(crep_a, crep_b, comps)
    return alpha, beta2, {v: [m.scale(k) for m in ms] for v, ms in F.items()}


def perturb_homotopy(rng: random.Random, F: dict) -> dict:
    """Change a single entry of a homotopy by a nonzero amount."""
    spots = [(v, n) for v, ms in sorted(F.items()) for n, m in enumerate(ms) if m.rows and m.cols]
    v, n = rng.choice(spots)
    m = F[v][n]
    i, j = rng.randrange(m.rows), rng.randrange(m.cols)
    rows = m.tolist()
    rows[i][j] += rng.choice((-2, -1, 1, 2))
    out = {w: list(ms) for w, ms in F.items()}
    out[v][n] = IntMatrix(rows, m.rows, m.cols)
    return out


# chain representations with a prescribed round trip


def scaled_cycle_rep(m: int, k: SimplicialComplex, factor: int) -> ChainRep:
    """Oriented m-cycle carrying S(k) everywhere; the last arrow scales by ``factor``."""
    q = Quiver.from_edges(range(1, m + 1), [(f"c{i}", i, i % m + 1) for i in range(1, m + 1)])
    c = chain_complex_of(k)
    ident = ChainMap.identity(c)
    maps = {}
    for i in range(1, m + 1):
        if i == m:
            maps[f"c{i}"] = ChainMap(c, c, tuple(x.scale(factor) for x in ident.matrices))
        else:
            maps[f"c{i}"] = ident
    return ChainRep(q, {v: c for v in q.vertices}, maps)


# short exact sequences of abelian group representations


def _closed_lattices(q: Quiver, gens: dict, mats: dict, n: int) -> dict:
    lat = {v: Lattice(IntMatrix.from_columns(gens[v], n) if gens[v] else IntMatrix.zeros(n, 0))
           for v in q.vertices}
    changed = True
    while changed:
        changed = False
        for a in q.arrows:
            pushed = [mats[a.id] @ c for c in lat[a.src].basis.columns()]
            if pushed and not lat[a.tgt].contains_all(IntMatrix.from_columns(pushed, n)):
                cols = lat[a.tgt].basis.columns() + pushed
                lat[a.tgt] = Lattice(IntMatrix.from_columns(cols, n))
                changed = True
    return lat


def random_ab_ses(rng: random.Random, q: Quiver, n: int = 2, modulus: int | None = None) -> tuple:
    """``0 -> A -> B -> C -> 0`` vertexwise, with ``B = Z^n / modulus Z^n`` at every vertex.

    ``A`` is a random sublattice (containing the relations) closed under the
    structure maps and ``C`` the corresponding quotient.
    """
    rel = IntMatrix.identity(n).scale(modulus) if modulus else IntMatrix.zeros(n, 0)
    mats = {a.id: IntMatrix([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)], n, n)
            for a in q.arrows}
    gens = {}
    for v in q.vertices:
        cols = [tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(rng.randint(0, 2))]
        gens[v] = cols + rel.columns()
    lat = _closed_lattices(q, gens, mats, n)
    bg = FgAbGroup(n, rel)
    B = AbRep(q, {v: bg for v in q.vertices}, {a.id: GroupHom(bg, bg, mats[a.id]) for a in q.arrows})
    ag, cg, incl, proj = {}, {}, {}, {}
    for v in q.vertices:
        basis = lat[v].basis
        rel_coords = [lat[v].coords(c) for c in rel.columns()]
        ag[v] = FgAbGroup(basis.cols, IntMatrix.from_columns(rel_coords, basis.cols)
                          if rel_coords else IntMatrix.zeros(basis.cols, 0))
        cg[v] = FgAbGroup(n, basis)
        incl[v] = GroupHom(ag[v], bg, basis)
        proj[v] = GroupHom(bg, cg[v], IntMatrix.identity(n))
    ahoms, choms = {}, {}
    for a in q.arrows:
        bs = lat[a.src].basis
        cols = [lat[a.tgt].coords(mats[a.id] @ c) for c in bs.columns()]
        r = lat[a.tgt].basis.cols
        ahoms[a.id] = GroupHom(ag[a.src], ag[a.tgt],
                               IntMatrix.from_columns(cols, r) if cols else IntMatrix.zeros(r, 0))
        choms[a.id] = GroupHom(cg[a.src], cg[a.tgt], mats[a.id])
    A = AbRep(q, ag, ahoms)
    C = AbRep(q, cg, choms)
    return AbRepMorphism(A, B, incl), AbRepMorphism(B, C, proj)
