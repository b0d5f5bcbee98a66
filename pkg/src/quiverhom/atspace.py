"""
Attachment spaces of simplicial representations.

The attachment space glues the vertex complexes of a representation along
its arrow maps: a point ``x`` of ``T(i)`` is identified with ``f_a(x)`` in
``T(j)`` for every arrow ``a: i -> j``, and the equivalence relation is the
closure of these pairs.  Simplices whose image repeats a class collapse to
their support, so the result is the simplicial colimit, which can be
coarser than the topological quotient when identifications fold a simplex.

``sigma`` pushes limit chains into the chains of the attachment space
through any vertex projection; the result does not depend on the vertex,
and this is checked rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chainrep import (LimitComplex, homology, induced_homology_map, limit_chain_map,
                       rep_limit, s_gamma, s_gamma_morphism)
from .intalg import GroupHom, IntMatrix
from .simplicial import (ChainMap, ComplexError, SimplicialComplex, SimplicialMap, SimplicialRep,
                         SimplicialRepMorphism, chain_complex_of, chain_map_of, sub_representation)


class UnionFind:
    """Disjoint sets with path compression and union by size."""

    def __init__(self, items=()):
        self.parent = {}
        self.size = {}
        for x in items:
            self.add(x)

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.size[x] = 1

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        return True

    def groups(self) -> list:
        """Classes as sorted lists, ordered by their smallest member."""
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return sorted((sorted(g) for g in out.values()), key=lambda g: g[0])


@dataclass
class AtSpace:
    """Quotient complex plus the class of every (quiver vertex, space vertex) pair."""

    rep: SimplicialRep = field(repr=False)
    complex: SimplicialComplex
    class_of: dict = field(repr=False)
    n_pairs: int = 0
    n_classes: int = 0

    def projection(self, v) -> SimplicialMap:
        """The quotient map restricted to the complex at quiver vertex ``v``."""
        k = self.rep.complexes[v]
        return SimplicialMap(k, self.complex, {x: self.class_of[(v, x)] for x in k.vertices})

    def members(self, c: int) -> list:
        return sorted(p for p, d in self.class_of.items() if d == c)

    def to_json(self) -> dict:
        out = self.complex.to_json()
        out["classes"] = {f"{v}.{x}": c for (v, x), c in sorted(self.class_of.items())}
        out["generating_pairs"] = self.n_pairs
        return out


def at_space(rep: SimplicialRep) -> AtSpace:
    q = rep.quiver
    uf = UnionFind((v, x) for v in q.vertices for x in rep.complexes[v].vertices)
    pairs = 0
    for a in q.arrows:
        f = rep.maps[a.id]
        for x in f.source.vertices:
            uf.union((a.src, x), (a.tgt, f(x)))
            pairs += 1
    # class ids follow the smallest member, so the numbering is reproducible
    class_of = {}
    groups = uf.groups()
    for c, g in enumerate(groups):
        for p in g:
            class_of[p] = c
    facets = set()
    for v in q.vertices:
        for s in rep.complexes[v].facets:
            facets.add(tuple(sorted({class_of[(v, x)] for x in s})))
    cx = SimplicialComplex(range(len(groups)), facets)
    return AtSpace(rep, cx, class_of, pairs, len(groups))


def at_morphism(theta: SimplicialRepMorphism, src: AtSpace | None = None,
                tgt: AtSpace | None = None) -> SimplicialMap:
    """Induced map of attachment spaces: the class of x goes to the class of theta(x)."""
    src = src or at_space(theta.source)
    tgt = tgt or at_space(theta.target)
    vmap = {}
    for (v, x), c in sorted(src.class_of.items()):
        d = tgt.class_of[(v, theta.components[v](x))]
        if vmap.setdefault(c, d) != d:
            raise ComplexError(f"induced map is not well defined on class {c}")
    return SimplicialMap(src.complex, tgt.complex, vmap)


def _components(k: SimplicialComplex) -> list:
    uf = UnionFind(k.vertices)
    for s in k.n_simplices(1):
        uf.union(*s)
    return uf.groups()


def component_count(at: AtSpace | SimplicialComplex) -> int:
    k = at.complex if isinstance(at, AtSpace) else at
    return len(_components(k))


# splitting along vertex-disjoint subrepresentations


class SplitError(ValueError):
    pass


@dataclass
class SplitReport:
    injective: tuple
    disjoint: bool
    covers: bool
    isomorphic_images: tuple
    images: tuple = field(repr=False, default=())

    @property
    def ok(self) -> bool:
        return all(self.injective) and self.disjoint and self.covers and all(self.isomorphic_images)


def _image_is_full(f: SimplicialMap) -> bool:
    """Is the image of ``f`` the full subcomplex of the target on the image vertices?"""
    img_v = set(f.image(s) for s in f.source.all_simplices())
    verts = {f(x) for x in f.source.vertices}
    full = {s for s in f.target.all_simplices() if set(s) <= verts}
    return img_v == full


def split_analysis(rep: SimplicialRep, parts: dict) -> SplitReport:
    """Compare the attachment space with those of two complementary subrepresentations.

    ``parts[v]`` is a pair of vertex-disjoint subcomplexes of ``T(v)`` whose
    simplices together are all of ``T(v)``; each arrow map must preserve both.
    """
    q = rep.quiver
    first, second = {}, {}
    for v in q.vertices:
        if v not in parts:
            raise SplitError(f"no split given at vertex {v}")
        a, b = parts[v]
        k = rep.complexes[v]
        if set(a.vertices) & set(b.vertices):
            raise SplitError(f"the two pieces overlap at vertex {v}")
        if set(a.all_simplices()) | set(b.all_simplices()) != set(k.all_simplices()):
            raise SplitError(f"the pieces do not make up the complex at vertex {v}")
        first[v], second[v] = a, b
    try:
        sub1, inc1 = sub_representation(rep, first)
        sub2, inc2 = sub_representation(rep, second)
    except ComplexError as e:
        raise SplitError(str(e)) from e
    at = at_space(rep)
    maps = (at_morphism(inc1, tgt=at), at_morphism(inc2, tgt=at))
    images = []
    inj = []
    for m in maps:
        vals = [m(c) for c in m.source.vertices]
        inj.append(len(set(vals)) == len(vals))
        images.append(frozenset(vals))
    disjoint = not (images[0] & images[1])
    covers = images[0] | images[1] == set(at.complex.vertices)
    iso = tuple(i and _image_is_full(m) for i, m in zip(inj, maps))
    return SplitReport(tuple(inj), disjoint, covers, iso, tuple(images))


# the transformation from limit chains to chains of the attachment space


@dataclass
class SigmaComponent:
    vertices: tuple
    base: int
    limit: LimitComplex = field(repr=False)
    at: AtSpace = field(repr=False)
    target: object = field(repr=False)
    map: ChainMap | None = field(repr=False)
    base_independent: bool
    chain_map: bool


@dataclass
class Sigma:
    components: list

    @property
    def ok(self) -> bool:
        return all(c.base_independent and c.chain_map for c in self.components)


def _push(lim: LimitComplex, at: AtSpace, target, v, n: int) -> IntMatrix:
    """Degree-n matrix sending limit basis vectors through the projection at ``v``."""
    p = chain_map_of(at.projection(v)).matrix(n)
    blk = lim.block(n, v)
    if p.cols == 0:
        return IntMatrix.zeros(target.rank(n), blk.cols)
    return p @ blk


def _sigma_component(rep: SimplicialRep, base=None) -> SigmaComponent:
    crep = s_gamma(rep)
    lim = rep_limit(crep)
    at = at_space(rep)
    target = chain_complex_of(at.complex)
    verts = rep.quiver.vertices
    if base not in verts:
        base = min(verts)
    top = max(lim.complex.top_degree, target.top_degree)
    mats, indep = [], True
    for n in range(top + 1):
        m = _push(lim, at, target, base, n)
        for v in verts:
            if v != base and _push(lim, at, target, v, n) != m:
                indep = False
        mats.append(m)
    try:
        cm = ChainMap(lim.complex, target, tuple(mats))
    except ComplexError:
        cm = None
    return SigmaComponent(tuple(verts), base, lim, at, target, cm, indep, cm is not None)


def sigma(rep: SimplicialRep, base=None) -> Sigma:
    """One chain map ``lim -> S(At)`` per connected component of the quiver.

    Each component is treated as a representation on its own.  The base
    vertex is ``base`` in the component containing it and the smallest
    vertex elsewhere; the pushes through every other vertex are compared
    against it.
    """
    return Sigma([_sigma_component(rep.restrict(c), base) for c in rep.quiver.components()])


def sigma_naturality(theta: SimplicialRepMorphism, s1: Sigma | None = None,
                     s2: Sigma | None = None) -> bool:
    """``S(At theta) o sigma == sigma' o lim(theta)`` on every component."""
    s1 = s1 or sigma(theta.source)
    s2 = s2 or sigma(theta.target)
    for c1, c2 in zip(s1.components, s2.components):
        if c1.map is None or c2.map is None:
            return False
        t = theta.restrict(c1.vertices)
        lt = limit_chain_map(s_gamma_morphism(t), c1.limit, c2.limit)
        at_t = chain_map_of(at_morphism(t, c1.at, c2.at))
        if at_t.compose(c1.map) != c2.map.compose(lt):
            return False
    return True


def h_natural(rep: SimplicialRep, n: int, sig: Sigma | None = None) -> GroupHom:
    """``H_n(sigma)``, block diagonal over the quiver components."""
    sig = sig or sigma(rep)
    blocks = []
    for c in sig.components:
        if c.map is None:
            raise ComplexError("sigma is not a chain map")
        blocks.append(induced_homology_map(c.map.matrix(n), homology(c.limit.complex, n),
                                           homology(c.target, n)))
    return GroupHom.direct_sum(blocks) if len(blocks) != 1 else blocks[0]
