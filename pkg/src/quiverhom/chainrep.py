"""
Quiver representations in chain complexes: the limit complex, homology,
vertexwise homology with the comparison map ``rho``, chain homotopies of
representations, relative homology and excision.

The limit complex of a representation ``C`` lives inside the product
``(+)_i C(i)``: in degree n it is the kernel of ``x -> (phi_a x_s - x_t)_a``,
one block of equations per arrow.  Its boundary is solved exactly from the
product boundary.  Homology of a representation means homology of this
limit complex.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from .intalg import (AbLimit, AbRep, AbRepMorphism, FgAbGroup, GroupHom, IntMatrix, Lattice,
                     ab_limit, hnf_kernel_basis, limit_map, preimage_lattice)
from .quiver import Quiver, has_odd_oriented_cycle, validate_quiver
from .simplicial import (ChainComplex, ChainMap, ComplexError, SimplicialComplex, SimplicialRep,
                         SimplicialRepMorphism, chain_complex_of, chain_map_of,
                         quotient_indices, sub_representation)

log = logging.getLogger(__name__)


class ChainRepError(ValueError):
    pass


@dataclass(eq=True)
class ChainRep:
    quiver: Quiver
    complexes: dict
    maps: dict

    __hash__ = None

    def __post_init__(self):
        q = self.quiver
        if set(self.complexes) != set(q.vertices):
            raise ChainRepError("complexes must be given for exactly the quiver's vertices")
        if set(self.maps) != {a.id for a in q.arrows}:
            raise ChainRepError("maps must be given for exactly the quiver's arrows")
        for a in q.arrows:
            f = self.maps[a.id]
            if f.source != self.complexes[a.src] or f.target != self.complexes[a.tgt]:
                raise ChainRepError(f"chain map for arrow {a.id!r} has the wrong source or target")

    @property
    def top_degree(self) -> int:
        return max((c.top_degree for c in self.complexes.values()), default=-1)

    def restrict(self, vertices) -> "ChainRep":
        q = self.quiver.restrict(vertices)
        return ChainRep(q, {v: self.complexes[v] for v in q.vertices},
                        {a.id: self.maps[a.id] for a in q.arrows})

    @classmethod
    def from_json(cls, obj) -> "ChainRep":
        q = validate_quiver(obj["quiver"])
        cx = {int(k): ChainComplex.from_json(v) for k, v in obj.get("complexes", {}).items()}
        missing = [v for v in q.vertices if v not in cx]
        if missing:
            raise ChainRepError(f"no complex for vertex {missing[0]}")
        maps = {}
        for a in q.arrows:
            raw = obj.get("maps", {}).get(a.id)
            if raw is None:
                raise ChainRepError(f"no chain map for arrow {a.id!r}")
            maps[a.id] = ChainMap(cx[a.src], cx[a.tgt],
                                  tuple(IntMatrix.from_json(m) for m in raw["matrices"]))
        return cls(q, cx, maps)

    def to_json(self) -> dict:
        return {"kind": "chain", "quiver": self.quiver.to_json(),
                "complexes": {str(v): self.complexes[v].to_json() for v in self.quiver.vertices},
                "maps": {a.id: self.maps[a.id].to_json() for a in self.quiver.arrows}}


@dataclass(eq=True)
class ChainRepMorphism:
    source: ChainRep
    target: ChainRep
    components: dict

    __hash__ = None

    def __post_init__(self):
        q = self.source.quiver
        if q != self.target.quiver:
            raise ChainRepError("morphism between representations of different quivers")
        for v in q.vertices:
            c = self.components[v]
            if c.source != self.source.complexes[v] or c.target != self.target.complexes[v]:
                raise ChainRepError(f"component at vertex {v} has the wrong complexes")
        for a in q.arrows:
            lhs = self.components[a.tgt].compose(self.source.maps[a.id])
            rhs = self.target.maps[a.id].compose(self.components[a.src])
            if lhs != rhs:
                raise ChainRepError(f"square for arrow {a.id!r} does not commute")

    @classmethod
    def identity(cls, crep: ChainRep) -> "ChainRepMorphism":
        return cls(crep, crep, {v: ChainMap.identity(c) for v, c in crep.complexes.items()})

    def compose(self, first: "ChainRepMorphism") -> "ChainRepMorphism":
        return ChainRepMorphism(first.source, self.target,
                                {v: self.components[v].compose(first.components[v])
                                 for v in first.source.quiver.vertices})


def s_gamma(rep: SimplicialRep) -> ChainRep:
    """Chain representation of a simplicial one: simplicial chains at every vertex."""
    return ChainRep(rep.quiver, {v: chain_complex_of(k) for v, k in rep.complexes.items()},
                    {a: chain_map_of(f) for a, f in rep.maps.items()})


def s_gamma_morphism(theta: SimplicialRepMorphism) -> ChainRepMorphism:
    return ChainRepMorphism(s_gamma(theta.source), s_gamma(theta.target),
                            {v: chain_map_of(f) for v, f in theta.components.items()})


# homology


@dataclass
class HomologyGroup:
    """A homology group with cycle representatives for its generators.

    ``group`` has a diagonal presentation; ``generators[k]`` is a cycle (in
    chain coordinates) representing generator ``k``.  ``class_of`` maps a
    cycle to its coordinates in ``group``.
    """

    degree: int
    group: FgAbGroup
    generators: tuple
    cycles: Lattice = field(repr=False)
    to_group: IntMatrix = field(repr=False)
    factors: tuple = field(repr=False, default=())

    def class_of(self, cycle: Sequence[int]) -> tuple[int, ...]:
        y = self.cycles.coords(cycle)
        if y is None:
            raise ChainRepError(f"vector is not a cycle in degree {self.degree}")
        out = self.to_group @ y
        return tuple(x % d if d else x for x, d in zip(out, self.factors))

    @property
    def free_rank(self) -> int:
        return self.group.free_rank

    @property
    def torsion(self) -> tuple:
        return self.group.torsion

    def to_json(self) -> dict:
        return {"degree": self.degree, "free_rank": self.free_rank,
                "torsion": list(self.torsion), "generators": [list(g) for g in self.generators]}

    def __str__(self):
        return str(self.group)


def quotient_homology(c: ChainComplex, n: int, sub: dict | None = None) -> HomologyGroup:
    """Homology of ``c / S`` in degree n.

    ``sub[k]`` is a matrix whose columns generate the subcomplex lattice in
    degree k (missing degrees are zero).  Torsion in the quotient is handled
    by working with presentations throughout.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    sub = sub or {}

    def s(k):
        m = sub.get(k)
        return m if m is not None else IntMatrix.zeros(c.rank(k), 0)

    cycles = preimage_lattice(c.boundary(n), s(n - 1))
    rel = IntMatrix.hstack([s(n), c.boundary(n + 1)], c.rank(n))
    y = cycles.solve(rel)
    if y is None:
        raise ChainRepError("boundaries are not cycles; is the subcomplex closed under d?")
    pres = FgAbGroup(cycles.rank, y)
    g, to_new, to_old = pres.simplify()
    gens = tuple(cycles.basis @ col for col in to_old.matrix.columns())
    factors = tuple(d for d in pres.invariant_factors)
    return HomologyGroup(n, g, gens, cycles, to_new.matrix, factors)


def homology(c: ChainComplex, n: int) -> HomologyGroup:
    """``ker d_n / im d_(n+1)`` with cycle representatives.

    >>> from .simplicial import SimplicialComplex, chain_complex_of
    >>> circle = chain_complex_of(SimplicialComplex.from_facets([(0, 1), (1, 2), (0, 2)]))
    >>> str(homology(circle, 0)), str(homology(circle, 1))
    ('Z', 'Z')
    """
    return quotient_homology(c, n)


def induced_homology_map(phi_n: IntMatrix, hs: HomologyGroup, ht: HomologyGroup) -> GroupHom:
    """Map on homology induced by the degree-n matrix of a chain map."""
    cols = [ht.class_of(phi_n @ g) for g in hs.generators]
    m = IntMatrix.from_columns(cols, ht.group.n_generators) if cols else \
        IntMatrix.zeros(ht.group.n_generators, 0)
    return GroupHom(hs.group, ht.group, m)


def homology_map(phi: ChainMap, n: int) -> GroupHom:
    return induced_homology_map(phi.matrix(n), homology(phi.source, n), homology(phi.target, n))


# limit complex


@dataclass
class LimitComplex:
    """The limit complex with its embedding into the product of the vertex complexes.

    ``inclusion[n]`` has one column per basis vector of the limit in degree
    n; rows are the vertex blocks in quiver vertex order.
    """

    crep: ChainRep = field(repr=False)
    complex: ChainComplex
    inclusion: tuple = field(repr=False)
    offsets: tuple = field(repr=False)
    lattices: tuple = field(repr=False)

    @property
    def top_degree(self) -> int:
        return len(self.inclusion) - 1

    def block(self, n: int, v) -> IntMatrix:
        """Rows of the inclusion belonging to vertex ``v``: the projection to ``C(v)_n``."""
        if not 0 <= n < len(self.inclusion):
            return IntMatrix.zeros(self.crep.complexes[v].rank(n), 0)
        o = self.offsets[n][v]
        return self.inclusion[n].row_block(o, o + self.crep.complexes[v].rank(n))

    def component(self, n: int, v, vec: Sequence[int]) -> tuple:
        o = self.offsets[n][v]
        return tuple(vec[o:o + self.crep.complexes[v].rank(n)])

    def coords(self, n: int, vec: Sequence[int]):
        if not 0 <= n < len(self.inclusion):
            return () if not any(vec) else None
        return self.lattices[n].coords(vec)


def _blocks(crep: ChainRep, n: int):
    offsets = {}
    total = 0
    for v in crep.quiver.vertices:
        offsets[v] = total
        total += crep.complexes[v].rank(n)
    return offsets, total


def rep_limit(crep: ChainRep) -> LimitComplex:
    """Degreewise limit of a chain representation, as a subcomplex of the product."""
    q = crep.quiver
    top = crep.top_degree
    incl, offs, lats = [], [], []
    for n in range(top + 1):
        offsets, total = _blocks(crep, n)
        rows = []
        for a in q.arrows:
            phi = crep.maps[a.id].matrix(n)
            s0, t0 = offsets[a.src], offsets[a.tgt]
            for r in range(phi.rows):
                row = [0] * total
                for j, x in enumerate(phi.data[r]):
                    row[s0 + j] += x
                row[t0 + r] -= 1
                rows.append(row)
        k = hnf_kernel_basis(IntMatrix(rows, len(rows), total))
        incl.append(k)
        offs.append(offsets)
        lats.append(Lattice(k))
    bds = []
    for n in range(1, top + 1):
        prod_d = IntMatrix.block_diagonal([crep.complexes[v].boundary(n) for v in q.vertices])
        d = lats[n - 1].solve(prod_d @ incl[n])
        if d is None:
            raise ArithmeticError(f"limit is not closed under the boundary in degree {n}")
        bds.append(d)
    ranks = tuple(k.cols for k in incl)
    cx = ChainComplex(ranks, tuple(bds))
    for n in range(1, top + 1):
        prod_d = IntMatrix.block_diagonal([crep.complexes[v].boundary(n) for v in q.vertices])
        assert prod_d @ incl[n] == incl[n - 1] @ bds[n - 1]
    return LimitComplex(crep, cx, tuple(incl), tuple(offs), tuple(lats))


def limit_chain_map(theta: ChainRepMorphism, src: LimitComplex | None = None,
                    tgt: LimitComplex | None = None) -> ChainMap:
    """The chain map of limit complexes induced by a morphism of representations."""
    src = src or rep_limit(theta.source)
    tgt = tgt or rep_limit(theta.target)
    q = theta.source.quiver
    top = max(src.top_degree, tgt.top_degree)
    mats = []
    for n in range(top + 1):
        cols = []
        for j in range(src.complex.rank(n)):
            x = src.inclusion[n].column(j)
            y = []
            for v in q.vertices:
                y.extend(theta.components[v].matrix(n) @ src.component(n, v, x))
            z = tgt.coords(n, y)
            if z is None:
                raise ArithmeticError("induced chain escapes the target limit")
            cols.append(z)
        r = tgt.complex.rank(n)
        mats.append(IntMatrix.from_columns(cols, r) if cols else IntMatrix.zeros(r, 0))
    return ChainMap(src.complex, tgt.complex, tuple(mats))


def rep_homology(crep: ChainRep, n: int, lim: LimitComplex | None = None) -> HomologyGroup:
    """Homology of the representation: homology of its limit complex."""
    lim = lim or rep_limit(crep)
    return homology(lim.complex, n)


@dataclass
class ProjectionReport:
    vertex: object
    injective: bool
    isomorphism: bool


def projection_report(lim: LimitComplex, v) -> ProjectionReport:
    """Is the projection of the limit complex to ``C(v)`` injective / an isomorphism?"""
    inj = iso = True
    for n in range(lim.top_degree + 1):
        b = lim.block(n, v)
        if hnf_kernel_basis(b).cols:
            inj = iso = False
            break
        if b.rows != b.cols or Lattice(b).basis != IntMatrix.identity(b.rows):
            iso = False
    return ProjectionReport(v, inj, iso)


# vertexwise homology and rho


def vertex_homologies(crep: ChainRep, n: int) -> dict:
    return {v: homology(c, n) for v, c in crep.complexes.items()}


def homology_rep(crep: ChainRep, n: int, hs: dict | None = None) -> AbRep:
    """Vertexwise homology in degree n with the induced maps."""
    hs = hs or vertex_homologies(crep, n)
    homs = {}
    for a in crep.quiver.arrows:
        homs[a.id] = induced_homology_map(crep.maps[a.id].matrix(n), hs[a.src], hs[a.tgt])
    return AbRep(crep.quiver, {v: h.group for v, h in hs.items()}, homs)


@dataclass
class Rho:
    hom: GroupHom
    limit_homology: HomologyGroup
    vertex_homology: dict
    homology_limit: AbLimit
    limit: LimitComplex = field(repr=False)


def rho(crep: ChainRep, n: int, lim: LimitComplex | None = None) -> Rho:
    """``H_n(lim C) -> lim H_n(C)``: a limit cycle goes to its tuple of vertex classes."""
    lim = lim or rep_limit(crep)
    h_lim = homology(lim.complex, n)
    hs = vertex_homologies(crep, n)
    hrep = homology_rep(crep, n, hs)
    alim = ab_limit(hrep)
    q = crep.quiver
    cols = []
    for g in h_lim.generators:
        x = lim.inclusion[n] @ g
        classes = []
        for v in q.vertices:
            classes.extend(hs[v].class_of(lim.component(n, v, x)))
        z = alim.coords(classes)
        if z is None:
            raise ArithmeticError("tuple of classes is not compatible along the arrows")
        cols.append(z)
    r = alim.group.n_generators
    m = IntMatrix.from_columns(cols, r) if cols else IntMatrix.zeros(r, 0)
    return Rho(GroupHom(h_lim.group, alim.group, m), h_lim, hs, alim, lim)


def rho_naturality(theta: ChainRepMorphism, n: int) -> bool:
    """Check ``rho' o H_n(lim theta) == lim(H_n theta) o rho``."""
    r1, r2 = rho(theta.source, n), rho(theta.target, n)
    lt = limit_chain_map(theta, r1.limit, r2.limit)
    h_lim = induced_homology_map(lt.matrix(n), r1.limit_homology, r2.limit_homology)
    comps = {v: induced_homology_map(theta.components[v].matrix(n), r1.vertex_homology[v],
                                     r2.vertex_homology[v])
             for v in theta.source.quiver.vertices}
    hmorph = AbRepMorphism(homology_rep(theta.source, n, r1.vertex_homology),
                           homology_rep(theta.target, n, r2.vertex_homology), comps)
    lim_h = limit_map(r1.homology_limit, r2.homology_limit, hmorph)
    return (r2.hom @ h_lim).equals(lim_h @ r1.hom)


# homotopies


@dataclass
class HomotopyReport:
    ok: bool
    failures: list
    limit_homotopy: tuple | None = None
    homology_agrees: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def _first_diff(a: IntMatrix, b: IntMatrix):
    for i in range(a.rows):
        for j in range(a.cols):
            if a.data[i][j] != b.data[i][j]:
                return (i, j)
    return None


def verify_homotopy(alpha: ChainRepMorphism, beta: ChainRepMorphism, F: dict) -> HomotopyReport:
    """Check that ``F`` is a homotopy of representations from ``alpha`` to ``beta``.

    ``F[v][n]`` maps ``A(v)_n -> B(v)_(n+1)``.  Requires ``dF + Fd = beta - alpha``
    at every vertex and ``g F_i = F_j f`` for every arrow ``i -> j``.  On
    success the induced homotopy of limit complexes is built and checked, and
    the maps on limit homology are compared in every degree.
    """
    A, B = alpha.source, alpha.target
    if beta.source != A or beta.target != B:
        raise ChainRepError("alpha and beta must share source and target")
    q = A.quiver
    top = max(A.top_degree, B.top_degree)

    def Fm(v, n):
        seq = F.get(v, ())
        want = (B.complexes[v].rank(n + 1), A.complexes[v].rank(n))
        if 0 <= n < len(seq):
            if seq[n].shape != want:
                raise ChainRepError(f"homotopy at vertex {v}, degree {n} has shape "
                                    f"{seq[n].shape}, expected {want}")
            return seq[n]
        return IntMatrix.zeros(*want)

    failures = []
    for v in q.vertices:
        if len(F.get(v, ())) > top + 1 and any(not m.is_zero() for m in F[v][top + 1:]):
            raise ChainRepError(f"homotopy at vertex {v} has entries beyond the top degree")
        ca, cb = A.complexes[v], B.complexes[v]
        for n in range(top + 1):
            lhs = cb.boundary(n + 1) @ Fm(v, n) + Fm(v, n - 1) @ ca.boundary(n)
            rhs = beta.components[v].matrix(n) - alpha.components[v].matrix(n)
            d = _first_diff(lhs, rhs)
            if d is not None:
                failures.append(f"vertex {v}, degree {n}: dF + Fd != beta - alpha at entry {d}")
    for a in q.arrows:
        f, g = A.maps[a.id], B.maps[a.id]
        for n in range(top + 1):
            lhs = g.matrix(n + 1) @ Fm(a.src, n)
            rhs = Fm(a.tgt, n) @ f.matrix(n)
            d = _first_diff(lhs, rhs)
            if d is not None:
                failures.append(f"arrow {a.id}, degree {n}: g F_{a.src} != F_{a.tgt} f "
                                f"at entry {d}")
    if failures:
        return HomotopyReport(False, failures)

    la, lb = rep_limit(A), rep_limit(B)
    ma, mb = limit_chain_map(alpha, la, lb), limit_chain_map(beta, la, lb)
    lf = []
    for n in range(top + 1):
        cols = []
        for j in range(la.complex.rank(n)):
            x = la.inclusion[n].column(j)
            y = []
            for v in q.vertices:
                y.extend(Fm(v, n) @ la.component(n, v, x))
            z = lb.coords(n + 1, y)
            if z is None:
                raise ArithmeticError("homotopy does not preserve the limit")
            cols.append(z)
        r = lb.complex.rank(n + 1)
        lf.append(IntMatrix.from_columns(cols, r) if cols else IntMatrix.zeros(r, 0))

    def LF(n):
        if 0 <= n < len(lf):
            return lf[n]
        return IntMatrix.zeros(lb.complex.rank(n + 1), la.complex.rank(n))

    for n in range(top + 1):
        lhs = lb.complex.boundary(n + 1) @ LF(n) + LF(n - 1) @ la.complex.boundary(n)
        if lhs != mb.matrix(n) - ma.matrix(n):
            raise ArithmeticError(f"induced limit homotopy fails in degree {n}")
    agrees = {}
    for n in range(top + 1):
        hs, ht = homology(la.complex, n), homology(lb.complex, n)
        agrees[n] = induced_homology_map(ma.matrix(n), hs, ht).equals(
            induced_homology_map(mb.matrix(n), hs, ht))
    return HomotopyReport(True, [], tuple(lf), agrees)


# relative homology, basepoints, excision


def _check_injective(theta: ChainRepMorphism):
    for v, c in theta.components.items():
        for n, m in enumerate(c.matrices):
            if hnf_kernel_basis(m).cols:
                raise ChainRepError(f"not a subrepresentation: component at vertex {v} "
                                    f"is not injective in degree {n}")


def relative_homology(inclusion: ChainRepMorphism, n: int) -> HomologyGroup:
    """Homology of ``lim(T) / lim(T')`` for a subrepresentation ``T' -> T``."""
    _check_injective(inclusion)
    lt = rep_limit(inclusion.target)
    ls = rep_limit(inclusion.source)
    m = limit_chain_map(inclusion, ls, lt)
    sub = {k: m.matrix(k) for k in range(lt.top_degree + 1)}
    return quotient_homology(lt.complex, n, sub)


def simplicial_relative_homology(rep: SimplicialRep, sub_complexes: dict, n: int) -> HomologyGroup:
    _, incl = sub_representation(rep, sub_complexes)
    return relative_homology(s_gamma_morphism(incl), n)


def basepoint_subrep(rep: SimplicialRep, basepoints: dict):
    """Point subrepresentation ``{x_i}``; requires ``f_a(x_s) = x_t`` for every arrow."""
    q = rep.quiver
    for v in q.vertices:
        if v not in basepoints or basepoints[v] not in rep.complexes[v].vertices:
            raise ChainRepError(f"no valid basepoint at vertex {v}")
    for a in q.arrows:
        if rep.maps[a.id](basepoints[a.src]) != basepoints[a.tgt]:
            raise ChainRepError(f"basepoints not compatible along arrow {a.id!r}")
    return sub_representation(rep, {v: SimplicialComplex.from_facets([(basepoints[v],)])
                                    for v in q.vertices})


@dataclass
class BasepointReport:
    absolute: dict
    relative: dict
    higher_degrees_agree: bool
    degree0_ok: bool | None


def basepoint_comparison(rep: SimplicialRep, basepoints: dict, max_degree: int) -> BasepointReport:
    """Compare absolute and relative homology for a compatible family of basepoints.

    For n >= 1 the groups must agree; in degree 0 the rank must drop by the
    number of quiver components (when the relative group is free).
    """
    _, incl = basepoint_subrep(rep, basepoints)
    chain_incl = s_gamma_morphism(incl)
    lim = rep_limit(chain_incl.target)
    absolute = {n: homology(lim.complex, n) for n in range(max_degree + 1)}
    relative = {n: relative_homology(chain_incl, n) for n in range(max_degree + 1)}
    higher = all(absolute[n].group.is_isomorphic(relative[n].group)
                 for n in range(1, max_degree + 1))
    r0 = relative[0].group
    deg0 = None
    if not r0.torsion:
        deg0 = absolute[0].free_rank == len(rep.quiver.components()) + r0.free_rank
    return BasepointReport(absolute, relative, higher, deg0)


@dataclass
class ExcisionReport:
    covered: bool
    pieces_preserved: bool
    h0: HomologyGroup
    h1: HomologyGroup
    quotient: ChainRep = field(repr=False)

    @property
    def vanishes(self) -> bool:
        return self.h0.group.is_trivial() and self.h1.group.is_trivial()


def excision_check(rep: SimplicialRep, A: dict, B: dict) -> ExcisionReport:
    """Limit homology of ``S(T) / (S(A) + S(B))`` in degrees 0 and 1.

    ``A`` and ``B`` give subcomplexes at every vertex.  Only their union has
    to be preserved by the arrow maps (the quotient needs nothing more);
    ``pieces_preserved`` records whether A and B are preserved separately,
    and ``covered`` whether every simplex lies in A or B.
    """
    q = rep.quiver
    pieces = True
    for sub in (A, B):
        try:
            sub_representation(rep, sub)
        except ComplexError:
            pieces = False
    sub_representation(rep, {v: SimplicialComplex(A[v].vertices + B[v].vertices,
                                                  A[v].all_simplices() + B[v].all_simplices())
                             for v in q.vertices})
    keep = {}
    cx = {}
    covered = True
    for v in q.vertices:
        k = rep.complexes[v]
        keep[v] = quotient_indices(k, A[v], B[v])
        if any(keep[v]):
            covered = False
        full = chain_complex_of(k)
        kv = list(keep[v])
        while kv and not kv[-1]:
            kv.pop()
        cx[v] = ChainComplex(tuple(len(x) for x in kv),
                             tuple(full.boundary(n).submatrix(kv[n - 1], kv[n])
                                   for n in range(1, len(kv))))
    maps = {}
    for a in q.arrows:
        full = chain_map_of(rep.maps[a.id])
        src, tgt = cx[a.src], cx[a.tgt]
        top = max(src.top_degree, tgt.top_degree)
        mats = []
        for n in range(top + 1):
            rows = keep[a.tgt][n] if n < len(keep[a.tgt]) else []
            cols = keep[a.src][n] if n < len(keep[a.src]) else []
            mats.append(full.matrix(n).submatrix(rows[:tgt.rank(n)], cols[:src.rank(n)]))
        maps[a.id] = ChainMap(src, tgt, tuple(mats))
    quotient = ChainRep(q, cx, maps)
    lim = rep_limit(quotient)
    return ExcisionReport(covered, pieces, homology(lim.complex, 0), homology(lim.complex, 1), quotient)


# oriented cycles


def _single_cycle_order(q: Quiver) -> list:
    """Arrows of a single oriented cycle, starting at the smallest vertex."""
    if not q.is_connected() or len(q.arrows) != len(q.vertices):
        raise ChainRepError("quiver is not a single oriented cycle")
    for v in q.vertices:
        if len(q.out_arrows(v)) != 1 or len(q.in_arrows(v)) != 1:
            raise ChainRepError("quiver is not a single oriented cycle")
    order = []
    v = q.vertices[0]
    while True:
        a = q.out_arrows(v)[0]
        order.append(a)
        v = a.tgt
        if v == q.vertices[0]:
            break
    if len(order) != len(q.arrows):
        raise ChainRepError("quiver is not a single oriented cycle")
    return order


@dataclass
class CycleLimit:
    limit: LimitComplex
    round_trip: ChainMap
    certified: bool


def cycle_fixed_limit(crep: ChainRep) -> CycleLimit:
    """Limit over an oriented cycle, certified against the fixed chains of the round trip.

    The round trip starts and ends at the smallest vertex ``v0``; in every
    degree the projection of the limit to ``C(v0)`` must be injective with
    image ``ker(phi - 1)``.
    """
    order = _single_cycle_order(crep.quiver)
    v0 = crep.quiver.vertices[0]
    phi = ChainMap.identity(crep.complexes[v0])
    for a in order:
        phi = crep.maps[a.id].compose(phi)
    lim = rep_limit(crep)
    ok = True
    c0 = crep.complexes[v0]
    for n in range(c0.top_degree + 1):
        fixed = hnf_kernel_basis(phi.matrix(n) - IntMatrix.identity(c0.rank(n)))
        proj = lim.block(n, v0)
        if hnf_kernel_basis(proj).cols or Lattice(proj).basis != fixed:
            ok = False
    return CycleLimit(lim, phi, ok)


def _cyclic_order(k: SimplicialComplex) -> list | None:
    """Vertices of a polygon in cyclic order from the smallest, or None."""
    if k.dim != 1 or len(k.vertices) < 3:
        return None
    nbrs = {v: [] for v in k.vertices}
    for a, b in k.simplices[1]:
        nbrs[a].append(b)
        nbrs[b].append(a)
    if any(len(x) != 2 for x in nbrs.values()):
        return None
    order = [k.vertices[0]]
    prev, cur = None, k.vertices[0]
    nxt = min(nbrs[cur])
    while nxt != order[0]:
        order.append(nxt)
        prev, cur = cur, nxt
        nxt = [w for w in nbrs[cur] if w != prev][0]
    if len(order) != len(k.vertices):
        return None
    return order


@dataclass
class AntipodalReport:
    h0: HomologyGroup
    odd_cycle: bool
    image_ranks: tuple


def antipodal_quotient_h0(rep: SimplicialRep) -> AntipodalReport:
    """``H_0`` of ``S(circle) / Im L`` for the antipodal representation of a polygon.

    Every vertex carries the same even polygon and every arrow acts by the
    antipodal map.  ``L`` projects the limit complex to the smallest vertex.
    """
    q = rep.quiver
    if not q.is_connected():
        raise ChainRepError("quiver must be connected")
    ks = set(rep.complexes.values())
    if len(ks) != 1:
        raise ChainRepError("all vertex complexes must be the same polygon")
    k = ks.pop()
    order = _cyclic_order(k)
    if order is None or len(order) % 2:
        raise ChainRepError("vertex complex is not an even polygon")
    n = len(order)
    anti = {order[i]: order[(i + n // 2) % n] for i in range(n)}
    for a in q.arrows:
        if rep.maps[a.id].vertex_map != anti:
            raise ChainRepError(f"map on arrow {a.id!r} is not the antipodal map")
    lim = rep_limit(s_gamma(rep))
    base = q.vertices[0]
    sub = {d: lim.block(d, base) for d in range(2)}
    h0 = quotient_homology(chain_complex_of(k), 0, sub)
    return AntipodalReport(h0, has_odd_oriented_cycle(q), (sub[0].cols, sub[1].cols))
