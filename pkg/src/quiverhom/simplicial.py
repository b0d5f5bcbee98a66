"""
Finite abstract simplicial complexes, simplicial maps and their chain
complexes.

Simplices are sorted vertex tuples.  The boundary of ``(v0, ..., vn)`` is the
alternating sum of its facets, and a simplicial map sends a simplex to the
sorted image with the sign of the sorting permutation, or to 0 if two
vertices collide.

>>> circle = SimplicialComplex.from_facets([(0, 1), (1, 2), (0, 2)])
>>> chain_complex_of(circle).ranks
(3, 3)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .intalg import IntMatrix
from .quiver import Quiver, validate_quiver


class ComplexError(ValueError):
    pass


def _perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (entries distinct)."""
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


class SimplicialComplex:
    """Downward closed family of simplices, stored per dimension."""

    __slots__ = ("vertices", "simplices", "_index", "_hash")

    def __init__(self, vertices: Iterable[int], simplices: Iterable[Iterable[int]]):
        verts = set(int(v) for v in vertices)
        all_s = set()
        for s in simplices:
            s = tuple(int(v) for v in s)
            if not s:
                continue
            if len(set(s)) != len(s):
                raise ComplexError(f"simplex {s} repeats a vertex")
            s = tuple(sorted(s))
            for k in range(1, len(s) + 1):
                all_s.update(combinations(s, k))
        for s in all_s:
            verts.update(s)
        all_s.update((v,) for v in verts)
        dim = max((len(s) for s in all_s), default=0) - 1
        per_dim = [[] for _ in range(dim + 1)]
        for s in all_s:
            per_dim[len(s) - 1].append(s)
        self.vertices = tuple(sorted(verts))
        self.simplices = tuple(tuple(sorted(x)) for x in per_dim)
        self._index = [{s: i for i, s in enumerate(x)} for x in self.simplices]
        self._hash = None

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]],
                    vertices: Iterable[int] = ()) -> "SimplicialComplex":
        return cls(vertices, facets)

    @classmethod
    def from_json(cls, obj) -> "SimplicialComplex":
        return validate_complex(obj)

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def n_simplices(self, n: int) -> tuple:
        return self.simplices[n] if 0 <= n <= self.dim else ()

    def index(self, s: tuple) -> int:
        return self._index[len(s) - 1][s]

    def __contains__(self, s) -> bool:
        s = tuple(sorted(s))
        return 0 < len(s) <= len(self.simplices) and s in self._index[len(s) - 1]

    def all_simplices(self) -> list:
        return [s for x in self.simplices for s in x]

    @property
    def facets(self) -> list:
        """Maximal simplices, sorted by (dimension, tuple)."""
        out = []
        for n, layer in enumerate(self.simplices):
            for s in layer:
                if n == self.dim or not any(set(s) < set(t) for t in self.simplices[n + 1]):
                    out.append(s)
        return out

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return all(s in other for s in self.all_simplices())

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "facets": [list(s) for s in self.facets]}

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.simplices == other.simplices

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.simplices)
        return self._hash

    def __repr__(self):
        return f"SimplicialComplex(dim={self.dim}, f={[len(x) for x in self.simplices]})"


def validate_complex(raw) -> SimplicialComplex:
    """Complex from ``{"vertices": [...], "facets": [[...], ...]}``; closure is computed."""
    if isinstance(raw, SimplicialComplex):
        return raw
    try:
        verts = [int(v) for v in raw.get("vertices", [])]
        facets = [[int(v) for v in f] for f in raw.get("facets", [])]
    except (TypeError, ValueError, AttributeError):
        raise ComplexError("complex needs integer 'vertices' and 'facets'")
    if any(not f for f in facets):
        raise ComplexError("empty facet")
    if verts:
        vs = set(verts)
        for f in facets:
            if not set(f) <= vs:
                raise ComplexError(f"facet {f} uses an unlisted vertex")
    return SimplicialComplex(verts, facets)


class SimplicialMap:
    __slots__ = ("source", "target", "vertex_map")

    def __init__(self, source: SimplicialComplex, target: SimplicialComplex, vertex_map: dict):
        vm = {int(k): int(v) for k, v in vertex_map.items()}
        if set(vm) != set(source.vertices):
            raise ComplexError("vertex map is not total on the source vertices")
        for s in source.facets:
            img = tuple(sorted(set(vm[v] for v in s)))
            if img not in target:
                raise ComplexError(f"image of simplex {s} is not a simplex of the target")
        self.source = source
        self.target = target
        self.vertex_map = dict(sorted(vm.items()))

    @classmethod
    def identity(cls, k: SimplicialComplex) -> "SimplicialMap":
        return cls(k, k, {v: v for v in k.vertices})

    def __call__(self, v: int) -> int:
        return self.vertex_map[v]

    def image(self, s: tuple) -> tuple:
        return tuple(sorted(set(self.vertex_map[v] for v in s)))

    def compose(self, first: "SimplicialMap") -> "SimplicialMap":
        """``self o first``."""
        if first.target != self.source:
            raise ComplexError("simplicial maps are not composable")
        return SimplicialMap(first.source, self.target,
                             {v: self.vertex_map[w] for v, w in first.vertex_map.items()})

    def to_json(self) -> dict:
        return {"vertex_map": {str(k): v for k, v in self.vertex_map.items()}}

    def __eq__(self, other):
        return (isinstance(other, SimplicialMap) and self.source == other.source
                and self.target == other.target and self.vertex_map == other.vertex_map)

    def __hash__(self):
        return hash((self.source, self.target, tuple(self.vertex_map.items())))


def validate_simplicial_map(source, target, raw) -> SimplicialMap:
    vm = raw["vertex_map"] if isinstance(raw, dict) and "vertex_map" in raw else raw
    return SimplicialMap(validate_complex(source), validate_complex(target), vm)


# chain complexes


@dataclass(frozen=True)
class ChainComplex:
    """Free chain complex: ``ranks[n]`` and ``boundaries[n-1] = d_n`` for n >= 1.

    Degrees outside ``0..top_degree`` are zero.  ``d d = 0`` is checked at
    construction.
    """

    ranks: tuple
    boundaries: tuple
    labels: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        ranks = tuple(int(r) for r in self.ranks)
        bds = tuple(self.boundaries)
        object.__setattr__(self, "ranks", ranks)
        object.__setattr__(self, "boundaries", bds)
        if len(bds) != max(len(ranks) - 1, 0):
            raise ComplexError("need one boundary matrix per positive degree")
        for n in range(1, len(ranks)):
            if bds[n - 1].shape != (ranks[n - 1], ranks[n]):
                raise ComplexError(f"boundary in degree {n} has shape {bds[n - 1].shape}")
        for n in range(2, len(ranks)):
            if not (bds[n - 2] @ bds[n - 1]).is_zero():
                raise ComplexError(f"boundary squared is nonzero in degree {n}")

    @classmethod
    def zero(cls) -> "ChainComplex":
        return cls((), ())

    @property
    def top_degree(self) -> int:
        return len(self.ranks) - 1

    def rank(self, n: int) -> int:
        return self.ranks[n] if 0 <= n < len(self.ranks) else 0

    def boundary(self, n: int) -> IntMatrix:
        """``d_n: C_n -> C_(n-1)``, zero outside the stored range."""
        if 1 <= n < len(self.ranks):
            return self.boundaries[n - 1]
        return IntMatrix.zeros(self.rank(n - 1), self.rank(n))

    def is_zero(self) -> bool:
        return not any(self.ranks)

    def to_json(self) -> dict:
        return {"ranks": list(self.ranks), "boundaries": [b.to_json() for b in self.boundaries]}

    @classmethod
    def from_json(cls, obj) -> "ChainComplex":
        return cls(tuple(obj["ranks"]), tuple(IntMatrix.from_json(b) for b in obj.get("boundaries", [])))


@dataclass(frozen=True)
class ChainMap:
    """Degreewise matrices ``phi_n: source_n -> target_n`` commuting with boundaries."""

    source: ChainComplex
    target: ChainComplex
    matrices: tuple

    def __post_init__(self):
        top = max(self.source.top_degree, self.target.top_degree)
        mats = list(self.matrices)
        if len(mats) > top + 1 and any(not m.is_zero() for m in mats[top + 1:]):
            raise ComplexError("chain map has entries beyond the top degree")
        mats = mats[:top + 1]
        while len(mats) < top + 1:
            n = len(mats)
            mats.append(IntMatrix.zeros(self.target.rank(n), self.source.rank(n)))
        for n, m in enumerate(mats):
            if m.shape != (self.target.rank(n), self.source.rank(n)):
                raise ComplexError(f"chain map matrix in degree {n} has shape {m.shape}")
        object.__setattr__(self, "matrices", tuple(mats))
        for n in range(1, top + 1):
            if self.target.boundary(n) @ mats[n] != mats[n - 1] @ self.source.boundary(n):
                raise ComplexError(f"chain map does not commute with boundaries in degree {n}")

    def matrix(self, n: int) -> IntMatrix:
        if 0 <= n < len(self.matrices):
            return self.matrices[n]
        return IntMatrix.zeros(self.target.rank(n), self.source.rank(n))

    @classmethod
    def identity(cls, c: ChainComplex) -> "ChainMap":
        return cls(c, c, tuple(IntMatrix.identity(r) for r in c.ranks))

    @classmethod
    def zero(cls, source: ChainComplex, target: ChainComplex) -> "ChainMap":
        return cls(source, target, ())

    def compose(self, first: "ChainMap") -> "ChainMap":
        """``self o first``."""
        if first.target != self.source:
            raise ComplexError("chain maps are not composable")
        top = max(first.source.top_degree, self.target.top_degree)
        return ChainMap(first.source, self.target,
                        tuple(self.matrix(n) @ first.matrix(n) for n in range(top + 1)))

    def __add__(self, other: "ChainMap") -> "ChainMap":
        top = max(self.source.top_degree, self.target.top_degree)
        return ChainMap(self.source, self.target,
                        tuple(self.matrix(n) + other.matrix(n) for n in range(top + 1)))

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        top = max(self.source.top_degree, self.target.top_degree)
        return ChainMap(self.source, self.target,
                        tuple(self.matrix(n) - other.matrix(n) for n in range(top + 1)))

    def to_json(self) -> dict:
        return {"matrices": [m.to_json() for m in self.matrices]}


def chain_complex_of(k: SimplicialComplex) -> ChainComplex:
    ranks = tuple(len(x) for x in k.simplices)
    bds = []
    for n in range(1, k.dim + 1):
        rows = [[0] * ranks[n] for _ in range(ranks[n - 1])]
        for j, s in enumerate(k.simplices[n]):
            for i in range(n + 1):
                face = s[:i] + s[i + 1:]
                rows[k.index(face)][j] += -1 if i % 2 else 1
        bds.append(IntMatrix(rows, ranks[n - 1], ranks[n]))
    return ChainComplex(ranks, tuple(bds), labels=k.simplices)


def chain_map_of(f: SimplicialMap) -> ChainMap:
    src, tgt = f.source, f.target
    top = max(src.dim, tgt.dim)
    mats = []
    for n in range(top + 1):
        rows = [[0] * len(src.n_simplices(n)) for _ in range(len(tgt.n_simplices(n)))]
        for j, s in enumerate(src.n_simplices(n)):
            img = [f.vertex_map[v] for v in s]
            if len(set(img)) < len(img):
                continue
            rows[tgt.index(tuple(sorted(img)))][j] = _perm_sign(img)
        mats.append(IntMatrix(rows, len(tgt.n_simplices(n)), len(src.n_simplices(n))))
    return ChainMap(chain_complex_of(src), chain_complex_of(tgt), tuple(mats))


def quotient_indices(k: SimplicialComplex, a: SimplicialComplex,
                     b: SimplicialComplex) -> list[list[int]]:
    """Per degree, indices of the simplices of ``k`` lying in neither ``a`` nor ``b``."""
    for name, sub in (("A", a), ("B", b)):
        if not sub.is_subcomplex_of(k):
            raise ComplexError(f"{name} is not a subcomplex")
    return [[i for i, s in enumerate(layer) if s not in a and s not in b]
            for layer in k.simplices]


def quotient_by_subcomplexes(k: SimplicialComplex, a: SimplicialComplex,
                             b: SimplicialComplex) -> ChainComplex:
    """``S(K) / (S(A) + S(B))``, with basis the simplices outside ``A`` and ``B``."""
    keep = quotient_indices(k, a, b)
    full = chain_complex_of(k)
    while keep and not keep[-1]:
        keep.pop()
    ranks = tuple(len(x) for x in keep)
    bds = tuple(full.boundary(n).submatrix(keep[n - 1], keep[n]) for n in range(1, len(keep)))
    labels = tuple(tuple(k.simplices[n][i] for i in keep[n]) for n in range(len(keep)))
    return ChainComplex(ranks, bds, labels=labels)


EMPTY = SimplicialComplex((), ())


# representations by simplicial complexes


@dataclass(eq=True)
class SimplicialRep:
    quiver: Quiver
    complexes: dict
    maps: dict

    __hash__ = None

    def __post_init__(self):
        q = self.quiver
        if set(self.complexes) != set(q.vertices):
            raise ComplexError("complexes must be given for exactly the quiver's vertices")
        if set(self.maps) != {a.id for a in q.arrows}:
            raise ComplexError("maps must be given for exactly the quiver's arrows")
        for a in q.arrows:
            f = self.maps[a.id]
            if f.source != self.complexes[a.src] or f.target != self.complexes[a.tgt]:
                raise ComplexError(f"map for arrow {a.id!r} has the wrong source or target")

    def restrict(self, vertices: Iterable[int]) -> "SimplicialRep":
        q = self.quiver.restrict(vertices)
        return SimplicialRep(q, {v: self.complexes[v] for v in q.vertices},
                             {a.id: self.maps[a.id] for a in q.arrows})

    @classmethod
    def from_json(cls, obj) -> "SimplicialRep":
        q = validate_quiver(obj["quiver"])
        cx = {int(k): validate_complex(v) for k, v in obj.get("complexes", {}).items()}
        missing = [v for v in q.vertices if v not in cx]
        if missing:
            raise ComplexError(f"no complex for vertex {missing[0]}")
        maps = {}
        for a in q.arrows:
            if a.id not in obj.get("maps", {}):
                raise ComplexError(f"no map for arrow {a.id!r}")
            maps[a.id] = validate_simplicial_map(cx[a.src], cx[a.tgt], obj["maps"][a.id])
        return cls(q, cx, maps)

    def to_json(self) -> dict:
        return {"kind": "simplicial", "quiver": self.quiver.to_json(),
                "complexes": {str(v): self.complexes[v].to_json() for v in self.quiver.vertices},
                "maps": {a.id: self.maps[a.id].to_json() for a in self.quiver.arrows}}


@dataclass(eq=True)
class SimplicialRepMorphism:
    source: SimplicialRep
    target: SimplicialRep
    components: dict

    __hash__ = None

    def __post_init__(self):
        q = self.source.quiver
        if q != self.target.quiver:
            raise ComplexError("morphism between representations of different quivers")
        for v in q.vertices:
            c = self.components[v]
            if c.source != self.source.complexes[v] or c.target != self.target.complexes[v]:
                raise ComplexError(f"component at vertex {v} has the wrong complexes")
        for a in q.arrows:
            f, g = self.source.maps[a.id], self.target.maps[a.id]
            hs, ht = self.components[a.src], self.components[a.tgt]
            for x in f.source.vertices:
                if ht(f(x)) != g(hs(x)):
                    raise ComplexError(f"square for arrow {a.id!r} fails at vertex {x}")

    @classmethod
    def identity(cls, rep: SimplicialRep) -> "SimplicialRepMorphism":
        return cls(rep, rep, {v: SimplicialMap.identity(k) for v, k in rep.complexes.items()})

    def compose(self, first: "SimplicialRepMorphism") -> "SimplicialRepMorphism":
        """``self o first``."""
        return SimplicialRepMorphism(first.source, self.target,
                                     {v: self.components[v].compose(first.components[v])
                                      for v in first.source.quiver.vertices})

    def restrict(self, vertices: Iterable[int]) -> "SimplicialRepMorphism":
        src, tgt = self.source.restrict(vertices), self.target.restrict(vertices)
        return SimplicialRepMorphism(src, tgt, {v: self.components[v] for v in src.quiver.vertices})


def sub_representation(rep: SimplicialRep, sub_complexes: dict):
    """Subrepresentation given by a subcomplex at every vertex, with its inclusion.

    Each arrow map must send the subcomplex at its source into the one at
    its target.
    """
    q = rep.quiver
    for v in q.vertices:
        if v not in sub_complexes:
            raise ComplexError(f"no subcomplex at vertex {v}")
        if not sub_complexes[v].is_subcomplex_of(rep.complexes[v]):
            raise ComplexError(f"not a subcomplex at vertex {v}")
    maps = {}
    for a in q.arrows:
        f = rep.maps[a.id]
        src, tgt = sub_complexes[a.src], sub_complexes[a.tgt]
        for s in src.all_simplices():
            if f.image(s) not in tgt:
                raise ComplexError(f"arrow {a.id!r} does not preserve the subcomplex")
        maps[a.id] = SimplicialMap(src, tgt, {x: f(x) for x in src.vertices})
    sub = SimplicialRep(q, dict(sub_complexes), maps)
    incl = SimplicialRepMorphism(sub, rep, {v: SimplicialMap(sub_complexes[v], rep.complexes[v],
                                                             {x: x for x in sub_complexes[v].vertices})
                                            for v in q.vertices})
    return sub, incl
