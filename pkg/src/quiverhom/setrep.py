"""
Representations of a quiver by finite sets, and the equivalent systems over
the path semigroup.

A ``FinSetRep`` puts a finite set at every vertex and a function on every
arrow.  A ``PGammaSystem`` is one pointed set ``M`` (base point ``THETA``)
split into vertex parts, on which paths act; ``to_system`` and
``from_system`` are mutually inverse.

Element ids are strings and must be distinct across vertices, so the parts
of the system are disjoint without relabeling.  Sets are kept sorted, which
makes equality of representations exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _cartesian

from .quiver import ZERO, Path, Quiver, validate_quiver


class SetRepError(ValueError):
    pass


class _Theta:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "THETA"


THETA = _Theta()


@dataclass(eq=True)
class FinSetRep:
    quiver: Quiver
    sets: dict
    maps: dict

    __hash__ = None

    def __post_init__(self):
        q = self.quiver
        if set(self.sets) != set(q.vertices):
            raise SetRepError("sets must be given for exactly the quiver's vertices")
        if set(self.maps) != {a.id for a in q.arrows}:
            raise SetRepError("maps must be given for exactly the quiver's arrows")
        owner = {}
        for v in q.vertices:
            elems = tuple(sorted(str(x) for x in self.sets[v]))
            if len(set(elems)) != len(elems):
                raise SetRepError(f"repeated element at vertex {v}")
            for x in elems:
                if x in owner:
                    raise SetRepError(f"element id {x!r} shared by vertices {owner[x]} and {v}")
                owner[x] = v
            self.sets[v] = elems
        for a in q.arrows:
            if not self.sets[a.tgt] and self.sets[a.src]:
                raise SetRepError(f"null propagation violated: arrow {a.id!r} "
                                  f"leaves a nonempty set for an empty one")
        for a in q.arrows:
            table = {str(k): str(v) for k, v in self.maps[a.id].items()}
            if set(table) != set(self.sets[a.src]):
                raise SetRepError(f"map for arrow {a.id!r} is not total on its source set")
            tgt = set(self.sets[a.tgt])
            for x, y in table.items():
                if y not in tgt:
                    raise SetRepError(f"map for arrow {a.id!r} sends {x!r} outside its target set")
            self.maps[a.id] = dict(sorted(table.items()))

    @classmethod
    def empty(cls, quiver: Quiver) -> "FinSetRep":
        return cls(quiver, {v: () for v in quiver.vertices}, {a.id: {} for a in quiver.arrows})

    @classmethod
    def from_json(cls, obj) -> "FinSetRep":
        q = validate_quiver(obj["quiver"])
        sets = {int(k): list(v) for k, v in obj.get("sets", {}).items()}
        for v in q.vertices:
            sets.setdefault(v, [])
        return cls(q, sets, {str(k): dict(v) for k, v in obj.get("maps", {}).items()})

    def to_json(self) -> dict:
        return {"kind": "finset", "quiver": self.quiver.to_json(),
                "sets": {str(v): list(self.sets[v]) for v in self.quiver.vertices},
                "maps": {a: dict(m) for a, m in self.maps.items()}}

    def size(self, v) -> int:
        return len(self.sets[v])

    def is_empty(self) -> bool:
        return not any(self.sets.values())


@dataclass(eq=True)
class SetMorphism:
    """Vertexwise functions commuting with the arrow maps.

    ``components is None`` marks the formal zero morphism, used when no
    actual family of functions can exist (some nonempty set would have to
    map into an empty one).
    """

    source: FinSetRep
    target: FinSetRep
    components: dict | None

    __hash__ = None

    def __post_init__(self):
        if self.source.quiver != self.target.quiver:
            raise SetRepError("morphism between representations of different quivers")
        if self.components is None:
            return
        q = self.source.quiver
        comps = {}
        for v in q.vertices:
            table = {str(k): str(x) for k, x in self.components.get(v, {}).items()}
            if set(table) != set(self.source.sets[v]):
                raise SetRepError(f"component at vertex {v} is not total")
            tgt = set(self.target.sets[v])
            if any(y not in tgt for y in table.values()):
                raise SetRepError(f"component at vertex {v} leaves the target set")
            comps[v] = dict(sorted(table.items()))
        self.components = comps
        for a in q.arrows:
            f, g = self.source.maps[a.id], self.target.maps[a.id]
            hs, ht = comps[a.src], comps[a.tgt]
            for x in self.source.sets[a.src]:
                if ht[f[x]] != g[hs[x]]:
                    raise SetRepError(f"square for arrow {a.id!r} fails at {x!r}")

    @property
    def is_zero(self) -> bool:
        return self.components is None

    @classmethod
    def zero(cls, source: FinSetRep, target: FinSetRep) -> "SetMorphism":
        return cls(source, target, None)

    @classmethod
    def identity(cls, rep: FinSetRep) -> "SetMorphism":
        return cls(rep, rep, {v: {x: x for x in rep.sets[v]} for v in rep.quiver.vertices})

    @classmethod
    def from_empty(cls, target: FinSetRep) -> "SetMorphism":
        return cls(FinSetRep.empty(target.quiver), target, {v: {} for v in target.quiver.vertices})

    @classmethod
    def to_empty(cls, source: FinSetRep) -> "SetMorphism":
        empty = FinSetRep.empty(source.quiver)
        if source.is_empty():
            return cls(source, empty, {v: {} for v in source.quiver.vertices})
        return cls.zero(source, empty)

    def image(self, v) -> frozenset:
        if self.is_zero:
            return frozenset()
        return frozenset(self.components[v].values())

    def kernel_pairs(self, v) -> frozenset:
        """``{(a, b) : h(a) = h(b)}``; everything for the zero morphism."""
        elems = self.source.sets[v]
        if self.is_zero:
            return frozenset(_cartesian(elems, elems))
        h = self.components[v]
        return frozenset((a, b) for a in elems for b in elems if h[a] == h[b])


def condition_gamma(a: FinSetRep, b: FinSetRep) -> bool:
    """True when a vertexwise family of functions ``a -> b`` can exist."""
    return all(b.sets[v] or not a.sets[v] for v in a.quiver.vertices)


def hom(a: FinSetRep, b: FinSetRep, components: dict | None) -> SetMorphism:
    """A morphism, or the zero morphism when the hom-set convention demands it."""
    if not condition_gamma(a, b):
        return SetMorphism.zero(a, b)
    return SetMorphism(a, b, components)


def compose(g: SetMorphism, h: SetMorphism) -> SetMorphism:
    """``g o h``."""
    if h.target != g.source:
        raise SetRepError("morphisms are not composable")
    if g.is_zero or h.is_zero:
        return SetMorphism.zero(h.source, g.target)
    return SetMorphism(h.source, g.target,
                       {v: {x: g.components[v][y] for x, y in h.components[v].items()}
                        for v in h.source.quiver.vertices})


@dataclass(frozen=True)
class MorphismClass:
    mono: bool
    epi: bool
    iso: bool


def classify_morphism(h: SetMorphism) -> MorphismClass:
    q = h.source.quiver
    if h.is_zero:
        mono = h.source.is_empty()
        epi = h.target.is_empty()
    else:
        mono = all(len(set(h.components[v].values())) == len(h.components[v])
                   for v in q.vertices)
        epi = all(h.image(v) == frozenset(h.target.sets[v]) for v in q.vertices)
    return MorphismClass(mono, epi, mono and epi)


@dataclass(frozen=True)
class RelatedExactness:
    exact: bool
    witness: tuple | None = None  # (vertex, pair, which side it is missing from)


def related_exact_check(h: SetMorphism, h2: SetMorphism) -> RelatedExactness:
    """Test ``(Im h x Im h) u diagonal == Ker h2`` at every vertex."""
    if h.source.quiver != h2.source.quiver:
        raise SetRepError("quiver mismatch")
    if h.target != h2.source:
        raise SetRepError("target of the first morphism is not the source of the second")
    mid = h.target
    for v in mid.quiver.vertices:
        im = h.image(v)
        lhs = {(x, y) for x in im for y in im} | {(b, b) for b in mid.sets[v]}
        rhs = h2.kernel_pairs(v)
        if lhs != rhs:
            extra = sorted(lhs - rhs)
            if extra:
                return RelatedExactness(False, (v, extra[0], "missing from kernel"))
            return RelatedExactness(False, (v, sorted(rhs - lhs)[0], "missing from image side"))
    return RelatedExactness(True)


# sums, products, diagonal


def direct_sum(a: FinSetRep, b: FinSetRep) -> FinSetRep:
    if a.quiver != b.quiver:
        raise SetRepError("direct sum needs a common quiver")
    q = a.quiver
    sets = {v: [x + "#L" for x in a.sets[v]] + [x + "#R" for x in b.sets[v]] for v in q.vertices}
    maps = {}
    for al in q.arrows:
        m = {x + "#L": y + "#L" for x, y in a.maps[al.id].items()}
        m.update({x + "#R": y + "#R" for x, y in b.maps[al.id].items()})
        maps[al.id] = m
    return FinSetRep(q, sets, maps)


def _pair(x, y) -> str:
    return f"({x},{y})"


def product(a: FinSetRep, b: FinSetRep) -> FinSetRep:
    if a.quiver != b.quiver:
        raise SetRepError("product needs a common quiver")
    q = a.quiver
    sets = {v: [_pair(x, y) for x in a.sets[v] for y in b.sets[v]] for v in q.vertices}
    maps = {al.id: {_pair(x, y): _pair(a.maps[al.id][x], b.maps[al.id][y])
                    for x in a.sets[al.src] for y in b.sets[al.src]}
            for al in q.arrows}
    return FinSetRep(q, sets, maps)


def diagonal(a: FinSetRep) -> tuple[FinSetRep, SetMorphism]:
    """The diagonal sub-object of ``a x a`` with its inclusion."""
    q = a.quiver
    sets = {v: [_pair(x, x) + "~" for x in a.sets[v]] for v in q.vertices}
    maps = {al.id: {_pair(x, x) + "~": _pair(y, y) + "~" for x, y in a.maps[al.id].items()}
            for al in q.arrows}
    d = FinSetRep(q, sets, maps)
    incl = SetMorphism(d, product(a, a),
                       {v: {_pair(x, x) + "~": _pair(x, x) for x in a.sets[v]}
                        for v in q.vertices})
    return d, incl


# systems over the path semigroup


@dataclass(eq=True)
class PGammaSystem:
    quiver: Quiver
    carrier: frozenset
    parts: dict
    action: dict

    __hash__ = None

    def __post_init__(self):
        q = self.quiver
        if THETA not in self.carrier:
            raise SetRepError("carrier must contain THETA")
        if set(self.parts) != set(q.vertices):
            raise SetRepError("parts must be given for exactly the quiver's vertices")
        seen = set()
        for v in q.vertices:
            p = frozenset(self.parts[v])
            if THETA in p:
                raise SetRepError("THETA cannot lie in a vertex part")
            if p & seen:
                raise SetRepError("vertex parts are not disjoint")
            seen |= p
            self.parts[v] = p
        if seen | {THETA} != set(self.carrier):
            raise SetRepError("carrier is not the union of the parts and THETA")
        for a in q.arrows:
            act = self.action.get(a.id)
            if act is None or set(act) != set(self.parts[a.src]):
                raise SetRepError(f"action of arrow {a.id!r} is not total on its part")
            if any(y not in self.parts[a.tgt] for y in act.values()):
                raise SetRepError(f"action of arrow {a.id!r} leaves the target part")

    def act(self, p, m):
        """Act by a path (or ZERO) on an element of the carrier."""
        if p is ZERO or m is THETA:
            return THETA
        if m not in self.parts[p.start]:
            return THETA
        for a in p.arrows:
            m = self.action[a][m]
        return m


def to_system(rep: FinSetRep) -> PGammaSystem:
    q = rep.quiver
    parts = {v: frozenset(rep.sets[v]) for v in q.vertices}
    carrier = frozenset().union(*parts.values()) | {THETA}
    return PGammaSystem(q, carrier, parts, {a: dict(m) for a, m in rep.maps.items()})


def from_system(sys: PGammaSystem) -> FinSetRep:
    q = sys.quiver
    return FinSetRep(q, {v: sorted(sys.parts[v]) for v in q.vertices},
                     {a.id: dict(sys.action[a.id]) for a in q.arrows})


def to_system_morphism(h: SetMorphism) -> dict:
    """The pointed map of carriers induced by ``h`` (THETA goes to THETA)."""
    out = {THETA: THETA}
    for v in h.source.quiver.vertices:
        for x in h.source.sets[v]:
            out[x] = THETA if h.is_zero else h.components[v][x]
    return out


def check_system_action(sys: PGammaSystem, max_len: int = 2) -> bool:
    """Check that trivial paths act as local identities and the action respects products."""
    from .quiver import compose_paths, enumerate_paths
    paths = enumerate_paths(sys.quiver, max_len)
    for m in sys.carrier:
        for v in sys.quiver.vertices:
            e = Path.trivial(v)
            want = m if (m is not THETA and m in sys.parts[v]) else THETA
            if sys.act(e, m) != want:
                return False
        for p in paths:
            for r in paths:
                if sys.act(compose_paths(p, r), m) != sys.act(p, sys.act(r, m)):
                    return False
    return True
