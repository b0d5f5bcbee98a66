"""
Finite quivers, the path semigroup with zero, cycle classification and
arrow (positive) functions.

A path is stored with its arrows in traversal order: ``Path(arrows=(a, b))``
first follows ``a`` then ``b``.  In the usual algebra notation this is the
product ``b a``, so ``compose_paths(p, q)`` means "first q, then p" and is
zero unless ``q`` ends where ``p`` starts.

>>> q = Quiver.from_edges([1, 2], [("a", 1, 2)])
>>> [str(p) for p in enumerate_paths(q, 1)]
['e1', 'e2', 'a']
>>> arrow_positive_function(q).values
{1: 0, 2: 1}
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    id: str
    src: int
    tgt: int


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple

    def __post_init__(self):
        if not self.vertices:
            raise QuiverError("empty vertex set")
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex id")
        if list(self.vertices) != sorted(self.vertices):
            raise QuiverError("vertices must be sorted ascending")
        seen = set()
        vs = set(self.vertices)
        for a in self.arrows:
            if a.id in seen:
                raise QuiverError(f"duplicate arrow id {a.id!r}")
            seen.add(a.id)
            if a.src not in vs or a.tgt not in vs:
                raise QuiverError(f"dangling vertex in arrow {a.id!r}")

    @classmethod
    def from_edges(cls, vertices: Iterable[int], arrows: Iterable[tuple]) -> "Quiver":
        return validate_quiver({"vertices": list(vertices),
                                "arrows": [{"id": a, "src": s, "tgt": t} for a, s, t in arrows]})

    def arrow(self, arrow_id: str) -> Arrow:
        for a in self.arrows:
            if a.id == arrow_id:
                return a
        raise KeyError(arrow_id)

    @property
    def arrow_map(self) -> dict:
        return {a.id: a for a in self.arrows}

    def out_arrows(self, v: int) -> list:
        return [a for a in self.arrows if a.src == v]

    def in_arrows(self, v: int) -> list:
        return [a for a in self.arrows if a.tgt == v]

    def components(self) -> list[tuple]:
        """Weakly connected components as sorted vertex tuples, ordered by smallest vertex."""
        adj = {v: set() for v in self.vertices}
        for a in self.arrows:
            adj[a.src].add(a.tgt)
            adj[a.tgt].add(a.src)
        seen = set()
        out = []
        for v in self.vertices:
            if v in seen:
                continue
            comp = []
            todo = [v]
            seen.add(v)
            while todo:
                x = todo.pop()
                comp.append(x)
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        todo.append(y)
            out.append(tuple(sorted(comp)))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def restrict(self, vertices: Iterable[int]) -> "Quiver":
        """Full subquiver on the given vertices."""
        vs = set(vertices)
        return Quiver(tuple(sorted(vs)),
                      tuple(a for a in self.arrows if a.src in vs and a.tgt in vs))

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices),
                "arrows": [{"id": a.id, "src": a.src, "tgt": a.tgt} for a in self.arrows]}


def validate_quiver(raw) -> Quiver:
    """Build a canonical Quiver from a JSON-like dict."""
    if isinstance(raw, Quiver):
        return raw
    try:
        verts = raw["vertices"]
        arrows_raw = raw.get("arrows", [])
    except (KeyError, TypeError, AttributeError):
        raise QuiverError("quiver needs 'vertices' and 'arrows'")
    try:
        verts = [int(v) for v in verts]
    except (TypeError, ValueError):
        raise QuiverError("vertex ids must be integers")
    if any(v < 0 for v in verts):
        raise QuiverError("vertex ids must be non-negative")
    arrows = []
    for a in arrows_raw:
        try:
            arrows.append(Arrow(str(a["id"]), int(a["src"]), int(a["tgt"])))
        except (KeyError, TypeError, ValueError):
            raise QuiverError(f"malformed arrow {a!r}")
    if len(set(verts)) != len(verts):
        raise QuiverError("duplicate vertex id")
    return Quiver(tuple(sorted(verts)), tuple(arrows))


# path semigroup


class _Zero:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "ZERO"

    __str__ = __repr__


ZERO = _Zero()


@dataclass(frozen=True)
class Path:
    """A path: trivial at ``start`` when ``arrows`` is empty."""

    start: int
    end: int
    arrows: tuple = ()

    @classmethod
    def trivial(cls, v: int) -> "Path":
        return cls(v, v, ())

    @classmethod
    def of_arrows(cls, q: Quiver, arrow_ids: Iterable[str]) -> "Path":
        ids = tuple(arrow_ids)
        if not ids:
            raise QuiverError("use Path.trivial for length-0 paths")
        am = q.arrow_map
        arrows = [am[i] for i in ids]
        for x, y in zip(arrows, arrows[1:]):
            if x.tgt != y.src:
                raise QuiverError(f"arrows {x.id!r} and {y.id!r} are not composable")
        return cls(arrows[0].src, arrows[-1].tgt, ids)

    @property
    def source(self) -> int:
        return self.start

    @property
    def target(self) -> int:
        return self.end

    def __len__(self):
        return len(self.arrows)

    def __str__(self):
        if not self.arrows:
            return f"e{self.start}"
        return "".join(reversed(self.arrows)) if all(len(a) == 1 for a in self.arrows) \
            else "*".join(reversed(self.arrows))


def compose_paths(p, q):
    """Semigroup product ``p q``: follow ``q`` then ``p``; ZERO if they do not meet."""
    if p is ZERO or q is ZERO:
        return ZERO
    if p.start != q.end:
        return ZERO
    return Path(q.start, p.end, q.arrows + p.arrows)


def enumerate_paths(q: Quiver, max_len: int) -> list[Path]:
    """All paths of length at most ``max_len``, ordered by length then arrow ids."""
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    out = [Path.trivial(v) for v in q.vertices]
    layer = [Path(a.src, a.tgt, (a.id,)) for a in q.arrows]
    length = 1
    while layer and length <= max_len:
        layer.sort(key=lambda p: p.arrows)
        out.extend(layer)
        nxt = []
        for p in layer:
            for a in q.out_arrows(p.end):
                nxt.append(Path(p.start, a.tgt, p.arrows + (a.id,)))
        layer = nxt
        length += 1
    return out


# cycles


@dataclass(frozen=True)
class Cycle:
    """A closed walk given by arrows and traversal directions (+1 forward, -1 backward)."""

    arrows: tuple
    directions: tuple

    @property
    def clockwise(self) -> int:
        return sum(1 for d in self.directions if d > 0)

    @property
    def anticlockwise(self) -> int:
        return sum(1 for d in self.directions if d < 0)

    @property
    def symmetric(self) -> bool:
        return self.clockwise == self.anticlockwise

    @property
    def oriented(self) -> bool:
        return self.anticlockwise == 0


@dataclass
class CycleReport:
    basis: list
    oriented: list
    all_symmetric: bool

    @property
    def cycles(self) -> list:
        return self.basis + [c for c in self.oriented if c not in self.basis]


def _spanning_forest(q: Quiver):
    """BFS forest: parent pointers ``v -> (parent, arrow, direction)`` and depths."""
    parent = {}
    depth = {}
    tree = set()
    for root in q.vertices:
        if root in depth:
            continue
        depth[root] = 0
        parent[root] = None
        todo = deque([root])
        while todo:
            x = todo.popleft()
            for a in q.arrows:
                if a.src == x and a.tgt not in depth:
                    y, d = a.tgt, 1
                elif a.tgt == x and a.src not in depth:
                    y, d = a.src, -1
                else:
                    continue
                depth[y] = depth[x] + 1
                parent[y] = (x, a.id, d)
                tree.add(a.id)
                todo.append(y)
    return parent, depth, tree


def _tree_path(parent, depth, u, v):
    """Steps (arrow, direction) walking the forest from u to v."""
    up_u, up_v = [], []
    while depth[u] > depth[v]:
        x, a, d = parent[u]
        up_u.append((a, -d))
        u = x
    while depth[v] > depth[u]:
        x, a, d = parent[v]
        up_v.append((a, d))
        v = x
    while u != v:
        x, a, d = parent[u]
        up_u.append((a, -d))
        u = x
        x, a, d = parent[v]
        up_v.append((a, d))
        v = x
    return up_u + list(reversed(up_v))


def _fundamental_cycle(q, parent, depth, a) -> Cycle:
    steps = [(a.id, 1)] + _tree_path(parent, depth, a.tgt, a.src)
    k = min(range(len(steps)), key=lambda i: steps[i][0])
    steps = steps[k:] + steps[:k]
    return Cycle(tuple(s[0] for s in steps), tuple(s[1] for s in steps))


def fundamental_cycles(q: Quiver) -> list[Cycle]:
    """One cycle per non-forest arrow; each is traversed with that arrow forward."""
    parent, depth, tree = _spanning_forest(q)
    return [_fundamental_cycle(q, parent, depth, a) for a in q.arrows if a.id not in tree]


def oriented_cycles(q: Quiver, max_len: int = 8) -> list[Cycle]:
    """Directed cycles without repeated vertices, one per rotation class."""
    order = {v: i for i, v in enumerate(q.vertices)}
    out = []

    def walk(start, v, arrows, visited):
        for a in q.out_arrows(v):
            if a.tgt == start:
                ids = arrows + [a.id]
                k = ids.index(min(ids))
                out.append(Cycle(tuple(ids[k:] + ids[:k]), (1,) * len(ids)))
            elif (a.tgt not in visited and order[a.tgt] > order[start]
                  and len(arrows) + 1 < max_len):
                walk(start, a.tgt, arrows + [a.id], visited | {a.tgt})

    for s in q.vertices:
        walk(s, s, [], {s})
    out.sort(key=lambda c: (len(c.arrows), c.arrows))
    return out


def has_odd_oriented_cycle(q: Quiver) -> bool:
    """True if some closed directed walk has odd length."""
    for start in q.vertices:
        seen = {(start, 0)}
        todo = [(start, 0)]
        while todo:
            v, parity = todo.pop()
            for a in q.out_arrows(v):
                nxt = (a.tgt, 1 - parity)
                if nxt == (start, 1):
                    return True
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
    return False


def find_nonsymmetric_cycle(q: Quiver) -> Cycle | None:
    """A witness cycle with unequal counts, or None if every cycle is symmetric."""
    values, conflict = _potential(q)
    if conflict is None:
        return None
    parent, depth, _ = _spanning_forest(q)
    return _fundamental_cycle(q, parent, depth, q.arrow(conflict))


def cycle_report(q: Quiver, max_len: int = 8) -> CycleReport:
    values, _ = _potential(q)
    return CycleReport(fundamental_cycles(q), oriented_cycles(q, max_len), values is not None)


# arrow functions


@dataclass(frozen=True)
class ArrowFunction:
    values: dict = field(hash=False)

    def __call__(self, v):
        return self.values[v]

    def is_valid_for(self, q: Quiver) -> bool:
        return set(self.values) == set(q.vertices) and all(
            self.values[a.tgt] == self.values[a.src] + 1 for a in q.arrows)


def _potential(q: Quiver, roots: Iterable[int] | None = None):
    """BFS with +1/-1 weights.  Returns (values, None) or (None, conflicting arrow id).

    With the default roots the search visits vertices exactly as
    ``_spanning_forest`` does, so a conflicting arrow is never a forest arrow
    and its fundamental cycle is a non-symmetric witness.
    """
    roots = list(q.vertices) if roots is None else list(roots) + list(q.vertices)
    val = {}
    for r in roots:
        if r in val:
            continue
        val[r] = 0
        todo = deque([r])
        while todo:
            x = todo.popleft()
            for a in q.arrows:
                steps = []
                if a.src == x:
                    steps.append((a.tgt, 1))
                if a.tgt == x:
                    steps.append((a.src, -1))
                for y, w in steps:
                    if y not in val:
                        val[y] = val[x] + w
                        todo.append(y)
                    elif val[y] != val[x] + w:
                        return None, a.id
    for comp in q.components():
        m = min(val[v] for v in comp)
        for v in comp:
            val[v] -= m
    return {v: val[v] for v in q.vertices}, None


def arrow_positive_function(q: Quiver, root: int | None = None) -> ArrowFunction | None:
    """The canonical arrow function (min 0 per component), or None if none exists."""
    values, _ = _potential(q, None if root is None else [root])
    return None if values is None else ArrowFunction(values)


@dataclass
class Grading:
    """Degree of each vertex, and the elements in each degree (when the rep has sets)."""

    degrees: dict
    components: dict


def vertex_grading(rep, F: ArrowFunction) -> Grading:
    """Grade a representation by an arrow function.

    ``rep`` is anything with a ``quiver``; if it also has ``sets`` (a finite
    set representation) the homogeneous parts list ``(vertex, element)``
    pairs and every arrow action is checked to raise degree by exactly one.
    """
    q = rep.quiver if hasattr(rep, "quiver") else rep
    if not F.is_valid_for(q):
        raise QuiverError("not an arrow function for this quiver")
    comps = {}
    sets = getattr(rep, "sets", None)
    for v in q.vertices:
        items = [(v, x) for x in sets[v]] if sets is not None else [(v, None)]
        comps.setdefault(F(v), []).extend(items)
    if sets is not None:
        maps = rep.maps
        for a in q.arrows:
            for x in sets[a.src]:
                y = maps[a.id][x]
                if (a.tgt, y) not in comps.get(F(a.src) + 1, []):
                    raise QuiverError(f"arrow {a.id!r} does not raise degree on {x!r}")
    return Grading(dict(F.values), {k: tuple(v) for k, v in sorted(comps.items())})
