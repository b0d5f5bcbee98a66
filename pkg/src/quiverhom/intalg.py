"""
Exact integer linear algebra and finitely generated abelian groups.

Everything here runs on Python ints, so there is no overflow and no
floating point.  The main pieces:

* ``IntMatrix``: a small immutable integer matrix.
* ``column_hnf`` / ``hnf_kernel_basis`` / ``Lattice``: column Hermite normal
  form, used for canonical lattice bases, kernels and exact solves.
* ``smith_normal_form``: ``U * A * V = D`` with unimodular ``U``, ``V``.
* ``FgAbGroup`` / ``GroupHom``: groups given by a presentation
  ``Z^n / colspan(R)`` and homomorphisms given on generators.
* ``AbRep`` / ``ab_limit``: diagrams of abelian groups over a quiver and
  their limit, computed as a preimage lattice modulo relations.

>>> cokernel_group(IntMatrix.diagonal([1, 2, 0]))
FgAbGroup(Z + Z/2)
>>> smith_normal_form(IntMatrix([[2, 4], [6, 8]]))[1].tolist()
[[2, 0], [0, 4]]
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .quiver import validate_quiver


class IntMatrix:
    """Immutable integer matrix stored as a tuple of row tuples."""

    __slots__ = ("rows", "cols", "data", "_hash")

    def __init__(self, data: Iterable[Iterable[int]] = (), rows: int | None = None,
                 cols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in data)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"inconsistent matrix shape, expected {rows}x{cols}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    # constructors

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "IntMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        for c in columns:
            if len(c) != rows:
                raise ValueError("column length does not match row count")
        return cls([[c[i] for c in columns] for i in range(rows)], rows, len(columns))

    @classmethod
    def hstack(cls, blocks: Sequence["IntMatrix"], rows: int | None = None) -> "IntMatrix":
        if rows is None:
            if not blocks:
                raise ValueError("hstack of nothing needs an explicit row count")
            rows = blocks[0].rows
        for b in blocks:
            if b.rows != rows:
                raise ValueError("hstack row mismatch")
        data = [sum((b.data[i] for b in blocks), ()) for i in range(rows)]
        return cls(data, rows, sum(b.cols for b in blocks))

    @classmethod
    def vstack(cls, blocks: Sequence["IntMatrix"], cols: int | None = None) -> "IntMatrix":
        if cols is None:
            if not blocks:
                raise ValueError("vstack of nothing needs an explicit column count")
            cols = blocks[0].cols
        for b in blocks:
            if b.cols != cols:
                raise ValueError("vstack column mismatch")
        return cls([row for b in blocks for row in b.data], sum(b.rows for b in blocks), cols)

    @classmethod
    def block_diagonal(cls, blocks: Sequence["IntMatrix"]) -> "IntMatrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b.data):
                out[r0 + i][c0:c0 + b.cols] = row
            r0 += b.rows
            c0 += b.cols
        return cls(out, rows, cols)

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def submatrix(self, rows: Sequence[int] | None = None,
                  cols: Sequence[int] | None = None) -> "IntMatrix":
        rows = range(self.rows) if rows is None else rows
        cols = range(self.cols) if cols is None else cols
        return IntMatrix([[self.data[i][j] for j in cols] for i in rows], len(rows), len(cols))

    def row_block(self, start: int, stop: int) -> "IntMatrix":
        return IntMatrix(self.data[start:stop], stop - start, self.cols)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    # arithmetic

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            ocols = other.columns()
            return IntMatrix([[sum(a * b for a, b in zip(r, c) if a) for c in ocols]
                              for r in self.data], self.rows, other.cols)
        vec = tuple(other)
        if len(vec) != self.cols:
            raise ValueError(f"cannot apply {self.shape} matrix to vector of length {len(vec)}")
        return tuple(sum(a * b for a, b in zip(r, vec) if a) for r in self.data)

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        return self @ vec

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
                         self.rows, self.cols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in subtraction")
        return IntMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
                         self.rows, self.cols)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([[-a for a in r] for r in self.data], self.rows, self.cols)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix([[k * a for a in r] for r in self.data], self.rows, self.cols)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix([self.column(j) for j in range(self.cols)], self.cols, self.rows)

    # comparison

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.rows, self.cols, self.data)))
        return self._hash

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r}, rows={self.rows}, cols={self.cols})"

    # serialization: row-major data with explicit shape

    def to_json(self) -> dict:
        return {"shape": [self.rows, self.cols], "data": [x for r in self.data for x in r]}

    @classmethod
    def from_json(cls, obj) -> "IntMatrix":
        if isinstance(obj, dict):
            rows, cols = obj["shape"]
            flat = list(obj.get("data", []))
            if len(flat) != rows * cols:
                raise ValueError(f"matrix data has {len(flat)} entries, shape needs {rows * cols}")
            return cls([flat[i * cols:(i + 1) * cols] for i in range(rows)], rows, cols)
        return cls(obj)


def determinant(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = a.rows
    if n != a.cols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    m = a.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# Hermite normal form


def _col_hnf(a: IntMatrix, track: bool = True):
    """Column-style HNF.  Returns (H, U, rank, pivot_rows) with A U = H.

    H has its ``rank`` nonzero columns first; column ``c`` has its first
    nonzero entry (the pivot, positive) in row ``pivot_rows[c]``, pivot rows
    strictly increase, and every entry left of a pivot in its row lies in
    ``[0, pivot)``.  These conditions make H unique for the lattice spanned
    by the columns of A.
    """
    m, n = a.rows, a.cols
    h = [list(col) for col in a.columns()]  # work with columns
    u = [[1 if i == j else 0 for i in range(n)] for j in range(n)] if track else None

    def swap(i, j):
        h[i], h[j] = h[j], h[i]
        if track:
            u[i], u[j] = u[j], u[i]

    def addmul(dst, src, q):
        # column dst -= q * column src
        hd, hs = h[dst], h[src]
        for r in range(m):
            if hs[r]:
                hd[r] -= q * hs[r]
        if track:
            ud, us = u[dst], u[src]
            for r in range(n):
                if us[r]:
                    ud[r] -= q * us[r]

    def negate(i):
        h[i] = [-x for x in h[i]]
        if track:
            u[i] = [-x for x in u[i]]

    c = 0
    pivots = []
    for r in range(m):
        if c == n:
            break
        while True:
            nz = [j for j in range(c, n) if h[j][r] != 0]
            if not nz:
                break
            p = min(nz, key=lambda j: (abs(h[j][r]), j))
            if p != c:
                swap(c, p)
            done = True
            for j in range(c + 1, n):
                if h[j][r]:
                    addmul(j, c, h[j][r] // h[c][r])
                    if h[j][r]:
                        done = False
            if done:
                break
        if h[c][r] == 0:
            continue
        if h[c][r] < 0:
            negate(c)
        piv = h[c][r]
        for j in range(c):
            if h[j][r] < 0 or h[j][r] >= piv:
                addmul(j, c, h[j][r] // piv)
        pivots.append(r)
        c += 1
    H = IntMatrix.from_columns(h, m) if n else IntMatrix.zeros(m, 0)
    U = IntMatrix.from_columns(u, n) if track and n else (IntMatrix.zeros(0, 0) if track else None)
    return H, U, c, pivots


def column_hnf(a: IntMatrix) -> IntMatrix:
    """Canonical basis (as columns) of the lattice spanned by the columns of ``a``."""
    H, _, rank, _ = _col_hnf(a, track=False)
    return H.submatrix(None, range(rank))


def hnf_kernel_basis(a: IntMatrix) -> IntMatrix:
    """Canonical column basis of ``ker(a: Z^cols -> Z^rows)``.

    >>> hnf_kernel_basis(IntMatrix([[1, -1]])).tolist()
    [[1], [1]]
    """
    _, U, rank, _ = _col_hnf(a)
    k = U.submatrix(None, range(rank, a.cols))
    return column_hnf(k)


class Lattice:
    """A sublattice of Z^dim with its canonical HNF basis.

    Supports membership and exact coordinates with respect to the basis.
    """

    __slots__ = ("dim", "basis", "pivots")

    def __init__(self, generators: IntMatrix):
        H, _, rank, pivots = _col_hnf(generators, track=False)
        self.dim = generators.rows
        self.basis = H.submatrix(None, range(rank))
        self.pivots = tuple(pivots)

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence[int]], dim: int) -> "Lattice":
        return cls(IntMatrix.from_columns(vectors, dim))

    @property
    def rank(self) -> int:
        return self.basis.cols

    def coords(self, vec: Sequence[int]) -> tuple[int, ...] | None:
        """Integer coefficients ``y`` with ``basis @ y == vec``, or None."""
        vec = tuple(vec)
        if len(vec) != self.dim:
            raise ValueError("vector has the wrong length for this lattice")
        b = self.basis
        y = []
        for j, r in enumerate(self.pivots):
            rest = vec[r] - sum(b.data[r][l] * y[l] for l in range(j))
            q, rem = divmod(rest, b.data[r][j])
            if rem:
                return None
            y.append(q)
        if b @ y != vec:
            return None
        return tuple(y)

    def __contains__(self, vec) -> bool:
        return self.coords(vec) is not None

    def contains_all(self, m: IntMatrix) -> bool:
        return all(self.coords(c) is not None for c in m.columns())

    def solve(self, m: IntMatrix) -> IntMatrix | None:
        """Matrix ``Y`` with ``basis @ Y == m``, or None if some column is outside."""
        cols = []
        for c in m.columns():
            y = self.coords(c)
            if y is None:
                return None
            cols.append(y)
        return IntMatrix.from_columns(cols, self.rank) if cols else IntMatrix.zeros(self.rank, 0)

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.dim == other.dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.dim, self.basis))

    def __repr__(self):
        return f"Lattice(dim={self.dim}, rank={self.rank})"


def preimage_lattice(a: IntMatrix, target: IntMatrix) -> Lattice:
    """``{x : a x in colspan(target)}`` as a Lattice in Z^(a.cols)."""
    n = a.cols
    big = IntMatrix.hstack([a, -target], a.rows)
    k = hnf_kernel_basis(big)
    proj = k.row_block(0, n)
    return Lattice(proj)


# Smith normal form


def smith_normal_form(a: IntMatrix, with_inverse: bool = False):
    """Return ``(U, D, V)`` with ``U @ a @ V == D``.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with nonnegative entries
    and ``d1 | d2 | ...``.  With ``with_inverse`` also returns ``U^-1`` as a
    fourth element.
    """
    m, n = a.rows, a.cols
    d = a.tolist()
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    uinv = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_swap(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]
        for r in uinv:
            r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def row_add(dst, src, q):
        # row dst += q * row src
        if q == 0:
            return
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]
        for r in uinv:
            r[src] -= q * r[dst]

    def col_add(dst, src, q):
        if q == 0:
            return
        for r in d:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    def row_negate(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]
        for r in uinv:
            r[i] = -r[i]

    for t in range(min(m, n)):
        nz = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        row_swap(t, pi)
        col_swap(t, pj)
        while True:
            for i in range(t + 1, m):
                if d[i][t]:
                    row_add(i, t, -(d[i][t] // d[t][t]))
            for j in range(t + 1, n):
                if d[t][j]:
                    col_add(j, t, -(d[t][j] // d[t][t]))
            rest = [(abs(d[i][t]), i, "r") for i in range(t + 1, m) if d[i][t]]
            rest += [(abs(d[t][j]), j, "c") for j in range(t + 1, n) if d[t][j]]
            if rest:
                _, k, kind = min(rest)
                if kind == "r":
                    row_swap(t, k)
                else:
                    col_swap(t, k)
                continue
            piv = d[t][t]
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if d[i][j] % piv), None)
            if bad is None:
                break
            row_add(t, bad[0], 1)
        if d[t][t] < 0:
            row_negate(t)

    U = IntMatrix(u, m, m)
    D = IntMatrix(d, m, n)
    V = IntMatrix(v, n, n)
    if with_inverse:
        return U, D, V, IntMatrix(uinv, m, m)
    return U, D, V


def _diag_entry(D: IntMatrix, i: int) -> int:
    return D.data[i][i] if i < min(D.rows, D.cols) else 0


# groups


def _format_group(free_rank: int, torsion: Sequence[int]) -> str:
    parts = []
    if free_rank == 1:
        parts.append("Z")
    elif free_rank > 1:
        parts.append(f"Z^{free_rank}")
    parts += [f"Z/{t}" for t in torsion]
    return " + ".join(parts) if parts else "0"


class FgAbGroup:
    """The group ``Z^n / colspan(relations)``.

    Invariant factors and the Smith data are computed lazily.  Equality
    (``==``) compares presentations; use ``is_isomorphic`` for abstract
    isomorphism.
    """

    def __init__(self, n_generators: int, relations: IntMatrix | None = None):
        if relations is None:
            relations = IntMatrix.zeros(n_generators, 0)
        if relations.rows != n_generators:
            raise ValueError("relation matrix must have one row per generator")
        self.n_generators = n_generators
        self.relations = relations
        self._lattice = None
        self._snf = None

    @classmethod
    def free(cls, rank: int) -> "FgAbGroup":
        return cls(rank)

    @classmethod
    def cyclic(cls, order: int) -> "FgAbGroup":
        return cls(1, IntMatrix([[order]]))

    @classmethod
    def from_invariants(cls, factors: Sequence[int]) -> "FgAbGroup":
        """Diagonal presentation; a factor 0 is a free summand."""
        k = len(factors)
        rel = [f for f in factors]
        cols = [[rel[i] if r == i else 0 for r in range(k)] for i in range(k) if rel[i] != 0]
        return cls(k, IntMatrix.from_columns(cols, k) if cols else IntMatrix.zeros(k, 0))

    @classmethod
    def direct_sum(cls, groups: Sequence["FgAbGroup"]) -> "FgAbGroup":
        return cls(sum(g.n_generators for g in groups),
                   IntMatrix.block_diagonal([g.relations for g in groups]))

    def _smith(self):
        if self._snf is None:
            self._snf = smith_normal_form(self.relations, with_inverse=True)
        return self._snf

    @property
    def lattice(self) -> Lattice:
        if self._lattice is None:
            self._lattice = Lattice(self.relations)
        return self._lattice

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """``d1 | d2 | ...`` with ones stripped; zeros (free part) come last."""
        _, D, _, _ = self._smith()
        return tuple(x for x in (_diag_entry(D, i) for i in range(self.n_generators)) if x != 1)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d == 0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d != 0)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def order(self) -> int | None:
        """Number of elements, or None if infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def is_isomorphic(self, other: "FgAbGroup") -> bool:
        return self.invariant_factors == other.invariant_factors

    def is_zero(self, x: Sequence[int]) -> bool:
        return tuple(x) in self.lattice

    def canonical_coords(self, x: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of ``x`` in ``Z/d1 + ... + Z^r``, reduced mod each ``d``."""
        U, D, _, _ = self._smith()
        y = U @ tuple(x)
        out = []
        for i in range(self.n_generators):
            di = _diag_entry(D, i)
            if di == 1:
                continue
            out.append(y[i] % di if di else y[i])
        return tuple(out)

    def simplify(self):
        """Return ``(G, to_new, to_old)`` where ``G`` has a diagonal presentation.

        ``to_new: self -> G`` and ``to_old: G -> self`` are inverse isomorphisms.
        Each generator of ``G``, pulled back through ``to_old``, has its first
        nonzero coordinate positive.
        """
        U, D, _, Uinv = self._smith()
        keep = [i for i in range(self.n_generators) if _diag_entry(D, i) != 1]
        factors = [_diag_entry(D, i) for i in keep]
        G = FgAbGroup.from_invariants(factors)
        new_rows = [list(U.data[i]) for i in keep]
        old_cols = [list(Uinv.column(i)) for i in keep]
        for k, col in enumerate(old_cols):
            first = next((x for x in col if x), 0)
            if first < 0:
                old_cols[k] = [-x for x in col]
                new_rows[k] = [-x for x in new_rows[k]]
        to_new = GroupHom(self, G, IntMatrix(new_rows, len(keep), self.n_generators))
        to_old = GroupHom(G, self, IntMatrix.from_columns(old_cols, self.n_generators)
                          if old_cols else IntMatrix.zeros(self.n_generators, 0))
        return G, to_new, to_old

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self):
        return _format_group(self.free_rank, self.torsion)

    def __repr__(self):
        return f"FgAbGroup({self})"

    def __eq__(self, other):
        if not isinstance(other, FgAbGroup):
            return NotImplemented
        return self.n_generators == other.n_generators and self.relations == other.relations

    def __hash__(self):
        return hash((self.n_generators, self.relations))


def cokernel_group(r: IntMatrix) -> FgAbGroup:
    """``Z^rows / colspan(r)``."""
    return FgAbGroup(r.rows, r)


class WellDefinednessError(ValueError):
    pass


class GroupHom:
    """Homomorphism given by its matrix on generators.

    Construction checks that relations of the source go to relations of the
    target.
    """

    def __init__(self, source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix,
                 check: bool = True):
        if matrix.shape != (target.n_generators, source.n_generators):
            raise ValueError(f"hom matrix shape {matrix.shape} does not match "
                             f"{target.n_generators}x{source.n_generators}")
        if check and not target.lattice.contains_all(matrix @ source.relations):
            raise WellDefinednessError("matrix does not send relations to relations")
        self.source = source
        self.target = target
        self.matrix = matrix

    @classmethod
    def identity(cls, g: FgAbGroup) -> "GroupHom":
        return cls(g, g, IntMatrix.identity(g.n_generators), check=False)

    @classmethod
    def zero(cls, source: FgAbGroup, target: FgAbGroup) -> "GroupHom":
        return cls(source, target, IntMatrix.zeros(target.n_generators, source.n_generators),
                   check=False)

    @classmethod
    def direct_sum(cls, homs: Sequence["GroupHom"]) -> "GroupHom":
        return cls(FgAbGroup.direct_sum([h.source for h in homs]),
                   FgAbGroup.direct_sum([h.target for h in homs]),
                   IntMatrix.block_diagonal([h.matrix for h in homs]), check=False)

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        return self.matrix @ x

    def __matmul__(self, other: "GroupHom") -> "GroupHom":
        """Composition ``self o other``."""
        if other.target != self.source:
            raise ValueError("composing homs with mismatched groups")
        return GroupHom(other.source, self.target, self.matrix @ other.matrix, check=False)

    def equals(self, other: "GroupHom") -> bool:
        """Equal as maps (matrices agree modulo target relations)."""
        if self.source != other.source or self.target != other.target:
            return False
        return self.target.lattice.contains_all(self.matrix - other.matrix)

    def is_zero(self) -> bool:
        return self.target.lattice.contains_all(self.matrix)

    def kernel_lattice(self) -> Lattice:
        """Preimage of the target relations: ``{x : f(x) = 0}`` in Z^n."""
        return preimage_lattice(self.matrix, self.target.relations)

    def image_lattice(self) -> Lattice:
        """Image plus target relations, as a lattice in the target's Z^m."""
        return Lattice(IntMatrix.hstack([self.matrix, self.target.relations],
                                        self.target.n_generators))

    def is_injective(self) -> bool:
        return self.source.lattice.contains_all(self.kernel_lattice().basis)

    def is_surjective(self) -> bool:
        return self.image_lattice().basis == IntMatrix.identity(self.target.n_generators)

    def kernel(self) -> tuple[FgAbGroup, "GroupHom"]:
        """Kernel as a group with its inclusion into the source."""
        k = self.kernel_lattice()
        rel = k.solve(self.source.relations)
        K = FgAbGroup(k.rank, rel)
        return K, GroupHom(K, self.source, k.basis, check=False)

    def __repr__(self):
        return f"GroupHom({self.source} -> {self.target}, {self.matrix.tolist()})"


# representations of a quiver in abelian groups


@dataclass
class AbRep:
    """A quiver diagram of finitely generated abelian groups."""

    quiver: object
    groups: dict
    homs: dict

    def __post_init__(self):
        q = self.quiver
        if set(self.groups) != set(q.vertices):
            raise ValueError("groups must be given for exactly the quiver's vertices")
        if set(self.homs) != {a.id for a in q.arrows}:
            raise ValueError("homs must be given for exactly the quiver's arrows")
        for a in q.arrows:
            h = self.homs[a.id]
            if h.source != self.groups[a.src] or h.target != self.groups[a.tgt]:
                raise ValueError(f"hom for arrow {a.id!r} has the wrong source or target")

    @classmethod
    def from_json(cls, obj) -> "AbRep":
        """``{"quiver": ..., "groups": {v: {"generators": n, "relations": matrix}},
        "maps": {arrow: matrix}}``; a missing relation matrix means a free group."""
        q = validate_quiver(obj["quiver"])
        groups = {}
        for v in q.vertices:
            raw = obj.get("groups", {}).get(str(v))
            if raw is None:
                raise ValueError(f"no group for vertex {v}")
            n = int(raw["generators"])
            rel = IntMatrix.from_json(raw["relations"]) if "relations" in raw else IntMatrix.zeros(n, 0)
            if rel.rows != n:
                raise ValueError(f"relations at vertex {v} have {rel.rows} rows, expected {n}")
            groups[v] = FgAbGroup(n, rel)
        homs = {}
        for a in q.arrows:
            if a.id not in obj.get("maps", {}):
                raise ValueError(f"no map for arrow {a.id!r}")
            homs[a.id] = GroupHom(groups[a.src], groups[a.tgt], IntMatrix.from_json(obj["maps"][a.id]))
        return cls(q, groups, homs)

    def to_json(self) -> dict:
        q = self.quiver
        return {"kind": "abelian", "quiver": q.to_json(),
                "groups": {str(v): {"generators": self.groups[v].n_generators,
                                    "relations": self.groups[v].relations.to_json()}
                           for v in q.vertices},
                "maps": {a.id: self.homs[a.id].matrix.to_json() for a in q.arrows}}


@dataclass
class AbRepMorphism:
    source: AbRep
    target: AbRep
    components: dict

    def __post_init__(self):
        for v in self.source.quiver.vertices:
            h = self.components[v]
            if h.source != self.source.groups[v] or h.target != self.target.groups[v]:
                raise ValueError(f"component at vertex {v} has the wrong groups")
        for a in self.source.quiver.arrows:
            lhs = self.components[a.tgt] @ self.source.homs[a.id]
            rhs = self.target.homs[a.id] @ self.components[a.src]
            if not lhs.equals(rhs):
                raise ValueError(f"square for arrow {a.id!r} does not commute")


@dataclass
class AbLimit:
    """The limit group with its embedding data.

    ``basis`` has one column per generator of ``group``; its rows are the
    concatenated generator coordinates of the vertex groups, in the order of
    ``vertices`` with ``offsets`` marking where each block starts.
    """

    group: FgAbGroup
    projections: dict
    basis: IntMatrix
    offsets: dict
    lattice: Lattice = field(repr=False)

    def coords(self, vec: Sequence[int]) -> tuple[int, ...] | None:
        return self.lattice.coords(vec)


def ab_limit(rep: AbRep) -> AbLimit:
    """Limit of an abelian-group diagram: compatible tuples in the product.

    One constraint per arrow, so parallel arrows constrain independently.
    """
    q = rep.quiver
    offsets = {}
    total = 0
    for v in q.vertices:
        offsets[v] = total
        total += rep.groups[v].n_generators
    # variables: x (total) followed by one block of relation coefficients per arrow
    extra = [rep.groups[a.tgt].relations.cols for a in q.arrows]
    width = total + sum(extra)
    rows = []
    col = total
    for a, k in zip(q.arrows, extra):
        F = rep.homs[a.id].matrix
        R = rep.groups[a.tgt].relations
        s0, t0 = offsets[a.src], offsets[a.tgt]
        for r in range(F.rows):
            row = [0] * width
            for j in range(F.cols):
                row[s0 + j] += F.data[r][j]
            row[t0 + r] -= 1
            for j in range(k):
                row[col + j] = -R.data[r][j]
            rows.append(row)
        col += k
    big = IntMatrix(rows, len(rows), width)
    kern = hnf_kernel_basis(big)
    L = Lattice(kern.row_block(0, total))
    rels = IntMatrix.block_diagonal([rep.groups[v].relations for v in q.vertices])
    Y = L.solve(rels)
    if Y is None:
        raise ArithmeticError("relations not contained in the limit lattice")
    group = FgAbGroup(L.rank, Y)
    projections = {}
    for v in q.vertices:
        o = offsets[v]
        block = L.basis.row_block(o, o + rep.groups[v].n_generators)
        projections[v] = GroupHom(group, rep.groups[v], block)
    return AbLimit(group, projections, L.basis, offsets, L)


def limit_map(src: AbLimit, tgt: AbLimit, morphism: AbRepMorphism) -> GroupHom:
    """The map of limits induced by a morphism of diagrams."""
    q = morphism.source.quiver
    cols = []
    for j in range(src.basis.cols):
        x = src.basis.column(j)
        y = []
        for v in q.vertices:
            o = src.offsets[v]
            n = morphism.source.groups[v].n_generators
            y.extend(morphism.components[v].matrix @ x[o:o + n])
        z = tgt.coords(y)
        if z is None:
            raise ArithmeticError("induced element escapes the target limit")
        cols.append(z)
    m = IntMatrix.from_columns(cols, tgt.group.n_generators) if cols else \
        IntMatrix.zeros(tgt.group.n_generators, 0)
    return GroupHom(src.group, tgt.group, m)


@dataclass
class ExactnessReport:
    exact: bool
    injective: bool
    composite_zero: bool
    kernel_in_image: bool
    witness: tuple | None = None


def _vertexwise_exact(alpha: GroupHom, beta: GroupHom) -> str | None:
    if not alpha.is_injective():
        return "first map not injective"
    if not beta.is_surjective():
        return "second map not surjective"
    if not (beta @ alpha).is_zero():
        return "composite not zero"
    if beta.kernel_lattice() != alpha.image_lattice():
        return "kernel differs from image"
    return None


def left_exactness_check(alpha: AbRepMorphism, beta: AbRepMorphism) -> ExactnessReport:
    """Check ``0 -> lim A -> lim B -> lim C`` is exact.

    ``alpha: A -> B`` and ``beta: B -> C`` must form a short exact sequence
    at every vertex; that is verified first.
    """
    if alpha.target is not beta.source and alpha.target != beta.source:
        raise ValueError("morphisms are not composable")
    for v in alpha.source.quiver.vertices:
        why = _vertexwise_exact(alpha.components[v], beta.components[v])
        if why:
            raise ValueError(f"not a short exact sequence at vertex {v}: {why}")
    la, lb, lc = ab_limit(alpha.source), ab_limit(alpha.target), ab_limit(beta.target)
    fa = limit_map(la, lb, alpha)
    fb = limit_map(lb, lc, beta)
    injective = fa.is_injective()
    witness = None
    if not injective:
        witness = ("kernel", next(c for c in fa.kernel_lattice().basis.columns()
                                  if not la.group.is_zero(c)))
    composite_zero = (fb @ fa).is_zero()
    image = fa.image_lattice()
    kernel_in_image = True
    for c in fb.kernel_lattice().basis.columns():
        if c not in image:
            kernel_in_image = False
            witness = witness or ("not in image", c)
            break
    return ExactnessReport(injective and composite_zero and kernel_in_image,
                           injective, composite_zero, kernel_in_image, witness)
