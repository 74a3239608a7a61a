"""Exact dense/sparse linear algebra over Q.

Matrices are lists of rows of Fractions.  Internally elimination works on
sparse rows (``dict`` column -> Fraction), which keeps the large but very
sparse derivation and cocycle systems cheap.
"""
from __future__ import annotations

from fractions import Fraction

__all__ = [
    "DimensionError",
    "Subspace",
    "rref",
    "rank",
    "kernel",
    "subspace_sum",
    "subspace_intersect",
    "subspace_contains",
    "identity",
    "zeros",
    "matmul",
    "matvec",
    "transpose",
    "mat_add",
    "mat_scale",
    "is_zero_matrix",
    "flatten",
    "unflatten",
]


class DimensionError(ValueError):
    pass


class _Echelon:
    """Incremental Gauss-Jordan state: fully reduced sparse pivot rows."""

    __slots__ = ("rows",)

    def __init__(self):
        self.rows = {}  # pivot column -> sparse row with row[pivot] == 1

    def reduce(self, row):
        row = {c: v for c, v in row.items() if v}
        hits = [c for c in row if c in self.rows]
        for c in hits:
            f = row.get(c)
            if not f:
                continue
            for cc, vv in self.rows[c].items():
                s = row.get(cc, 0) - f * vv
                if s:
                    row[cc] = s
                else:
                    row.pop(cc, None)
        return row

    def add(self, row):
        """Insert a row; return True if it was independent."""
        row = self.reduce(row)
        if not row:
            return False
        p = min(row)
        inv = 1 / row[p]
        if inv != 1:
            row = {c: v * inv for c, v in row.items()}
        for prow in self.rows.values():
            f = prow.get(p)
            if f:
                for cc, vv in row.items():
                    s = prow.get(cc, 0) - f * vv
                    if s:
                        prow[cc] = s
                    else:
                        del prow[cc]
        self.rows[p] = row
        return True

    @property
    def pivots(self):
        return sorted(self.rows)

    def sorted_rows(self):
        return [self.rows[p] for p in sorted(self.rows)]


def _sparse(row):
    return {c: Fraction(v) for c, v in enumerate(row) if v}


def _dense(row, n):
    out = [Fraction(0)] * n
    for c, v in row.items():
        out[c] = v
    return out


def rref(m):
    """Reduced row-echelon form of ``m`` and its rank.

    The returned matrix has the shape of ``m``; zero rows come last.
    """
    m = [list(r) for r in m]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    ech = _Echelon()
    for r in m:
        ech.add(_sparse(r))
    out = [_dense(r, ncols) for r in ech.sorted_rows()]
    k = len(out)
    out.extend([Fraction(0)] * ncols for _ in range(nrows - k))
    return out, k


def rank(m):
    return rref(m)[1]


def _kernel_sparse(rows, ncols):
    ech = _Echelon()
    for r in rows:
        ech.add(r)
    pivots = set(ech.rows)
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = {f: Fraction(1)}
        for p, prow in ech.rows.items():
            x = prow.get(f)
            if x:
                v[p] = -x
        basis.append(v)
    return basis


def kernel(m, ncols=None):
    """Right null space of ``m`` as a canonical :class:`Subspace`."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    rows = [r if isinstance(r, dict) else _sparse(r) for r in m]
    return Subspace.from_sparse(ncols, _kernel_sparse(rows, ncols))


class Subspace:
    """A subspace of Q^n held by its canonical RREF basis.

    Two subspaces are equal exactly when their basis tuples are equal.
    """

    __slots__ = ("ambient_dim", "basis", "_pivots", "_rows")

    def __init__(self, ambient_dim, vectors=()):
        ech = _Echelon()
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            ech.add(_sparse(v))
        self._init(ambient_dim, ech)

    @classmethod
    def from_sparse(cls, ambient_dim, rows):
        ech = _Echelon()
        for r in rows:
            ech.add(dict(r))
        obj = cls.__new__(cls)
        obj._init(ambient_dim, ech)
        return obj

    def _init(self, ambient_dim, ech):
        self.ambient_dim = ambient_dim
        self._rows = ech.sorted_rows()
        self._pivots = tuple(ech.pivots)
        self.basis = tuple(tuple(_dense(r, ambient_dim)) for r in self._rows)

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def full(cls, n):
        return cls.from_sparse(n, [{i: Fraction(1)} for i in range(n)])

    @classmethod
    def span_of_units(cls, n, indices):
        return cls.from_sparse(n, [{i: Fraction(1)} for i in indices])

    @property
    def dim(self):
        return len(self.basis)

    @property
    def pivots(self):
        return self._pivots

    def sparse_basis(self):
        return [dict(r) for r in self._rows]

    def _echelon(self):
        ech = _Echelon()
        ech.rows = {p: dict(r) for p, r in zip(self._pivots, self._rows)}
        return ech

    def reduce(self, v):
        """Remainder of ``v`` after clearing pivot columns (dense in, dense out)."""
        if len(v) != self.ambient_dim:
            raise DimensionError("ambient-dimension mismatch")
        return _dense(self._echelon().reduce(_sparse(v)), self.ambient_dim)

    def reduce_sparse(self, v):
        return self._echelon().reduce(v)

    def contains(self, v):
        if len(v) != self.ambient_dim:
            raise DimensionError("ambient-dimension mismatch")
        return not self._echelon().reduce(_sparse(v))

    def contains_sparse(self, v):
        return not self._echelon().reduce(v)

    def coordinates(self, v):
        """Coefficients of ``v`` in the canonical basis (v must lie in self)."""
        sv = _sparse(v)
        coords = [sv.get(p, Fraction(0)) for p in self._pivots]
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return coords

    def is_subspace_of(self, other):
        ech = other._echelon()
        return all(not ech.reduce(dict(r)) for r in self._rows)

    def __add__(self, other):
        return subspace_sum(self, other)

    def __and__(self, other):
        return subspace_intersect(self, other)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __le__(self, other):
        return self.is_subspace_of(other)

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"


def _check(a, b):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionError(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")


def subspace_sum(a, b):
    _check(a, b)
    return Subspace.from_sparse(a.ambient_dim, a.sparse_basis() + b.sparse_basis())


def subspace_intersect(a, b):
    """A ∩ B from the kernel of the stacked system [A^T | -B^T]."""
    _check(a, b)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    ka, kb = a.dim, b.dim
    rows = [dict() for _ in range(a.ambient_dim)]
    for j, v in enumerate(a._rows):
        for c, x in v.items():
            rows[c][j] = x
    for j, v in enumerate(b._rows):
        for c, x in v.items():
            rows[c][ka + j] = -x
    ker = _kernel_sparse(rows, ka + kb)
    out = []
    for coeffs in ker:
        vec = {}
        for j, x in coeffs.items():
            if j < ka:
                for c, y in a._rows[j].items():
                    s = vec.get(c, 0) + x * y
                    if s:
                        vec[c] = s
                    else:
                        vec.pop(c, None)
        out.append(vec)
    return Subspace.from_sparse(a.ambient_dim, out)


def subspace_contains(a, v):
    return a.contains(v)


# ---------------------------------------------------------------------------
# small matrix helpers

def zeros(r, c=None):
    c = r if c is None else c
    return [[Fraction(0)] * c for _ in range(r)]


def identity(n):
    m = zeros(n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def transpose(m):
    return [list(col) for col in zip(*m)]


def matmul(a, b):
    bt = transpose(b)
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x != 0]
        out.append([sum((x * col[k] for k, x in nz), Fraction(0)) for col in bt])
    return out


def matvec(a, v):
    return [sum((x * v[k] for k, x in enumerate(row) if x != 0), Fraction(0)) for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[x * c for x in r] for r in a]


def is_zero_matrix(m):
    return all(x == 0 for r in m for x in r)


def flatten(m):
    return [x for r in m for x in r]


def unflatten(v, n):
    return [list(v[i * n:(i + 1) * n]) for i in range(n)]
