"""Derivation spaces, diagonal tori, nilpotency and semisimplicity tests.

A derivation is an n x n matrix ``d`` with ``d[k-1][j-1]`` the e_k coefficient
of d(e_j).  Spaces of derivations are subspaces of Q^{n*n} with matrices
flattened row-major.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import CompatAlgebra, ParametricError
from .linalg import Subspace, flatten, identity, kernel, matmul, unflatten
from .scalar import Poly, var

__all__ = [
    "DerivationSpace",
    "leibniz_rows",
    "is_derivation",
    "derivation_space",
    "compat_derivation_space",
    "diagonal_derivations",
    "inner_derivations",
    "outer_dimension",
    "matrix_is_nilpotent",
    "space_is_nil",
    "charpoly",
    "minimal_polynomial",
    "is_semisimple",
    "generic_element",
]


@dataclass
class DerivationSpace:
    n: int
    subspace: Subspace
    source: object = None

    @property
    def dim(self):
        return self.subspace.dim

    @property
    def basis(self):
        return [unflatten(list(v), self.n) for v in self.subspace.basis]

    def contains(self, m):
        return self.subspace.contains(flatten(m))

    def __and__(self, other):
        return DerivationSpace(self.n, self.subspace & other.subspace, None)

    def __repr__(self):
        return f"DerivationSpace(n={self.n}, dim={self.dim})"


def _idx(n, row, col):
    return (row - 1) * n + (col - 1)


def leibniz_rows(t):
    """Linear equations in the n^2 entries of d for d[x,y] = [dx,y] + [x,dy]."""
    if t.is_parametric():
        raise ParametricError("derivation systems need a parameter-free bracket")
    n = t.dim
    full = t.full()
    rows = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            eqs = {}
            # d([e_i, e_j]) : sum_k c_ij^k d(e_k)
            for k, c in full.get((i, j), {}).items():
                for m in range(1, n + 1):
                    r = eqs.setdefault(m, {})
                    key = _idx(n, m, k)
                    r[key] = r.get(key, 0) + c
            # - [d e_i, e_j] = - sum_p d_pi [e_p, e_j]
            for p in range(1, n + 1):
                for m, c in full.get((p, j), {}).items():
                    r = eqs.setdefault(m, {})
                    key = _idx(n, p, i)
                    r[key] = r.get(key, 0) - c
                for m, c in full.get((i, p), {}).items():
                    r = eqs.setdefault(m, {})
                    key = _idx(n, p, j)
                    r[key] = r.get(key, 0) - c
            for r in eqs.values():
                r = {k: v for k, v in r.items() if v}
                if r:
                    rows.append(r)
    return rows


def is_derivation(t, d):
    """Direct check of the Leibniz rule on all basis pairs."""
    n = t.dim
    full = t.full()

    def apply_d(v):
        out = {}
        for k, c in v.items():
            for m in range(1, n + 1):
                x = d[m - 1][k - 1]
                if x != 0:
                    out[m] = out.get(m, 0) + c * x
        return {k: v for k, v in out.items() if v != 0}

    cols = [apply_d({j: Fraction(1)}) for j in range(1, n + 1)]
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            lhs = apply_d(full.get((i, j), {}))
            rhs = {}
            for k, v in t.apply(cols[i - 1], {j: Fraction(1)}).items():
                rhs[k] = rhs.get(k, 0) + v
            for k, v in t.apply({i: Fraction(1)}, cols[j - 1]).items():
                rhs[k] = rhs.get(k, 0) + v
            keys = set(lhs) | set(rhs)
            if any(lhs.get(k, 0) != rhs.get(k, 0) for k in keys):
                return False
    return True


def derivation_space(t):
    n = t.dim
    return DerivationSpace(n, kernel(leibniz_rows(t), n * n), t)


def compat_derivation_space(a):
    n = a.dim
    rows = leibniz_rows(a.bracket1) + leibniz_rows(a.bracket2)
    return DerivationSpace(n, kernel(rows, n * n), a)


def _diagonal_subspace(n):
    return Subspace.span_of_units(n * n, [_idx(n, i, i) for i in range(1, n + 1)])


def diagonal_derivations(space):
    return DerivationSpace(space.n, space.subspace & _diagonal_subspace(space.n), space.source)


def _adjoint(t, i):
    n = t.dim
    m = [[Fraction(0)] * n for _ in range(n)]
    for j in range(1, n + 1):
        for k, c in t.product(i, j).items():
            m[k - 1][j - 1] = c
    return m


def inner_derivations(t):
    """Span of ad(e_i): y -> [e_i, y]."""
    if isinstance(t, CompatAlgebra):
        raise TypeError("inner derivations are defined for a single bracket")
    n = t.dim
    return DerivationSpace(n, Subspace(n * n, [flatten(_adjoint(t, i)) for i in range(1, n + 1)]), t)


def outer_dimension(t):
    return derivation_space(t).dim - inner_derivations(t).dim


def matrix_is_nilpotent(m):
    n = len(m)
    if n == 0:
        return True
    p = [list(r) for r in m]
    k = 1
    while k < n:
        p = matmul(p, p)
        k *= 2
    return all(x == 0 for r in p for x in r)


def charpoly(m):
    """Coefficients [c_n, ..., c_0] of det(t I - m) by the Faddeev-LeVerrier recursion.

    Entries may be Poly scalars; only division by integers is used.
    """
    n = len(m)
    coeffs = [Fraction(1)]
    M = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        AM = matmul(m, M)
        M = [[AM[r][s] + (c if r == s else 0) for s in range(n)] for r in range(n)]
        AM = matmul(m, M)
        tr = sum((AM[r][r] for r in range(n)), Fraction(0))
        c = -tr / k
        coeffs.append(c)
    return coeffs


def generic_element(space, prefix="p"):
    """Sum of p_i * d_i over the canonical basis, with fresh parameters p_1, p_2, ..."""
    n = space.n
    g = [[Fraction(0)] * n for _ in range(n)]
    for idx, d in enumerate(space.basis, start=1):
        p = var(f"{prefix}{idx}")
        for r in range(n):
            for s in range(n):
                if d[r][s] != 0:
                    g[r][s] = g[r][s] + p * d[r][s]
    return g


def space_is_nil(space):
    """True iff every element of the space is nilpotent (generic characteristic polynomial is t^n)."""
    if space.dim == 0:
        return True
    cp = charpoly(generic_element(space))
    return all(c == 0 for c in cp[1:])


# -- univariate helpers over Q (coefficients highest degree first) ------------

def _trim(p):
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def _polydivmod(a, b):
    a, b = _trim(list(a)), _trim(list(b))
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    r = list(a)
    for i in range(len(q)):
        f = r[i] / b[0]
        q[i] = f
        for j, y in enumerate(b):
            r[i + j] -= f * y
    return q, _trim(r[len(q):] or [Fraction(0)])


def _polygcd(a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while not (len(b) == 1 and b[0] == 0):
        _, r = _polydivmod(a, b)
        a, b = b, r
    return [x / a[0] for x in a]


def minimal_polynomial(m):
    """Monic minimal polynomial of a rational matrix, highest degree first."""
    n = len(m)
    if any(isinstance(x, Poly) for r in m for x in r):
        raise ParametricError("minimal polynomial needs a rational matrix")
    powers = [flatten(identity(n))]
    P = identity(n)
    for k in range(1, n + 1):
        P = matmul(P, m)
        powers.append(flatten(P))
        cols = [[powers[j][r] for j in range(k + 1)] for r in range(n * n)]
        ker = kernel(cols, k + 1)
        if ker.dim:
            v = ker.basis[0]
            top = max(j for j, x in enumerate(v) if x != 0)
            coeffs = [v[j] / v[top] for j in range(top, -1, -1)]
            return coeffs
    raise AssertionError("Cayley-Hamilton bound exceeded")


def is_semisimple(m):
    """Squarefree minimal polynomial: gcd with its derivative is constant."""
    p = minimal_polynomial(m)
    deg = len(p) - 1
    if deg <= 1:
        return True
    dp = [c * (deg - i) for i, c in enumerate(p[:-1])]
    return len(_polygcd(p, dp)) == 1
