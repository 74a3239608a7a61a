"""Series, center, ideals and the special-ideal / nilradical checks.

Commutators of subspaces always use both brackets: [S, T] is the span of
[s, t]_1 and [s, t]_2 over basis vectors.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import BracketTensor, CompatAlgebra
from .linalg import Subspace, kernel

__all__ = [
    "SeriesResult",
    "NotIdealError",
    "NotSolvableError",
    "commutator_subspace",
    "lower_central_series",
    "derived_series",
    "is_nilpotent",
    "is_solvable",
    "nilindex",
    "center",
    "is_ideal",
    "is_subalgebra",
    "ideal_generated_by",
    "ideal_series",
    "ideal_is_nilpotent",
    "subalgebra_is_nilpotent",
    "default_witness_family",
    "is_special_ideal_against",
    "is_special_nilpotent_ideal",
    "verify_nilradical",
    "complement_units",
    "quotient",
    "restrict",
    "span",
]


class NotIdealError(ValueError):
    pass


class NotSolvableError(ValueError):
    pass


@dataclass
class SeriesResult:
    """Terms of a descending series; term 0 is the whole algebra.

    The last term appears twice to show that the series has stabilized.
    ``index`` is the first k with a zero term, or None.
    """

    terms: list
    stabilized: bool
    index: int = None

    @property
    def dims(self):
        return [t.dim for t in self.terms]

    @property
    def reaches_zero(self):
        return self.index is not None


def _units(v):
    return {c + 1: x for c, x in v.items()}


def _basis1(S):
    return [_units(r) for r in S.sparse_basis()]


def _from1(v):
    return {k - 1: x for k, x in v.items()}


def span(n, vectors):
    return Subspace(n, vectors)


def _check(a, *subs):
    a.require_rational("structure computations")
    for S in subs:
        if S.ambient_dim != a.dim:
            from .linalg import DimensionError
            raise DimensionError(f"subspace of ambient dimension {S.ambient_dim} in a {a.dim}-dimensional algebra")


def commutator_subspace(a, S, T, which=None):
    """[S, T]_1 + [S, T]_2, or the span of one bracket when ``which`` is 1 or 2."""
    _check(a, S, T)
    rows = []
    bs, bt = _basis1(S), _basis1(T)
    tensors = (a.bracket1, a.bracket2) if which is None else (a.bracket(which),)
    for t in tensors:
        if t.is_zero():
            continue
        for s in bs:
            for u in bt:
                v = t.apply(s, u)
                if v:
                    rows.append(_from1(v))
    return Subspace.from_sparse(a.dim, rows)


def _series(step, start, limit):
    terms = [start]
    while True:
        nxt = step(terms[-1])
        terms.append(nxt)
        if nxt == terms[-2] or len(terms) > limit:
            break
    index = next((k for k, t in enumerate(terms) if t.dim == 0), None)
    return SeriesResult(terms, terms[-1] == terms[-2], index)


def lower_central_series(a):
    """C^0 = L, C^{k+1} = [L, C^k]."""
    L = Subspace.full(a.dim)
    return _series(lambda C: commutator_subspace(a, L, C), L, a.dim + 2)


def derived_series(a):
    """D^0 = L, D^{k+1} = [D^k, D^k]."""
    return _series(lambda D: commutator_subspace(a, D, D), Subspace.full(a.dim), a.dim + 2)


def is_nilpotent(a):
    return lower_central_series(a).reaches_zero


def is_solvable(a):
    return derived_series(a).reaches_zero


def nilindex(a):
    """Smallest k with C^k = 0 (an abelian algebra has nilindex 1), or None."""
    return lower_central_series(a).index


def center(a):
    """Vectors x with [x, e_j]_1 = [x, e_j]_2 = 0 for all j."""
    _check(a)
    rows = []
    n = a.dim
    for t in (a.bracket1, a.bracket2):
        full = t.full()
        # coefficient of e_k in [x, e_j] = sum_i x_i c_{ij}^k
        for j in range(1, n + 1):
            eq = {}
            for i in range(1, n + 1):
                for k, c in full.get((i, j), {}).items():
                    eq.setdefault(k, {})[i - 1] = c
            rows.extend(eq.values())
    return kernel(rows, n)


def is_ideal(a, S):
    L = Subspace.full(a.dim)
    return commutator_subspace(a, S, L).is_subspace_of(S)


def is_subalgebra(a, S):
    return commutator_subspace(a, S, S).is_subspace_of(S)


def ideal_generated_by(a, vectors):
    """Smallest ideal containing the given (dense) vectors."""
    S = Subspace(a.dim, vectors)
    L = Subspace.full(a.dim)
    while True:
        T = S + commutator_subspace(a, S, L)
        if T == S:
            return S
        S = T


def ideal_series(a, I):
    """C^0(I) = I, C^{k+1}(I) = [I, C^k(I)]."""
    return _series(lambda C: commutator_subspace(a, I, C), I, I.dim + 2)


def ideal_is_nilpotent(a, I):
    return ideal_series(a, I).reaches_zero


subalgebra_is_nilpotent = ideal_is_nilpotent


def _require_ideal(a, I, what="subspace"):
    if not is_ideal(a, I):
        raise NotIdealError(f"{what} is not an ideal")


def _random_vector(rng, n):
    return [Fraction(rng.randint(-3, 3)) for _ in range(n)]


def default_witness_family(a, I=None, n_random=25, seed=0):
    """L, the lower central and derived terms, the center, I itself and random generated ideals."""
    fam = []

    def push(S):
        if S not in fam:
            fam.append(S)

    push(Subspace.full(a.dim))
    for t in lower_central_series(a).terms:
        push(t)
    for t in derived_series(a).terms:
        push(t)
    push(center(a))
    if I is not None:
        push(I)
    rng = random.Random(seed)
    for _ in range(n_random):
        k = rng.randint(1, 2)
        push(ideal_generated_by(a, [_random_vector(rng, a.dim) for _ in range(k)]))
    return fam


def is_special_ideal_against(a, I, witnesses):
    """True iff [[I, J]] is an ideal for every J in ``witnesses``."""
    _require_ideal(a, I)
    for J in witnesses:
        _require_ideal(a, J, "witness")
    return all(is_ideal(a, commutator_subspace(a, I, J)) for J in witnesses)


def is_special_nilpotent_ideal(a, I, n_random=25, seed=0):
    _require_ideal(a, I)
    fam = default_witness_family(a, I, n_random, seed)
    return is_special_ideal_against(a, I, fam) and ideal_is_nilpotent(a, I)


def complement_units(S):
    """Unit vectors at the non-pivot coordinates of S (a complement chosen by RREF pivots)."""
    piv = set(S.pivots)
    out = []
    for c in range(S.ambient_dim):
        if c not in piv:
            v = [Fraction(0)] * S.ambient_dim
            v[c] = Fraction(1)
            out.append(v)
    return out


def verify_nilradical(a, N, n_random=25, seed=0):
    """Certificate that N is the special nilradical of a solvable algebra.

    N must be a special nilpotent ideal, and adjoining any complement basis
    vector must give a non-nilpotent subalgebra.
    """
    if not is_solvable(a):
        raise NotSolvableError("verify_nilradical needs a solvable algebra")
    if not is_ideal(a, N):
        return False
    if not is_special_nilpotent_ideal(a, N, n_random, seed):
        return False
    for x in complement_units(N):
        S = N + Subspace(a.dim, [x])
        if not is_subalgebra(a, S):
            continue
        if subalgebra_is_nilpotent(a, S):
            return False
    return True


def _reindex(t, coords_of, m):
    """Rebuild a tensor on m new basis vectors from images under ``coords_of``."""
    table = {}
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            v = coords_of(i, j, t)
            if v:
                table[(i, j)] = v
    return BracketTensor(m, table)


def quotient(a, Z):
    """a / Z on the complement spanned by non-pivot unit vectors (Z must be an ideal)."""
    _require_ideal(a, Z)
    keep = [c + 1 for c in range(a.dim) if c not in set(Z.pivots)]
    pos = {old: new for new, old in enumerate(keep, start=1)}

    def coords(i, j, t):
        v = t.product(keep[i - 1], keep[j - 1])
        if not v:
            return {}
        r = Z.reduce_sparse(_from1(v))
        return {pos[c + 1]: x for c, x in r.items()}

    labels = tuple(a.labels[k - 1] for k in keep)
    m = len(keep)
    return CompatAlgebra(m, _reindex(a.bracket1, coords, m), _reindex(a.bracket2, coords, m), labels)


def restrict(a, S):
    """Subalgebra S with structure constants in its canonical RREF basis."""
    if not is_subalgebra(a, S):
        raise ValueError("subspace is not closed under both brackets")
    basis = _basis1(S)
    piv = S.pivots

    def coords(i, j, t):
        v = t.apply(basis[i - 1], basis[j - 1])
        return {k + 1: v.get(p + 1) for k, p in enumerate(piv) if v.get(p + 1)}

    m = S.dim
    return CompatAlgebra(m, _reindex(a.bracket1, coords, m), _reindex(a.bracket2, coords, m))
