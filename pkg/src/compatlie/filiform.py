"""Filiform detection, adapted bases, associated graded algebras and the
7-dimensional graded family check.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import BracketTensor, CompatAlgebra, IdentityReport, JacobiError, check_compatibility, extract_constraints
from .constraints import canonical_equation, reduce_constraints
from .families import SeriesSpec, make_paper_example
from .linalg import Subspace
from .scalar import parse_scalar, partial_substitute
from .structure import lower_central_series

__all__ = [
    "AdaptedBasis",
    "AdaptedBasisError",
    "is_filiform",
    "adapted_basis",
    "change_basis",
    "associated_graded",
    "is_graded",
    "GRADED7_CONSTRAINTS",
    "GradedClassification",
    "verify_graded_7dim_classification",
    "homogeneous_relations",
]


class AdaptedBasisError(RuntimeError):
    def __init__(self, msg, seed):
        super().__init__(f"{msg} (seed {seed})")
        self.seed = seed


def is_filiform(a):
    """Nilpotent with dim C^0 = n+1 and dim C^k = n-k for 1 <= k <= n."""
    a.require_rational("is_filiform")
    if a.dim < 2:
        return False
    n = a.dim - 1
    dims = lower_central_series(a).dims
    want = [n + 1] + [n - k for k in range(1, n + 1)]
    return dims[: len(want)] == want and dims[-1] == 0


@dataclass
class AdaptedBasis:
    """Basis vectors e_0..e_n (dense, in the original coordinates), the
    series (n_1..n_t), which bracket carries each step, and whether the
    brackets were swapped first.
    """

    basis_vectors: list
    series: SeriesSpec
    block_assignment: list
    swapped: bool = False
    seed: int = 0
    attempts: int = 1


def _sparse1(v):
    return {i + 1: Fraction(x) for i, x in enumerate(v) if x != 0}


def _dense(v, n):
    out = [Fraction(0)] * n
    for k, x in v.items():
        out[k - 1] = x
    return out


def _rand_vec(rng, M):
    while True:
        c = [Fraction(rng.randint(-5, 5)) for _ in M]
        if any(c):
            return [sum((ci * m[k] for ci, m in zip(c, M)), Fraction(0)) for k in range(len(M[0]))]


def _try_chain(a, series, e0, e1):
    N = a.dim
    chain = [e1]
    steps = []
    for i in range(1, N - 1):
        v = _sparse1(chain[-1])
        nxt = series[i + 1]  # C^{i+1}: images must survive modulo this
        picked = None
        for which, t in ((1, a.bracket1), (2, a.bracket2)):
            w = t.apply(_sparse1(e0), v)
            if w and not nxt.contains_sparse({k - 1: x for k, x in w.items()}):
                picked = (which, _dense(w, N))
                break
        if picked is None:
            return None
        steps.append(picked[0])
        chain.append(picked[1])
    return steps, [e0] + chain


def adapted_basis(a, seed=0, retries=64):
    """Adapted basis by seeded random choice of e_0, e_1 in a complement of C^1.

    Each step takes bracket 1 when [e_0, e_i]_1 survives modulo the next
    lower central term, else bracket 2.  A final block of length one carries
    no product, so the series comes back with its last entry merged into the
    previous block: L_(1,1,1,1) and L_(1,1,2) are the same algebra.
    """
    if not is_filiform(a):
        raise ValueError("adapted_basis needs a filiform algebra")
    rng = random.Random(seed)
    swapped = False
    work = a
    C = lower_central_series(a).terms
    M = [v for v in _complement_rows(C[0], C[1])]
    for attempt in range(1, retries + 1):
        e0, e1 = _rand_vec(rng, M), _rand_vec(rng, M)
        if Subspace(a.dim, [e0, e1]).dim < 2:
            continue
        got = _try_chain(work, C, e0, e1)
        if got is None:
            continue
        steps, vecs = got
        if steps and steps[0] == 2 and not swapped:
            work, swapped = a.swapped(), True
            got = _try_chain(work, C, e0, e1)
            if got is None:
                continue
            steps, vecs = got
        if not _pattern_holds(work, vecs, steps):
            continue
        runs = []
        for s in steps:
            if runs and runs[-1][0] == s:
                runs[-1][1] += 1
            else:
                runs.append([s, 1])
        if runs:
            runs[-1][1] += 1
        lengths = tuple(r[1] for r in runs) or (1,)
        return AdaptedBasis(vecs, SeriesSpec(lengths), steps, swapped, seed, attempt)
    raise AdaptedBasisError("no adapted basis found within the retry budget", seed)


def change_basis(a, vectors, labels=None):
    """Structure constants of ``a`` in the basis given by dense ``vectors``."""
    N = a.dim
    S = Subspace(N, vectors)
    if S.dim != N:
        raise ValueError("vectors do not form a basis")
    # solve coordinates with an augmented elimination: columns are the new basis
    from .linalg import kernel

    def coords(w):
        cols = [[vectors[j][r] for j in range(N)] + [-w[r]] for r in range(N)]
        ker = kernel(cols, N + 1)
        v = ker.basis[0]
        return [x / v[N] for x in v[:N]]

    tabs = []
    sp = [_sparse1(v) for v in vectors]
    for t in (a.bracket1, a.bracket2):
        table = {}
        for i in range(N):
            for j in range(i + 1, N):
                w = t.apply(sp[i], sp[j])
                if w:
                    c = coords(_dense(w, N))
                    table[(i + 1, j + 1)] = {k + 1: x for k, x in enumerate(c) if x != 0}
        tabs.append(BracketTensor(N, table))
    return CompatAlgebra(N, tabs[0], tabs[1], labels)


def _pattern_holds(a, vecs, steps):
    """Block products and e_i in C^{i-1}, checked in the new basis."""
    b = change_basis(a, vecs)
    C = lower_central_series(b).terms
    N = b.dim
    for i in range(2, N):
        unit = [Fraction(0)] * N
        unit[i] = Fraction(1)
        if not C[i - 1].contains(unit):
            return False
    for i, which in enumerate(steps, start=1):
        t = b.bracket(which)
        if t.product(1, i + 1) != {i + 2: 1}:
            return False
        if which == 2:
            if b.bracket1.product(1, i + 1) or b.bracket1.product(2, i + 1):
                return False
    return True


def _complement_rows(big, small):
    piv = set(small.pivots)
    return [list(row) for row, p in zip(big.basis, big.pivots) if p not in piv]


def associated_graded(a):
    """Graded algebra on the quotients C^{d-1}/C^d, d = 1, 2, ...

    Degree-d basis: rows of RREF(C^{d-1}) whose pivots are not pivots of
    C^d; each keeps the label of its pivot coordinate.
    """
    s = lower_central_series(a)
    if not s.reaches_zero:
        raise ValueError("associated_graded needs a nilpotent algebra")
    C = s.terms
    depth = s.index
    basis, degree, labels = [], [], []
    for d in range(1, depth + 1):
        piv = set(C[d].pivots)
        for row, p in zip(C[d - 1].basis, C[d - 1].pivots):
            if p not in piv:
                basis.append(_sparse1(row))
                degree.append(d)
                labels.append(a.labels[p])
    N = len(basis)
    start = {}
    for idx, d in enumerate(degree):
        start.setdefault(d, idx)

    def project(w, d):
        """Coordinates of w (in C^{d-1}) modulo C^d on the degree-d basis."""
        if d > depth:
            return {}
        r = C[d].reduce_sparse({k - 1: x for k, x in w.items()})
        out = {}
        for off, p in enumerate(pv for pv in C[d - 1].pivots if pv not in set(C[d].pivots)):
            x = r.get(p)
            if x:
                out[start[d] + off + 1] = x
        return out

    tabs = []
    for t in (a.bracket1, a.bracket2):
        table = {}
        for i in range(N):
            for j in range(i + 1, N):
                w = t.apply(basis[i], basis[j])
                if w:
                    v = project(w, degree[i] + degree[j])
                    if v:
                        table[(i + 1, j + 1)] = v
        tabs.append(BracketTensor(N, table))
    g = CompatAlgebra(N, tabs[0], tabs[1], tuple(labels))
    return _Graded(g, tuple(degree))


@dataclass
class _Graded:
    algebra: CompatAlgebra
    degrees: tuple

    def __getattr__(self, name):
        return getattr(self.algebra, name)


def is_graded(g, degrees):
    """Products of degrees i and j have support in degree i+j only."""
    alg = g.algebra if isinstance(g, _Graded) else g
    tensors = (alg,) if isinstance(alg, BracketTensor) else (alg.bracket1, alg.bracket2)
    for t in tensors:
        for (i, j), v in t.constants.items():
            if any(degrees[k - 1] != degrees[i - 1] + degrees[j - 1] for k in v):
                return False
    return True


def homogeneous_relations(a, seed=0):
    """Bracket-1 relations of a homogeneous basis X_0..X_n of gr(a).

    X_0, X_1 come from an adapted basis; when n_1 >= 2, X_1 is shifted by a
    multiple of X_0 so that [X_1, X_2] = 0.  Returns named booleans.
    """
    g = associated_graded(a).algebra
    ab = adapted_basis(g, seed)
    work = g.swapped() if ab.swapped else g
    n1 = ab.series.n_values[0]
    e0, e1 = ab.basis_vectors[0], ab.basis_vectors[1]
    if n1 >= 2 and work.dim > 3:
        x = change_basis(work, ab.basis_vectors).bracket1.product(2, 3).get(4, 0)
        e1 = [u - x * v for u, v in zip(e1, e0)]
    got = _try_chain(work, lower_central_series(work).terms, e0, e1)
    if got is None:
        return {"chain": False, "chain_stops": False, "x1x2": False}
    b = change_basis(work, got[1])
    P = b.bracket1
    top = min(n1 + 1, b.dim - 1)
    out = {}
    out["chain"] = all(P.product(1, i + 1) == {i + 2: 1} for i in range(1, min(n1, top - 1) + 1))
    out["chain_stops"] = n1 + 1 > b.dim - 1 or not P.product(1, n1 + 2)
    out["x1x2"] = n1 < 2 or not P.product(2, 3)
    vanish, coeffs = True, {}
    for i in range(1, top + 1):
        for j in range(i + 1, top + 1):
            v = P.product(i + 1, j + 1)
            if i + j != n1 + 1:
                vanish = vanish and not v
            else:
                if set(v) - {n1 + 2}:
                    vanish = False
                coeffs[i] = v.get(n1 + 2, 0)
    out["off_diagonal_zero"] = vanish
    alpha = -coeffs.get(1, 0)
    out["alternating"] = all(c == (-1) ** i * alpha for i, c in coeffs.items())
    out["alpha_zero_if_odd"] = n1 % 2 == 0 or alpha == 0
    out["alpha"] = alpha
    return out


# -- the 7-dimensional graded family --------------------------------------------

GRADED7_CONSTRAINTS = {
    1: "a12 - a13",
    2: "a23 + a14 - a12 + delta*(a01 - a03)",
    3: "a24 + a15 + delta",
    4: "delta*a15",
    5: "a24 - delta",
    6: "a14",
    7: "a02*a12 - a12*a03",
    8: "a01*a23 - a12*a04",
}


@dataclass
class GradedClassification:
    """Outcome of the 7-dimensional graded check, claim by claim."""

    f1_compatible: bool
    f2_compatible: bool
    f2_residual: list
    constraint_match: dict
    delta_one: object
    delta_zero: object
    lambda_zero: object
    lambda_nonzero: object
    extracted: object = None
    notes: list = field(default_factory=list)

    @property
    def holds(self):
        return self.as_report().holds

    def as_report(self):
        w = []
        if not self.f1_compatible:
            w.append(("F1", "compatibility", None))
        if not self.f2_compatible:
            w.append(("F2", "compatibility", self.f2_residual))
        for k, how in self.constraint_match.items():
            if how is None:
                w.append((f"constraint ({k})", "missing", GRADED7_CONSTRAINTS[k]))
        if self.delta_one.status != "inconsistent":
            w.append(("delta=1", "branch", self.delta_one.status))
        if self.lambda_nonzero.status == "inconsistent":
            w.append(("lambda!=0", "branch", "inconsistent"))
        return IdentityReport(not w, w, len(w), "graded7")


def _match(extracted, eq, subst):
    target = canonical_equation(partial_substitute(eq, subst))
    if target == 0:
        return True
    for e in extracted:
        if canonical_equation(partial_substitute(e, subst)) == target:
            return True
    return False


def verify_graded_7dim_classification():
    a = make_paper_example("graded7")
    c = extract_constraints(a)
    sig1 = {"a13": parse_scalar("a12")}
    after_delta = {**sig1, "delta": 0, "a24": 0, "a15": 0}
    after_six = {**after_delta, "a14": 0}
    match = {}
    for k, text in GRADED7_CONSTRAINTS.items():
        eq = parse_scalar(text)
        if eq in c or canonical_equation(eq) in c.origins:
            match[k] = "verbatim"
        elif _match(c.equations, eq, sig1):
            match[k] = "modulo (1)"
        elif _match(c.equations, eq, after_delta):
            match[k] = "after delta=0"
        elif _match(c.equations, eq, after_six):
            match[k] = "after delta=0 and (6)"
        else:
            match[k] = None
    d1 = reduce_constraints(c.substitute({"delta": 1}),
                            prefer=[parse_scalar("a24 - delta"), parse_scalar("a24 + a15 + delta")])
    d0 = reduce_constraints(c.substitute({"delta": 0}))
    lam0 = reduce_constraints(c.substitute({"delta": 0, "a12": 0}))
    lam1 = reduce_constraints(c.substitute({"delta": 0}), nonzero={"a12"})

    def compat(alg):
        try:
            rep = check_compatibility(alg)
            return rep.holds, []
        except JacobiError as err:
            return False, err.report.witnesses

    f1_ok, _ = compat(make_paper_example("F1"))
    f2_ok, f2_w = compat(make_paper_example("F2"))
    return GradedClassification(f1_ok, f2_ok, f2_w, match, d1, d0, lam0, lam1, c)
