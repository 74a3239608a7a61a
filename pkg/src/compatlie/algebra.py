"""Compatible Lie algebras given by two structure-constant tensors.

Basis indices are 1-based throughout (``e_1 .. e_n``); internally a vector is
a sparse ``dict`` index -> scalar.  Public functions that take or return
vectors use plain lists of length ``dim`` where position ``i - 1`` holds the
``e_i`` coordinate.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .constraints import ConstraintSet, Origin
from .scalar import Poly, as_scalar, natural_key, partial_substitute, substitute

__all__ = [
    "BracketTensor",
    "TwoCochain",
    "CompatAlgebra",
    "IdentityReport",
    "JacobiError",
    "ParametricError",
    "vec_add",
    "vec_scale",
    "to_sparse",
    "to_dense",
    "bracket_apply",
    "circle",
    "jacobiator",
    "check_jacobi",
    "mixed_jacobiator",
    "check_compatibility",
    "pencil",
    "adjoint_operator",
    "extract_constraints",
    "residual_report",
]

MAX_WITNESSES = 32


class JacobiError(ValueError):
    """A bracket that must be a Lie bracket fails the Jacobi identity."""

    def __init__(self, which, report):
        super().__init__(f"bracket{which} does not satisfy the Jacobi identity")
        self.which = which
        self.report = report


class ParametricError(ValueError):
    """An operation that needs rational data received parameters."""


# -- sparse vectors -----------------------------------------------------------

def vec_add(acc, v, c=1):
    """acc += c*v in place (sparse dicts)."""
    for k, x in v.items():
        s = acc.get(k, 0) + c * x
        if s == 0:
            acc.pop(k, None)
        else:
            acc[k] = s
    return acc


def vec_scale(v, c):
    if c == 0:
        return {}
    return {k: x * c for k, x in v.items()}


def to_sparse(v):
    return {i + 1: as_scalar(x) for i, x in enumerate(v) if as_scalar(x) != 0}


def to_dense(v, n):
    out = [Fraction(0)] * n
    for k, x in v.items():
        out[k - 1] = x
    return out


class BracketTensor:
    """Antisymmetric bilinear product on Q^dim (or Q[params]^dim).

    ``constants`` maps pairs ``(i, j)`` with ``i < j`` to ``{k: c}`` meaning
    ``[e_i, e_j] = sum c e_k``.  Pairs given with ``i > j`` are negated into
    place; ``i == j`` entries are rejected.
    """

    __slots__ = ("dim", "constants", "_full")

    def __init__(self, dim, constants=None):
        self.dim = int(dim)
        table = {}
        for (i, j), out in (constants or {}).items():
            if not (1 <= i <= dim and 1 <= j <= dim):
                raise IndexError(f"pair ({i}, {j}) out of range for dimension {dim}")
            if i == j:
                if any(as_scalar(c) != 0 for c in out.values()):
                    raise ValueError(f"[e{i}, e{i}] must vanish")
                continue
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            row = table.setdefault((i, j), {})
            for k, c in out.items():
                if not 1 <= k <= dim:
                    raise IndexError(f"index {k} out of range for dimension {dim}")
                vec_add(row, {k: as_scalar(c)}, sign)
        self.constants = {p: r for p, r in sorted(table.items()) if r}
        self._full = None

    @classmethod
    def from_products(cls, dim, products):
        """Accumulate ``(i, j, k, c)`` records: [e_i, e_j] += c e_k."""
        table = {}
        for i, j, k, c in products:
            if i == j:
                continue
            key, sign = ((i, j), 1) if i < j else ((j, i), -1)
            vec_add(table.setdefault(key, {}), {k: as_scalar(c)}, sign)
        return cls(dim, table)

    @classmethod
    def zero(cls, dim):
        return cls(dim)

    def full(self):
        if self._full is None:
            f = {}
            for (i, j), r in self.constants.items():
                f[(i, j)] = r
                f[(j, i)] = {k: -c for k, c in r.items()}
            self._full = f
        return self._full

    def product(self, i, j):
        """[e_i, e_j] as a sparse dict (do not mutate)."""
        return self.full().get((i, j), {})

    def apply(self, x, y):
        """Bracket of two sparse vectors."""
        out = {}
        full = self.full()
        for i, a in x.items():
            for j, b in y.items():
                r = full.get((i, j))
                if r:
                    vec_add(out, r, a * b)
        return out

    def apply_basis(self, x, j):
        """[x, e_j] for sparse x."""
        out = {}
        full = self.full()
        for i, a in x.items():
            r = full.get((i, j))
            if r:
                vec_add(out, r, a)
        return out

    # -- algebra of tensors ------------------------------------------------
    def __add__(self, other):
        self._same_dim(other)
        t = {p: dict(r) for p, r in self.constants.items()}
        for p, r in other.constants.items():
            vec_add(t.setdefault(p, {}), r)
        return BracketTensor(self.dim, t)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = as_scalar(c)
        return BracketTensor(self.dim, {p: vec_scale(r, c) for p, r in self.constants.items()})

    def _same_dim(self, other):
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __eq__(self, other):
        if not isinstance(other, BracketTensor):
            return NotImplemented
        return self.dim == other.dim and self.constants == other.constants

    def __hash__(self):
        return hash((self.dim, tuple((p, tuple(sorted(r.items()))) for p, r in self.constants.items())))

    def is_zero(self):
        return not self.constants

    def parameters(self):
        out = set()
        for r in self.constants.values():
            for c in r.values():
                if isinstance(c, Poly):
                    out |= c.variables()
        return out

    def is_parametric(self):
        return any(isinstance(c, Poly) for r in self.constants.values() for c in r.values())

    def substitute(self, assignment, partial=False):
        f = partial_substitute if partial else substitute
        return BracketTensor(self.dim, {p: {k: f(c, assignment) for k, c in r.items()}
                                        for p, r in self.constants.items()})

    def map_coefficients(self, fn):
        return BracketTensor(self.dim, {p: {k: fn(c) for k, c in r.items()} for p, r in self.constants.items()})

    def restrict_indices(self, keep):
        """Sub-tensor on the listed indices, renumbered 1..len(keep); images outside are dropped."""
        pos = {old: new for new, old in enumerate(keep, start=1)}
        t = {}
        for (i, j), r in self.constants.items():
            if i in pos and j in pos:
                t[(pos[i], pos[j])] = {pos[k]: c for k, c in r.items() if k in pos}
        return BracketTensor(len(keep), t)

    def items(self):
        return self.constants.items()

    def __repr__(self):
        return f"BracketTensor(dim={self.dim}, products={len(self.constants)})"


# A 2-cochain with adjoint coefficients is stored exactly like a bracket.
TwoCochain = BracketTensor


def _default_labels(n):
    return tuple(f"e{i}" for i in range(1, n + 1))


@dataclass(frozen=True)
class CompatAlgebra:
    """A vector space with two brackets; compatibility is checked, not assumed."""

    dim: int
    bracket1: BracketTensor
    bracket2: BracketTensor
    labels: tuple = None
    parameters: tuple = None

    def __post_init__(self):
        if self.bracket1.dim != self.dim or self.bracket2.dim != self.dim:
            raise ValueError("bracket dimensions do not match the algebra dimension")
        labels = tuple(self.labels) if self.labels is not None else _default_labels(self.dim)
        if len(labels) != self.dim:
            raise ValueError("one label per basis vector is required")
        if len(set(labels)) != len(labels):
            raise ValueError("basis labels must be distinct")
        object.__setattr__(self, "labels", labels)
        used = self.bracket1.parameters() | self.bracket2.parameters()
        if self.parameters is None:
            params = tuple(sorted(used, key=natural_key))
        else:
            params = tuple(self.parameters)
            undeclared = used - set(params)
            if undeclared:
                raise ValueError(f"undeclared parameters: {sorted(undeclared, key=natural_key)}")
        object.__setattr__(self, "parameters", params)

    @classmethod
    def from_tensors(cls, b1, b2=None, labels=None, parameters=None):
        b2 = BracketTensor.zero(b1.dim) if b2 is None else b2
        return cls(b1.dim, b1, b2, labels, parameters)

    def is_parametric(self):
        return self.bracket1.is_parametric() or self.bracket2.is_parametric()

    def bracket(self, which):
        if which in (1, "1"):
            return self.bracket1
        if which in (2, "2"):
            return self.bracket2
        raise ValueError("which must be 1 or 2")

    def swapped(self):
        return CompatAlgebra(self.dim, self.bracket2, self.bracket1, self.labels, self.parameters)

    def substitute(self, assignment, partial=False):
        b1 = self.bracket1.substitute(assignment, partial=True)
        b2 = self.bracket2.substitute(assignment, partial=True)
        if not partial:
            left = b1.parameters() | b2.parameters()
            if left:
                from .scalar import ParameterError
                raise ParameterError(sorted(left, key=natural_key)[0])
        params = tuple(p for p in self.parameters if p not in assignment)
        if not partial:
            params = ()
        return CompatAlgebra(self.dim, b1, b2, self.labels, None if partial else params)

    def sum_bracket(self):
        return self.bracket1 + self.bracket2

    def index(self, label):
        return self.labels.index(label) + 1

    def require_rational(self, what="this operation"):
        if self.is_parametric():
            raise ParametricError(f"{what} needs a parameter-free algebra; substitute first")


@dataclass
class IdentityReport:
    """Verdict of an identity check.

    ``witnesses`` lists ``(triple, coordinate, residual)`` for failures, in
    index order, truncated to ``max_witnesses``; ``count`` is the total.
    """

    holds: bool
    witnesses: list = field(default_factory=list)
    count: int = 0
    name: str = ""

    def __bool__(self):
        return self.holds


def bracket_apply(t, x, y):
    """[x, y] for dense vectors of length ``t.dim``."""
    if len(x) != t.dim or len(y) != t.dim:
        raise ValueError(f"vectors must have length {t.dim}")
    return to_dense(t.apply(to_sparse(x), to_sparse(y)), t.dim)


def circle(phi, psi):
    """(phi ∘ psi)(x,y,z) = phi(psi(x,y),z) + phi(psi(y,z),x) + phi(psi(z,x),y).

    Returned sparse: ``{(i,j,k): {m: c}}`` over i<j<k with nonzero values.
    The residual is alternating, so these triples determine it.
    """
    if phi.dim != psi.dim:
        raise ValueError("dimension mismatch")
    n = phi.dim
    pf = psi.full()
    out = {}
    for i, j, k in combinations(range(1, n + 1), 3):
        acc = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            v = pf.get((a, b))
            if v:
                vec_add(acc, phi.apply_basis(v, c))
        if acc:
            out[(i, j, k)] = acc
    return out


def _add_residuals(*parts):
    out = {}
    for r in parts:
        for key, v in r.items():
            vec_add(out.setdefault(key, {}), v)
    return {k: v for k, v in out.items() if v}


def jacobiator(t):
    """Jacobi residual J(e_i,e_j,e_k) for i<j<k (nonzero entries only)."""
    return circle(t, t)


def residual_report(residual, name="", max_witnesses=MAX_WITNESSES):
    witnesses = []
    count = 0
    for key in sorted(residual):
        for m in sorted(residual[key]):
            count += 1
            if len(witnesses) < max_witnesses:
                witnesses.append((key, m, residual[key][m]))
    return IdentityReport(holds=count == 0, witnesses=witnesses, count=count, name=name)


def check_jacobi(t, max_witnesses=MAX_WITNESSES):
    return residual_report(jacobiator(t), "jacobi", max_witnesses)


def mixed_jacobiator(a):
    """The six-term mixed residual L(e_i,e_j,e_k), i<j<k."""
    return _add_residuals(circle(a.bracket2, a.bracket1), circle(a.bracket1, a.bracket2))


def check_compatibility(a, max_witnesses=MAX_WITNESSES):
    """Mixed Jacobi identity; raises :class:`JacobiError` if a bracket is not Lie."""
    for which in (1, 2):
        rep = check_jacobi(a.bracket(which), max_witnesses)
        if not rep.holds:
            raise JacobiError(which, rep)
    return residual_report(mixed_jacobiator(a), "mixed", max_witnesses)


def pencil(a, l1, l2):
    """l1*[,]_1 + l2*[,]_2; ``l1``/``l2`` may be numbers, expressions or parameter names."""
    return a.bracket1.scale(as_scalar(l1)) + a.bracket2.scale(as_scalar(l2))


def adjoint_operator(a, which, x):
    """Matrix of y -> [x, y] in bracket ``which``; column j is [x, e_j]."""
    xs = to_sparse(x)
    if any(isinstance(c, Poly) for c in xs.values()):
        raise ParametricError("adjoint_operator needs a rational vector")
    t = a.bracket(which)
    if t.is_parametric():
        raise ParametricError("adjoint_operator needs a parameter-free bracket")
    n = a.dim
    m = [[Fraction(0)] * n for _ in range(n)]
    for j in range(1, n + 1):
        col = t.apply(xs, {j: Fraction(1)})
        for k, c in col.items():
            m[k - 1][j - 1] = c
    return m


def extract_constraints(a):
    """Coefficient equations of both Jacobi residuals and the mixed residual."""
    pairs = []
    for name, res in (("jacobi1", jacobiator(a.bracket1)),
                      ("jacobi2", jacobiator(a.bracket2)),
                      ("mixed", mixed_jacobiator(a))):
        for key in sorted(res):
            for m in sorted(res[key]):
                c = res[key][m]
                pairs.append((c, Origin(name, key, m, c)))
    return ConstraintSet.from_pairs(pairs)
