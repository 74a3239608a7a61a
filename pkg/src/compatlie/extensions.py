"""Solvable extensions N + span{z_1..z_r}: condition checks, semidirect assembly,
torus extensions and parametric probes that feed the constraint reducer.

A generator z acts through two n x n matrices: column j of D1 is [e_j, z]_1 and
column j of D2 is [e_j, z]_2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    BracketTensor,
    CompatAlgebra,
    IdentityReport,
    check_compatibility,
    extract_constraints,
    vec_add,
)
from .constraints import ConstraintSet, Origin, reduce_constraints
from .derivations import compat_derivation_space, derivation_space, diagonal_derivations, leibniz_rows
from .linalg import Subspace, flatten, kernel
from .scalar import as_scalar, var
from .structure import verify_nilradical

__all__ = [
    "ExtensionSpec",
    "ExtensionError",
    "ConstraintSet",
    "Origin",
    "reduce_constraints",
    "check_extension_conditions",
    "assemble",
    "build_semidirect",
    "torus_extension",
    "generic_extension",
    "derivation_ansatz",
    "displayed_derivation_form",
    "nonexistence_probe",
    "ProbeResult",
    "run_branches",
]


class ExtensionError(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


def _images(D, n):
    """Column images {j: {k: c}} from a matrix (list of rows) or an image dict."""
    if isinstance(D, dict):
        return {j: {k: as_scalar(c) for k, c in v.items() if as_scalar(c) != 0} for j, v in D.items()}
    if D is None:
        return {}
    if len(D) != n or any(len(r) != n for r in D):
        raise ValueError(f"action matrices must be {n} x {n}")
    out = {}
    for k in range(n):
        for j in range(n):
            c = as_scalar(D[k][j])
            if c != 0:
                out.setdefault(j + 1, {})[k + 1] = c
    return out


def _apply(img, v):
    out = {}
    for j, c in v.items():
        col = img.get(j)
        if col:
            vec_add(out, col, c)
    return out


@dataclass
class ExtensionSpec:
    """Base algebra plus generators ``(label, D1, D2)``.

    ``generator_brackets`` is an optional pair of dicts keyed by generator
    index pairs (1-based, p < q) with sparse values over the extended basis.
    """

    base: CompatAlgebra
    generators: list = field(default_factory=list)
    generator_brackets: tuple = None

    @property
    def r(self):
        return len(self.generators)


def _defect(t, img):
    """D[e_i,e_j] - [D e_i, e_j] - [e_i, D e_j] for i < j (sparse, nonzero only)."""
    n = t.dim
    out = {}
    for i in range(1, n + 1):
        di = img.get(i, {})
        for j in range(i + 1, n + 1):
            dj = img.get(j, {})
            acc = dict(_apply(img, t.product(i, j)))
            if di:
                vec_add(acc, t.apply(di, {j: Fraction(1)}), -1)
            if dj:
                vec_add(acc, t.apply({i: Fraction(1)}, dj), -1)
            if acc:
                out[(i, j)] = acc
    return out


def check_extension_conditions(spec, max_witnesses=32):
    """Leibniz for D1 on bracket1, D2 on bracket2, and the mixed condition.

    Witnesses are ``((i, j, z), coordinate, residual, condition)``.
    """
    base = spec.base
    n = base.dim
    witnesses, count = [], 0
    for z, (label, D1, D2) in enumerate(spec.generators, start=1):
        i1, i2 = _images(D1, n), _images(D2, n)
        d11 = _defect(base.bracket1, i1)
        d22 = _defect(base.bracket2, i2)
        mixed = {}
        for part in (_defect(base.bracket2, i1), _defect(base.bracket1, i2)):
            for key, v in part.items():
                vec_add(mixed.setdefault(key, {}), v)
        for cond, res in ((1, d11), (2, d22), (3, mixed)):
            for (i, j) in sorted(res):
                for m in sorted(res[(i, j)]):
                    count += 1
                    if len(witnesses) < max_witnesses:
                        witnesses.append(((i, j, n + z), m, res[(i, j)][m], cond))
    return IdentityReport(count == 0, witnesses, count, "extension")


def assemble(spec, labels=None, parameters=None):
    """Structure constants of N + span{z} without any checks."""
    base = spec.base
    n, r = base.dim, spec.r
    m = n + r
    tables = [{p: dict(v) for p, v in base.bracket1.constants.items()},
              {p: dict(v) for p, v in base.bracket2.constants.items()}]
    for z, (label, D1, D2) in enumerate(spec.generators, start=1):
        for which, D in ((0, D1), (1, D2)):
            for j, col in _images(D, n).items():
                if col:
                    tables[which][(j, n + z)] = dict(col)
    if spec.generator_brackets:
        for which, gb in enumerate(spec.generator_brackets):
            for (p, q), v in (gb or {}).items():
                v = {k: as_scalar(c) for k, c in v.items() if as_scalar(c) != 0}
                if v:
                    key, sign = ((n + p, n + q), 1) if p < q else ((n + q, n + p), -1)
                    vec_add(tables[which].setdefault(key, {}), v, sign)
    if labels is None:
        labels = tuple(base.labels) + tuple(g[0] for g in spec.generators)
    return CompatAlgebra(m, BracketTensor(m, tables[0]), BracketTensor(m, tables[1]), labels, parameters)


def build_semidirect(spec):
    """Checked semidirect product; raises ExtensionError with the offending triple."""
    if not spec.generators:
        return spec.base
    rep = check_extension_conditions(spec)
    if not rep.holds:
        (i, j, z), m, res, cond = rep.witnesses[0]
        raise ExtensionError(f"condition ({cond}) fails on (e{i}, e{j}, z) at e{m}", rep.witnesses[0])
    a = assemble(spec)
    full = check_compatibility(a)
    if not full.holds:
        raise ExtensionError(f"mixed identity fails at {full.witnesses[0][0]}", full.witnesses[0])
    return a


def torus_extension(base, D=(), Dp=(), verify=True):
    """x_i act by d_i in bracket 1 only, y_j by d'_j in bracket 2 only; no brackets among them."""
    D, Dp = list(D), list(Dp)
    if not D and not Dp:
        return base
    n = base.dim
    torus = diagonal_derivations(compat_derivation_space(base))
    for group in (D, Dp):
        for d in group:
            if not torus.contains(d):
                raise ExtensionError("action is not in the diagonal torus of the base")
        if Subspace(n * n, [flatten(d) for d in group]).dim != len(group):
            raise ExtensionError("actions in one group must be linearly independent")
    zero = [[0] * n for _ in range(n)]
    gens = [(f"x{i}", d, zero) for i, d in enumerate(D, start=1)]
    gens += [(f"y{j}", zero, d) for j, d in enumerate(Dp, start=1)]
    a = build_semidirect(ExtensionSpec(base, gens))
    if verify and not verify_nilradical(a, Subspace.span_of_units(a.dim, range(n))):
        raise ExtensionError("base is not certified as the nilradical")
    return a


# -- parametric ansatz ---------------------------------------------------------

def displayed_derivation_form(kind, n, head="alpha"):
    """Derivation forms of L_n and R_n written with parameters head_i_t.

    Returns image dicts {j: {k: Scalar}}.
    """
    P = lambda a, b: var(f"{head}_{a}_{b}")  # noqa: E731
    img = {}

    def add(j, k, c):
        vec_add(img.setdefault(j, {}), {k: as_scalar(c)})

    if kind == "L":
        for t in range(1, n + 1):
            add(1, t, P(1, t))
        for i in range(2, n + 1):
            add(i, i, (i - 2) * P(1, 1) + P(2, 2))
            for t in range(3, n - i + 3):
                add(i, t + i - 2, P(2, t))
    elif kind == "R":
        add(1, 1, P(1, 1))
        for t in range(3, n + 1):
            add(1, t, P(1, t))
        add(2, 2, 2 * P(1, 1))
        for t in range(3, n + 1):
            add(2, t, P(2, t))
        for i in range(3, n + 1):
            add(i, i, i * P(1, 1))
            if i + 1 <= n:
                add(i, i + 1, P(2, 3))
            for t in range(4, n - i + 3):
                add(i, t + i - 2, P(2, t) - P(1, t - 1))
    else:
        raise ValueError(f"no displayed form for {kind!r}")
    return {j: {k: c for k, c in v.items() if c != 0} for j, v in img.items()}


def _kernel_form(space, head, skip=None):
    """Generic element of a derivation space with parameters head1, head2, ..."""
    n = space.n
    img = {}
    for idx, d in enumerate(space.basis, start=1):
        p = var(f"{head}{idx}")
        for k in range(n):
            for j in range(n):
                if d[k][j] != 0:
                    vec_add(img.setdefault(j + 1, {}), {k + 1: p * d[k][j]})
    return img


def _recognize(t):
    from .families import make_Ln, make_Rn

    n = t.dim
    if n >= 4 and t == make_Ln(n):
        return "L"
    if n >= 4 and t == make_Rn(n):
        return "R"
    return None


def derivation_ansatz(t, head):
    """Displayed form for L_n / R_n, otherwise the generic element of Der(t)."""
    kind = _recognize(t)
    if kind:
        return displayed_derivation_form(kind, t.dim, head)
    return _kernel_form(derivation_space(t), head)


def _generic_matrix(n, head):
    return {j: {k: var(f"{head}_{j}_{k}") for k in range(1, n + 1)} for j in range(1, n + 1)}


def _zero_diagonal_derivations(t):
    n = t.dim
    rows = leibniz_rows(t) + [{(i - 1) * n + (i - 1): Fraction(1)} for i in range(1, n + 1)]
    from .derivations import DerivationSpace
    return DerivationSpace(n, kernel(rows, n * n), t)


def _torus_images(t):
    tor = diagonal_derivations(derivation_space(t))
    return [{j + 1: {j + 1: d[j][j]} for j in range(t.dim) if d[j][j] != 0} for d in tor.basis]


def _add_images(a, b):
    out = {j: dict(v) for j, v in a.items()}
    for j, v in b.items():
        vec_add(out.setdefault(j, {}), v)
    return out


def generic_extension(base, r, ansatz=None, generator_brackets="zero"):
    """Parametric extension and its extracted constraint set.

    r = 1: x acts by the derivation-shaped ansatz of each bracket (parameters
    alpha_* for bracket 1, beta_* for bracket 2).

    r = 2: the non-nilpotent normalization. Generator j acts in bracket 1
    by the j-th torus element of Der(bracket1) plus a generic zero-diagonal
    derivation; in bracket 2 by a fully generic matrix.

    ``ansatz`` may be a list of (label, img1, img2) overriding the default.
    """
    base.require_rational("generic_extension")
    n = base.dim
    if ansatz is None:
        if r == 1:
            ansatz = [("x", derivation_ansatz(base.bracket1, "alpha"), derivation_ansatz(base.bracket2, "beta"))]
        elif r == 2:
            tor = _torus_images(base.bracket1)
            if len(tor) < 2:
                raise ExtensionError("bracket 1 has a torus of dimension < 2")
            zd = _zero_diagonal_derivations(base.bracket1)
            ansatz = []
            for label, T, h1, h2 in (("x", tor[0], "alpha", "u"), ("y", tor[1], "beta", "v")):
                ansatz.append((label, _add_images(T, _kernel_form(zd, h1)), _generic_matrix(n, h2)))
        else:
            raise ValueError("r must be 1 or 2")
    gb = None
    if generator_brackets == "generic" and len(ansatz) == 2:
        gb = ({(1, 2): {k: var(f"g_{k}") for k in range(1, n + 1)}},
              {(1, 2): {k: var(f"h_{k}") for k in range(1, n + 1)}})
    spec = ExtensionSpec(base, list(ansatz), gb)
    a = assemble(spec)
    return a, extract_constraints(a)


@dataclass
class ProbeResult:
    algebra: CompatAlgebra
    raw: ConstraintSet
    reduced: ConstraintSet

    @property
    def inconsistent(self):
        return self.reduced.status == "inconsistent"

    def witnesses(self, identity, triple, coordinate):
        """Constant residuals recorded at one (identity, triple, coordinate)."""
        return self.reduced.witnesses_at(identity, triple, coordinate)


def nonexistence_probe(base, r=2):
    a, raw = generic_extension(base, r)
    return ProbeResult(a, raw, reduce_constraints(raw))


def run_branches(cs, branches, nonzero=()):
    """Reduce each normalization branch ({param: value}) separately."""
    return [(b, reduce_constraints(cs.substitute(b), nonzero)) for b in branches]
