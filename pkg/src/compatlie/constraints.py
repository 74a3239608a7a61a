"""Polynomial constraint sets and the linear substitution reducer."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .scalar import Poly, as_scalar, format_scalar, natural_key, partial_substitute

__all__ = ["Origin", "ConstraintSet", "canonical_equation", "reduce_constraints"]


@dataclass(frozen=True)
class Origin:
    """Where an equation came from: identity name, basis triple, coordinate.

    ``residual`` is the raw coefficient before canonical scaling.
    """

    identity: str
    triple: tuple
    coordinate: int
    residual: object

    def describe(self, labels=None):
        def lab(i):
            return labels[i - 1] if labels else f"e{i}"
        t = ",".join(lab(i) for i in self.triple)
        return f"{self.identity}({t}) @ {lab(self.coordinate)}: {format_scalar(self.residual)}"


def canonical_equation(eq):
    """Scale so the leading coefficient is 1 (nonzero constants become 1)."""
    eq = as_scalar(eq)
    if not isinstance(eq, Poly):
        return Fraction(0) if eq == 0 else Fraction(1)
    c = eq.leading_term()[1]
    return eq if c == 1 else eq / c


def _eq_key(eq):
    if not isinstance(eq, Poly):
        return (0, 0, "")
    return (len(eq.terms), eq.degree, format_scalar(eq))


@dataclass
class ConstraintSet:
    """A finite set of equations ``p = 0`` in the algebra's parameters.

    ``status`` is ``"open"``, ``"solved"`` or ``"inconsistent"``.  After
    reduction, ``assignments`` holds the substitutions that were made and
    ``witness`` the first contradictory equation with its origins.
    """

    equations: list = field(default_factory=list)
    origins: dict = field(default_factory=dict)
    status: str = "open"
    assignments: dict = field(default_factory=dict)
    witness: object = None
    contradictions: list = field(default_factory=list)
    fixed: dict = field(default_factory=dict)

    @classmethod
    def from_pairs(cls, pairs):
        """Build from (equation, Origin|None) pairs, canonicalizing and deduplicating."""
        origins = {}
        for eq, org in pairs:
            ceq = canonical_equation(eq)
            if ceq == 0:
                continue
            origins.setdefault(ceq, [])
            if org is not None:
                origins[ceq].append(org)
        eqs = sorted(origins, key=_eq_key)
        cs = cls(equations=eqs, origins=origins)
        cs._refresh_status()
        return cs

    def _refresh_status(self):
        consts = [e for e in self.equations if not isinstance(e, Poly)]
        if consts:
            self.status = "inconsistent"
            self.contradictions = [o for e in consts for o in self.origins.get(e, [])]
            self.witness = (consts[0], self.origins.get(consts[0], []))
        elif not self.equations:
            self.status = "solved"
        else:
            self.status = "open"

    def __len__(self):
        return len(self.equations)

    def __contains__(self, eq):
        return canonical_equation(eq) in self.origins

    def __iter__(self):
        return iter(self.equations)

    @property
    def is_empty(self):
        return not self.equations

    def parameters(self):
        out = set()
        for e in self.equations:
            if isinstance(e, Poly):
                out |= e.variables()
        return sorted(out, key=natural_key)

    def substitute(self, assignment):
        """Fix some parameters (e.g. a normalization branch) and re-canonicalize."""
        assignment = {k: as_scalar(v) for k, v in assignment.items()}
        pairs = []
        for e in self.equations:
            new = partial_substitute(e, assignment)
            for o in self.origins.get(e, []) or [None]:
                pairs.append((new, o))
        cs = ConstraintSet.from_pairs(pairs)
        cs.fixed = {**self.fixed, **assignment}
        cs.assignments = {k: partial_substitute(v, assignment) for k, v in self.assignments.items()}
        return cs

    def implies(self, eq):
        """True if ``eq`` vanishes under the recorded assignments and fixings."""
        e = partial_substitute(as_scalar(eq), self.fixed)
        e = partial_substitute(e, self.assignments)
        return e == 0

    def witnesses_at(self, identity, triple, coordinate):
        return [o for o in self.contradictions
                if o.identity == identity and tuple(o.triple) == tuple(triple) and o.coordinate == coordinate]

    def describe(self, labels=None):
        lines = [f"status: {self.status}"]
        if self.fixed:
            lines.append("fixed: " + ", ".join(f"{k} = {format_scalar(v)}"
                                               for k, v in sorted(self.fixed.items(), key=lambda t: natural_key(t[0]))))
        for k in sorted(self.assignments, key=natural_key):
            lines.append(f"  {k} := {format_scalar(self.assignments[k])}")
        for e in self.equations:
            lines.append(f"  {format_scalar(e)} = 0")
        if self.witness is not None:
            eq, orgs = self.witness
            src = orgs[0].describe(labels) if orgs else "?"
            lines.append(f"witness: {format_scalar(eq)} = 0 from {src}")
        return "\n".join(lines)


def _strip_nonzero_content(eq, nonzero):
    """Divide out powers of parameters declared nonzero that divide every term."""
    if not isinstance(eq, Poly) or not nonzero:
        return eq
    common = None
    for m in eq.terms:
        d = {v: e for v, e in m if v in nonzero}
        if common is None:
            common = d
        else:
            common = {v: min(e, d[v]) for v, e in common.items() if v in d}
        if not common:
            return eq
    terms = {}
    for m, c in eq.terms.items():
        nm = tuple((v, e - common.get(v, 0)) for v, e in m if e - common.get(v, 0))
        terms[nm] = c
    return canonical_equation(Poly(terms) if not (len(terms) == 1 and () in terms) else terms[()])


def _solvable_variable(eq):
    """Greatest variable (natural order) occurring linearly with a constant coefficient."""
    best = None
    for v in eq.variables():
        if eq.degree_in(v) != 1:
            continue
        coeff, _ = eq.coefficient_of(v)
        if isinstance(coeff, Poly):
            continue
        if best is None or natural_key(v) > natural_key(best):
            best = v
    return best


def reduce_constraints(c, nonzero=(), prefer=()):
    """Replay substitution chains: solve equations linear in one parameter.

    Each step picks the simplest equation that is linear in some parameter
    with a rational coefficient, solves it and substitutes everywhere.  Stops
    at a nonzero constant (``inconsistent``), an empty set (``solved``) or
    when no such equation is left (``open``).  Parameters in ``nonzero`` are
    divided out of equations where they are a common monomial factor, which
    is how a ``λ ≠ 0`` branch is followed.  Equations in ``prefer`` (given in
    raw form) are solved first, in order, to replay a particular chain.
    """
    nonzero = set(nonzero)
    origins = {e: list(o) for e, o in c.origins.items()}
    eqs = {}
    for e in c.equations:
        e2 = _strip_nonzero_content(e, nonzero)
        if e2 == 0:
            continue
        eqs.setdefault(e2, []).extend(origins.get(e, []))
    assignments = dict(c.assignments)

    def finish(status_eqs):
        cs = ConstraintSet(equations=sorted(status_eqs, key=_eq_key), origins=status_eqs,
                           assignments=assignments, fixed=dict(c.fixed))
        cs._refresh_status()
        return cs

    queue = [as_scalar(p) for p in prefer]
    while True:
        if any(not isinstance(e, Poly) for e in eqs):
            return finish(eqs)
        pick = None
        while queue and pick is None:
            p = partial_substitute(partial_substitute(queue.pop(0), c.fixed), assignments)
            p = canonical_equation(p)
            if isinstance(p, Poly):
                v = _solvable_variable(p)
                if v is not None:
                    pick = (p, v)
        for e in sorted(eqs, key=_eq_key) if pick is None else ():
            v = _solvable_variable(e)
            if v is not None:
                pick = (e, v)
                break
        if pick is None:
            return finish(eqs)
        e, v = pick
        coeff, rest = e.coefficient_of(v)
        value = -rest / coeff if isinstance(rest, Poly) else -Fraction(rest) / coeff
        sub = {v: value}
        new = {}
        for other, orgs in eqs.items():
            if other == e:
                continue
            ne = partial_substitute(other, sub)
            ne = _strip_nonzero_content(canonical_equation(ne), nonzero)
            if ne == 0:
                continue
            new.setdefault(ne, []).extend(orgs)
        eqs = new
        assignments = {k: partial_substitute(val, sub) for k, val in assignments.items()}
        assignments[v] = value
