"""Exact scalars: rationals and sparse multivariate polynomials over Q.

A *scalar* is either a :class:`fractions.Fraction` or a :class:`Poly`.  Every
arithmetic result is normalized, so a polynomial with only a constant term is
always returned as a ``Fraction`` and a ``Poly`` instance is never constant.
This makes the zero test a plain ``s == 0``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = [
    "Poly",
    "ParameterError",
    "ScalarSyntaxError",
    "as_scalar",
    "var",
    "is_zero",
    "is_constant",
    "parameters",
    "substitute",
    "partial_substitute",
    "scalar_add",
    "scalar_mul",
    "scalar_is_zero",
    "scalar_substitute",
    "parse_scalar",
    "format_scalar",
    "natural_key",
]


class ParameterError(KeyError):
    """Raised when a substitution leaves a parameter unassigned."""

    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"parameter {self.name!r} has no assigned value"


class ScalarSyntaxError(ValueError):
    def __init__(self, message, text="", pos=0):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.pos = pos


_DIGITS = re.compile(r"(\d+)")


def natural_key(name):
    """Sort key putting ``a2`` before ``a10``."""
    return tuple(int(p) if p.isdigit() else p for p in _DIGITS.split(name))


# A monomial is a tuple of (name, exponent) pairs sorted by natural_key(name);
# the empty tuple is the constant monomial.

def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda t: natural_key(t[0])))


def _mono_degree(m):
    return sum(e for _, e in m)


def _mono_key(m):
    # ascending sort on this key gives descending graded-lex order, with
    # variables earlier in natural order ranking higher
    expanded = []
    for v, e in m:
        expanded.extend([natural_key(v)] * e)
    return (-_mono_degree(m), tuple(expanded))


def _make(terms):
    """Normalize a term dict (zero coefficients already removed)."""
    if not terms:
        return Fraction(0)
    if len(terms) == 1 and () in terms:
        return terms[()]
    p = Poly.__new__(Poly)
    p.terms = terms
    p._hash = None
    return p


class Poly:
    """Sparse polynomial over Q with named variables.

    Instances are immutable; ``terms`` maps monomials to nonzero Fractions.
    Build them with :func:`var`, :func:`parse_scalar` or arithmetic.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms):
        clean = {}
        for m, c in dict(terms).items():
            c = Fraction(c)
            if c:
                m = tuple(sorted(((v, e) for v, e in m if e), key=lambda t: natural_key(t[0])))
                clean[m] = clean.get(m, 0) + c
                if not clean[m]:
                    del clean[m]
        if not clean or (len(clean) == 1 and () in clean):
            raise ValueError("constant polynomial; use Fraction or as_scalar()")
        self.terms = clean
        self._hash = None

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Poly):
            terms = dict(self.terms)
            for m, c in other.terms.items():
                s = terms.get(m, 0) + c
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
            return _make(terms)
        if isinstance(other, (int, Rational)):
            if not other:
                return self
            terms = dict(self.terms)
            s = terms.get((), 0) + other
            if s:
                terms[()] = Fraction(s)
            else:
                terms.pop((), None)
            return _make(terms)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return _make({m: -c for m, c in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, (Poly, int, Rational)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Rational)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Poly):
            terms = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = _mono_mul(m1, m2)
                    s = terms.get(m, 0) + c1 * c2
                    if s:
                        terms[m] = s
                    else:
                        del terms[m]
            return _make(terms)
        if isinstance(other, (int, Rational)):
            if not other:
                return Fraction(0)
            if other == 1:
                return self
            return _make({m: c * other for m, c in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only division by a nonzero rational is supported
        if isinstance(other, (int, Rational)):
            if not other:
                raise ZeroDivisionError("division of a polynomial by zero")
            inv = 1 / Fraction(other)
            return _make({m: c * inv for m, c in self.terms.items()})
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Fraction(1)
        base = self
        while k:
            if k & 1:
                result = base * result
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Rational)):
            return False  # normalized polys are never constant
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return True

    # -- inspection ------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _mono_key(t[0]))

    def leading_term(self):
        return self.sorted_terms()[0]

    @property
    def degree(self):
        return max(_mono_degree(m) for m in self.terms)

    def variables(self):
        return {v for m in self.terms for v, _ in m}

    def constant_term(self):
        return self.terms.get((), Fraction(0))

    def degree_in(self, name):
        return max((e for m in self.terms for v, e in m if v == name), default=0)

    def coefficient_of(self, name):
        """Split self as c*name + rest for a variable of degree <= 1.

        Returns (c, rest) with c, rest scalars free of ``name``.
        """
        coeff, rest = {}, {}
        for m, c in self.terms.items():
            e = dict(m).get(name, 0)
            if e == 0:
                rest[m] = c
            elif e == 1:
                coeff[tuple(t for t in m if t[0] != name)] = c
            else:
                raise ValueError(f"{name} occurs with degree {e}")
        return _make(coeff), _make(rest)

    def __repr__(self):
        return f"Poly({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def var(name):
    """The polynomial consisting of the single variable ``name``."""
    if not _IDENT.fullmatch(name):
        raise ValueError(f"invalid parameter name {name!r}")
    return _make({((name, 1),): Fraction(1)})


def as_scalar(x):
    """Coerce int, Fraction, str (parsed) or Poly to a normalized scalar."""
    if isinstance(x, Poly):
        return x
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a scalar")


def is_zero(s):
    return not isinstance(s, Poly) and s == 0


def is_constant(s):
    return not isinstance(s, Poly)


def parameters(s):
    return s.variables() if isinstance(s, Poly) else set()


def _eval_mono(m, values):
    out = Fraction(1)
    for v, e in m:
        out *= values[v] ** e
    return out


def substitute(s, assignment):
    """Evaluate ``s`` exactly at a full rational assignment."""
    if not isinstance(s, Poly):
        return Fraction(s)
    missing = sorted(s.variables() - set(assignment), key=natural_key)
    if missing:
        raise ParameterError(missing[0])
    values = {k: Fraction(v) for k, v in assignment.items()}
    return sum((c * _eval_mono(m, values) for m, c in s.terms.items()), Fraction(0))


def partial_substitute(s, assignment):
    """Substitute scalars (rational or polynomial) for some variables."""
    if not isinstance(s, Poly):
        return s
    if not (s.variables() & set(assignment)):
        return s
    total = Fraction(0)
    power_cache = {}
    for m, c in s.terms.items():
        term = c
        rest = []
        for v, e in m:
            if v in assignment:
                key = (v, e)
                if key not in power_cache:
                    power_cache[key] = as_scalar(assignment[v]) ** e
                term = term * power_cache[key]
            else:
                rest.append((v, e))
        if rest:
            term = term * _make({tuple(rest): Fraction(1)})
        total = total + term
    return total


# spec-facing operation names
def scalar_add(a, b):
    return as_scalar(a) + as_scalar(b)


def scalar_mul(a, b):
    return as_scalar(a) * as_scalar(b)


def scalar_is_zero(a):
    return is_zero(as_scalar(a))


def scalar_substitute(a, assignment):
    return substitute(as_scalar(a), assignment)


# ---------------------------------------------------------------------------
# text form

def _format_rational(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _format_mono(m):
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


def format_scalar(s):
    """Canonical text, parseable by :func:`parse_scalar`."""
    if not isinstance(s, Poly):
        return _format_rational(Fraction(s))
    parts = []
    for i, (m, c) in enumerate(s.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not m:
            body = _format_rational(a)
        elif a == 1:
            body = _format_mono(m)
        else:
            body = f"{_format_rational(a)}*{_format_mono(m)}"
        if i == 0:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_TOKEN = re.compile(r"\s*(?:(\d+)(?:\s*/\s*(\d+))?|([A-Za-z][A-Za-z0-9_]*)|(.))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if not text[pos:].strip():
            break
        mt = _TOKEN.match(text, pos)
        num, den, name, op = mt.groups()
        start = mt.end() - len(mt.group(0).lstrip())
        if num is not None:
            if den is not None:
                if int(den) == 0:
                    raise ScalarSyntaxError("zero denominator", text, start)
                tokens.append(("num", Fraction(int(num), int(den)), start))
            else:
                tokens.append(("num", Fraction(int(num)), start))
        elif name is not None:
            tokens.append(("name", name, start))
        elif op is not None:
            if op not in "+-*^()":
                raise ScalarSyntaxError(f"unexpected character {op!r}", text, start)
            tokens.append((op, op, start))
        pos = mt.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, allowed):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.allowed = allowed

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise ScalarSyntaxError(f"expected {kind!r}", self.text, tok[2])
        self.i += 1
        return tok

    def expr(self):
        value = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] == "*":
            self.take()
            value = value * self.unary()
        return value

    def unary(self):
        if self.peek()[0] in "+-":
            op = self.take()[0]
            value = self.unary()
            return -value if op == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num" or tok[1].denominator != 1:
                raise ScalarSyntaxError("exponent must be a nonnegative integer", self.text, tok[2])
            base = base ** int(tok[1])
        return base

    def atom(self):
        kind, value, pos = self.take()
        if kind == "num":
            return value
        if kind == "name":
            if self.allowed is not None and value not in self.allowed:
                raise ParameterError(value)
            return var(value)
        if kind == "(":
            inner = self.expr()
            self.take(")")
            return inner
        raise ScalarSyntaxError("unexpected token", self.text, pos)


def parse_scalar(text, allowed=None):
    """Parse a coefficient expression.

    ``allowed`` optionally restricts the parameter names; an undeclared name
    raises :class:`ParameterError`.
    """
    p = _Parser(text, None if allowed is None else set(allowed))
    value = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        raise ScalarSyntaxError("trailing input", text, tok[2])
    return value
