from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from compatlie.scalar import (
    ParameterError,
    Poly,
    ScalarSyntaxError,
    as_scalar,
    format_scalar,
    parse_scalar,
    partial_substitute,
    scalar_add,
    scalar_is_zero,
    scalar_mul,
    scalar_substitute,
    substitute,
    var,
)

P = parse_scalar


def test_add_examples():
    assert scalar_add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    p = P("3*a1*a2 - 1/2")
    assert scalar_add(p, -p) == 0
    assert scalar_add(P("2*a1"), P("a1 + 1")) == P("3*a1 + 1")


def test_mul_examples():
    assert scalar_mul(Fraction(2, 3), Fraction(9, 4)) == Fraction(3, 2)
    assert scalar_mul(P("a1 + 1"), P("a1 - 1")) == P("a1^2 - 1")
    assert scalar_mul(0, P("a1*a2 + 7")) == 0


def test_is_zero_examples():
    assert scalar_is_zero(Fraction(0, 1))
    assert scalar_is_zero(P("a1 - a1"))
    assert not scalar_is_zero(P("a1 - 1"))


def test_substitute_examples():
    assert scalar_substitute(P("2*a1 + 3"), {"a1": Fraction(1, 2)}) == 4
    assert scalar_substitute(Fraction(7, 3), {"a1": 5}) == Fraction(7, 3)
    assert scalar_substitute(P("a1*a2"), {"a1": 2, "a2": 0}) == 0


def test_substitute_missing_parameter():
    with pytest.raises(ParameterError):
        substitute(P("a1 + a2"), {"a1": 1})


def test_partial_substitute_keeps_free_names():
    assert partial_substitute(P("a*b + c"), {"a": P("c")}) == P("b*c + c")


def test_constants_collapse_to_fractions():
    assert isinstance(P("a - a + 3"), Fraction)
    with pytest.raises(ValueError):
        Poly({(): Fraction(2)})


def test_zero_denominator_rejected():
    with pytest.raises(ScalarSyntaxError, match="zero denominator"):
        P("1/0")


def test_undeclared_parameter_rejected():
    with pytest.raises(KeyError):
        parse_scalar("a + t", allowed={"a"})


@pytest.mark.parametrize("text", ["", "a +", "2**", "(a", "a b"])
def test_syntax_errors(text):
    with pytest.raises(ScalarSyntaxError):
        P(text)


def test_format_round_trip_examples():
    for text in ["0", "-1/35", "2*a*b - 1/3*a - 5/7", "x^2", "alpha_1_2*beta3"]:
        s = P(text)
        assert P(format_scalar(s)) == s
        assert format_scalar(P(format_scalar(s))) == format_scalar(s)


# -- properties -----------------------------------------------------------------

rationals = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 12))
NAMES = ["a", "b", "c"]


@st.composite
def polys(draw):
    terms = draw(st.lists(st.tuples(rationals, st.lists(st.sampled_from(NAMES), max_size=3)), max_size=4))
    out = Fraction(0)
    for c, names in terms:
        m = as_scalar(c)
        for name in names:
            m = m * var(name)
        out = out + m
    return out


assignments = st.fixed_dictionaries({n: rationals for n in NAMES})


@settings(max_examples=1000)
@given(rationals, rationals, rationals)
def test_field_axioms(a, b, c):
    assert a + (b + c) == (a + b) + c
    assert a * (b + c) == a * b + a * c
    if a != 0:
        assert a * (1 / a) == 1


@settings(max_examples=1000)
@given(polys(), polys(), polys(), assignments)
def test_ring_axioms_under_substitution(p, q, r, sigma):
    assert substitute(p * q, sigma) == substitute(p, sigma) * substitute(q, sigma)
    assert substitute(p + q, sigma) == substitute(p, sigma) + substitute(q, sigma)
    assert p * (q + r) == p * q + p * r
    assert (p + q) + r == p + (q + r)
    assert p * q == q * p


@settings(max_examples=1000)
@given(polys())
def test_canonical_form_idempotent(p):
    again = p if not isinstance(p, Poly) else Poly(p.terms)
    assert again == p
    assert P(format_scalar(p)) == p
    assert format_scalar(P(format_scalar(p))) == format_scalar(p)


@settings(max_examples=1000)
@given(polys(), assignments)
def test_zero_substitutes_to_zero(p, sigma):
    z = p - p
    assert scalar_is_zero(z)
    assert substitute(z, sigma) == 0
    if scalar_is_zero(p):
        assert substitute(p, sigma) == 0
