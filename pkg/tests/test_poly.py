"""Exact polynomial kernel: canonical forms, division, substitution."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistn2.poly import (NotDivisible, ONE, Poly, QuadRootData, RatFunc,
                          WrongDegree, ZERO, exact_divide, format_rational,
                          normalize, parse_rational, quadratic_root_data,
                          rational_sqrt)

b = Poly.var("b")
bp = Poly.var("bp")
m = Poly.var("m")
r = Poly.var("r")
k = Poly.var("k")


def test_normalize_collects_like_terms():
    p = normalize([({"m": 1, "b": 1}, 1), ({"b": 1, "m": 1}, 1), ({"m": 1, "b": 1}, -1)])
    assert p == m * b


def test_normalize_drops_zero_terms():
    assert normalize([({"m": 2}, 0)]) == ZERO
    assert not normalize([({"m": 2}, 0)])


def test_structural_equality_is_order_independent():
    assert b * m == m * b
    assert (b + m) * (b - m) == b * b - m * m


def test_constants_and_scalars():
    assert Poly.const(0) == ZERO
    assert 2 * ONE + 1 == Poly.const(3)
    assert (b - b) == ZERO
    assert Poly.const(Fraction(1, 2)) * 2 == ONE


small_fractions = st.fractions(min_value=-4, max_value=4, max_denominator=6)


@st.composite
def polys(draw, vars=("b", "m", "k")):
    n_terms = draw(st.integers(0, 4))
    p = ZERO
    for _ in range(n_terms):
        coeff = draw(small_fractions)
        term = Poly.const(coeff)
        for v in vars:
            term = term * Poly.var(v) ** draw(st.integers(0, 2))
        p = p + term
    return p


@given(polys(), polys(), polys())
@settings(max_examples=60, deadline=None)
def test_ring_laws(p, q, s):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + s == p + (q + s)
    assert (p * q) * s == p * (q * s)
    assert p * (q + s) == p * q + p * s


@given(polys(), polys())
@settings(max_examples=60, deadline=None)
def test_exact_divide_inverts_multiplication(p, q):
    if not q:
        return
    assert exact_divide(p * q, q) == p


@given(polys(), polys())
@settings(max_examples=40, deadline=None)
def test_substitute_is_a_ring_homomorphism(p, q):
    bindings = {"b": Fraction(2, 3), "m": -2, "k": Fraction(1, 2)}
    lhs = (p + q).substitute(bindings)
    assert lhs == p.substitute(bindings) + q.substitute(bindings)
    assert (p * q).substitute(bindings) == p.substitute(bindings) * q.substitute(bindings)


def test_exact_divide_examples():
    assert exact_divide((b - bp) * m**6, m**6) == b - bp
    assert exact_divide(r * (-2 * b - 2), r) == -2 * b - 2
    with pytest.raises(NotDivisible):
        exact_divide(m * m + 1, m)


def test_substitute_examples():
    p = m * m * b - m * bp
    assert p.evaluate({"m": 2, "b": Fraction(1, 3), "bp": 0}) == Fraction(4, 3)
    assert (b - bp) * m**6 == ((b - bp) * m**6).substitute({})
    assert not ((b - bp) * m**6).substitute({"bp": b})
    assert Poly.var("k").substitute({"k": k - m}) == k - m


def test_quadratic_root_data_from_first_determinant_factor():
    quad = bp * bp + (2 * b + 3) * bp + (b * b + b)
    data = quadratic_root_data(quad, "bp")
    assert data.discriminant == 8 * b + 9


def test_quadratic_root_data_from_second_determinant_factor():
    quad = b * b + 2 * b * bp + 5 * b + 3 * bp + bp * bp + 3
    data = quadratic_root_data(quad, "bp")
    assert data.discriminant == -8 * b - 3


def test_quadratic_root_data_constant_case():
    data = quadratic_root_data(bp * bp + 1, "bp")
    assert data.discriminant == Poly.const(-4)
    with pytest.raises(WrongDegree):
        quadratic_root_data(bp + 1, "bp")


def test_quad_root_data_invariant_is_enforced():
    with pytest.raises(ValueError):
        QuadRootData("bp", ONE, ZERO, ZERO, ONE)


def test_rational_roots_require_square_discriminant():
    quad = quadratic_root_data(bp * bp + (2 * b + 3) * bp + (b * b + b), "bp")
    assert quad.rational_roots_at({"b": 0}) == [Fraction(-3), Fraction(0)]
    assert quad.rational_roots_at({"b": 1}) == []  # disc 17 is not a square


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-1)) is None
    assert rational_sqrt(Fraction(0)) == 0


@pytest.mark.parametrize("text, value", [
    ("3", Fraction(3)),
    ("-3", Fraction(-3)),
    ("1/2", Fraction(1, 2)),
    ("-3/2", Fraction(-3, 2)),
    ("+4/6", Fraction(2, 3)),
])
def test_rational_literals(text, value):
    assert parse_rational(text) == value
    assert parse_rational(format_rational(value)) == value


@pytest.mark.parametrize("text", ["", "x", "1/0", "1.5"])
def test_bad_rational_literals(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_rendering_is_sorted_and_stable():
    p = b * m + m * b + 1 - 1 + 2 * b
    assert str(p) == "2*b*m + 2*b"
    assert str(p) == str(2 * Poly.var("b") * Poly.var("m") + 2 * Poly.var("b"))
    assert str(ZERO) == "0"


def test_ratfunc_equality_and_arithmetic():
    f = RatFunc(b + 1, r)
    g = RatFunc((b + 1) * m, r * m)
    assert f == g
    assert f - g == RatFunc(ZERO)
    assert not (f - g)
    assert f * r == RatFunc((b + 1) * r, r)
    assert (f + 1) == RatFunc(b + 1 + r, r)
    assert f.substitute({"b": 1}).num == 2 * ONE


def test_ratfunc_as_poly():
    assert RatFunc(r * (b + 1), r).as_poly() == b + 1
    with pytest.raises(NotDivisible):
        RatFunc(b + 1, r).as_poly()
