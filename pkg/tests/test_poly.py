from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import polynomials
from nilhecke.errors import NotDivisible, RingMismatch
from nilhecke.poly import (
    Polynomial,
    exact_divide_linear,
    monomials_of_degree,
    parse_polynomial,
)
from nilhecke.rings import QQ, ZZ, Ring

NAMES = ["e1", "e2", "e3"]


def evaluate(f, point):
    # oracle: direct term-by-term evaluation
    total = 0
    for exp, c in f.terms.items():
        term = c
        for x, k in zip(point, exp):
            term *= x ** k
        total += term
    return total


points = st.lists(st.integers(-4, 4), min_size=3, max_size=3)


@given(polynomials(3), polynomials(3), points)
def test_product_matches_evaluation(f, g, pt):
    assert evaluate(f * g, pt) == evaluate(f, pt) * evaluate(g, pt)
    assert evaluate(f + g, pt) == evaluate(f, pt) + evaluate(g, pt)


@given(polynomials(3), polynomials(3), polynomials(3))
def test_ring_axioms(f, g, h):
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h
    assert (f - f).is_zero()


@given(polynomials(3, max_degree=2), st.integers(0, 3))
def test_power(f, n):
    p = Polynomial.one(ZZ, 3)
    for _ in range(n):
        p = p * f
    assert f ** n == p


@given(polynomials(3))
def test_json_round_trip(f):
    assert Polynomial.from_json(f.to_json(NAMES), ZZ) == f


@given(polynomials(3))
def test_format_parse_round_trip(f):
    assert parse_polynomial(f.format(NAMES), NAMES) == f


@given(polynomials(3), st.lists(st.integers(-2, 2), min_size=3, max_size=3).filter(any))
def test_exact_division_by_linear_form(f, coeffs):
    alpha = Polynomial.linear(ZZ, coeffs)
    assert exact_divide_linear(f * alpha, alpha) == f


def test_inexact_division_raises():
    e1 = Polynomial.variable(ZZ, 2, 0)
    e2 = Polynomial.variable(ZZ, 2, 1)
    with pytest.raises(NotDivisible):
        exact_divide_linear(e1 * e1 + e2, e1 - e2)


def test_json_term_order_and_coefficients():
    f = parse_polynomial("-3*e1^2*e2 + e2^3 + 1/2", ["e1", "e2"], QQ)
    js = f.to_json(["e1", "e2"])
    assert [t["exp"] for t in js["terms"]] == [[2, 1], [0, 3], [0, 0]]
    assert [t["coeff"] for t in js["terms"]] == ["-3", "1", "1/2"]


def test_mod_reduction_and_exponents():
    F2 = Ring.mod(2)
    f = parse_polynomial("p1^2 + 2*p1 + 3", ["p1"], F2)
    assert f == parse_polynomial("p1^2 + 1", ["p1"], F2)
    assert (f + f).is_zero()


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        Polynomial.one(ZZ, 2) + Polynomial.one(Ring.mod(3), 2)


def test_change_ring_and_lift():
    f = parse_polynomial("3*e1 + 5", ["e1"])
    g = f.change_ring(Ring.mod(3))
    assert g == parse_polynomial("2", ["e1"], Ring.mod(3))
    h = parse_polynomial("1/3*e1", ["e1"], QQ)
    assert h.coefficient((1,)) == Fraction(1, 3)


def test_monomial_counts():
    from math import comb
    for n in range(1, 5):
        for d in range(6):
            assert len(monomials_of_degree(n, d)) == comb(n + d - 1, d)


def test_homogeneous_parts():
    f = parse_polynomial("e1^2 + e1*e2 + e2 + 4", ["e1", "e2"])
    parts = f.homogeneous_parts()
    assert sorted(parts) == [0, 1, 2]
    assert parts[2].is_homogeneous(2) and not f.is_homogeneous()
    assert f.degree() == 2
