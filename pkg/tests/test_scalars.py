from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxinv.scalars import (
    FieldMismatch,
    Scalar,
    cosine_field,
    cosine_minpoly,
    cyclotomic,
    field_from_descriptor,
    quadratic_field,
    rational_field,
    two_cos_pi_over,
)

FIELDS = [rational_field(), quadratic_field(5), quadratic_field(2), cosine_field(7), cosine_field(8), cosine_field(9)]

small_fraction = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def scalars(fld):
    return st.lists(small_fraction, min_size=fld.degree, max_size=fld.degree).map(lambda c: Scalar(fld, c))


field_and_triples = st.sampled_from(FIELDS).flatmap(lambda f: st.tuples(scalars(f), scalars(f), scalars(f)))


def test_rational_addition():
    f = rational_field()
    assert Scalar.of(f, Fraction(1, 2)) + Scalar.of(f, Fraction(1, 3)) == Fraction(5, 6)


def test_sqrt5_squared():
    f = quadratic_field(5)
    r = Scalar.generator(f)
    assert r * r == 5


def test_golden_ratio_relation():
    # oracle: 2cos(pi/5) is a root of x^2 - x - 1 by the Chebyshev identity cos(2x) = 2cos^2(x) - 1
    f = quadratic_field(5)
    g = two_cos_pi_over(f, 5)
    assert g * g - g - 1 == 0
    h = Scalar.generator(cosine_field(5))
    assert h * h - h - 1 == 0


@pytest.mark.parametrize(
    "value, expected",
    [(Fraction(5, 6), 1), (Fraction(0), 0), (Fraction(-1, 7), -1)],
)
def test_rational_sign(value, expected):
    assert Scalar.of(rational_field(), value).sign() == expected


def test_sign_one_minus_golden():
    f = quadratic_field(5)
    assert (1 - two_cos_pi_over(f, 5)).sign() == -1


@pytest.mark.parametrize("m", range(4, 25))
def test_cosine_minpoly_root(m):
    poly = cosine_minpoly(m)
    x = 2 * math.cos(math.pi / m)
    assert abs(sum(c * x**i for i, c in enumerate(poly))) < 1e-9
    assert poly[-1] == 1
    # degree of 2cos(pi/m) is phi(2m)/2
    phi = sum(1 for k in range(1, 2 * m) if math.gcd(k, 2 * m) == 1)
    assert len(poly) - 1 == phi // 2


@pytest.mark.parametrize("n, poly", [(1, (-1, 1)), (2, (1, 1)), (4, (1, 0, 1)), (6, (1, -1, 1)), (10, (1, -1, 1, -1, 1))])
def test_cyclotomic(n, poly):
    assert tuple(cyclotomic(n)) == poly


@pytest.mark.parametrize("m, k", [(8, 4), (8, 8), (12, 6), (12, 4), (9, 3), (10, 5)])
def test_two_cos_in_bigger_field(m, k):
    f = cosine_field(m)
    assert math.isclose(float(two_cos_pi_over(f, k)), 2 * math.cos(math.pi / k), abs_tol=1e-12)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Scalar.of(quadratic_field(5), 1) / Scalar.of(quadratic_field(5), 0)


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        Scalar.generator(quadratic_field(5)) + Scalar.generator(cosine_field(7))


def test_rational_generator_rejected():
    with pytest.raises(ValueError):
        cosine_field(3)


@pytest.mark.parametrize("text", ["rational", "quadratic(5)", "cosine(7)"])
def test_descriptor_roundtrip(text):
    assert str(field_from_descriptor(text)) == text


@settings(max_examples=60, deadline=None)
@given(field_and_triples)
def test_field_axioms(triple):
    a, b, c = triple
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0
    if not a.is_zero():
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@settings(max_examples=60, deadline=None)
@given(field_and_triples)
def test_sign_multiplicative_and_float_consistent(triple):
    a, b, _ = triple
    assert (a * b).sign() == a.sign() * b.sign()
    x = float(a)
    if abs(x) > 1e-9:
        assert a.sign() == (1 if x > 0 else -1)


@settings(max_examples=40, deadline=None)
@given(field_and_triples)
def test_canonical_form_idempotent(triple):
    a, _, _ = triple
    again = Scalar(a.field, a.c)
    assert again == a and again.c == a.c and hash(again) == hash(a)
    assert Scalar.from_json(a.to_json()) == a


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(FIELDS[1:]).flatmap(lambda f: st.lists(small_fraction, min_size=2 * f.degree, max_size=2 * f.degree + 2).map(lambda c: (f, c))))
def test_overlong_input_reduces(pair):
    fld, coeffs = pair
    # feeding x^k terms beyond the degree must agree with evaluating the polynomial in the generator
    g = Scalar.generator(fld)
    direct = sum((Scalar.of(fld, c) * g**i for i, c in enumerate(coeffs)), Scalar.of(fld, 0))
    assert Scalar(fld, coeffs) == direct
