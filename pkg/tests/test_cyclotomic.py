from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dcenter.cyclotomic import (
    Cyclotomic,
    cyclotomic_polynomial,
    euler_phi,
    parse,
    render,
    root_of_unity,
)
from dcenter.errors import ParseError


def test_i_plus_conjugate_is_zero():
    assert (root_of_unity(4, 1) + root_of_unity(4, 3)).is_zero()


def test_full_sum_of_seventh_roots_vanishes():
    total = Cyclotomic.zero()
    for k in range(7):
        total = total + root_of_unity(7, k)
    assert total.is_zero()


def test_exponents_add_mod_order():
    assert root_of_unity(5, 2) * root_of_unity(5, 4) == root_of_unity(5, 1)


@pytest.mark.parametrize(
    "n,expected",
    [
        (1, (-1, 1)),
        (2, (1, 1)),
        (4, (1, 0, 1)),
        (9, (1, 0, 0, 1, 0, 0, 1)),
        (12, (1, 0, -1, 0, 1)),
    ],
)
def test_cyclotomic_polynomials(n, expected):
    assert cyclotomic_polynomial(n) == expected


def test_phi_degree_is_euler_phi():
    for n in range(1, 40):
        assert len(cyclotomic_polynomial(n)) - 1 == euler_phi(n)


def test_parse_examples():
    assert parse("E(7)^3") == root_of_unity(7, 3)
    assert parse("1/2*E(4)^1 + 1/2*E(4)^3").is_zero()
    # reduction modulo Phi_9 identifies E(9)^3 with E(3)^1
    assert parse("E(9)^3") == parse("E(3)^1")


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as err:
        parse("E(7)^3 + !")
    assert err.value.position == 9


def test_render_is_canonical_and_roundtrips():
    samples = [
        Cyclotomic.zero(),
        Cyclotomic.from_rational(Fraction(-5, 3)),
        root_of_unity(7, 3),
        root_of_unity(9, 3),  # renders reduced, as E(3)^1
        root_of_unity(7, 1) * 2 + Cyclotomic.from_rational(1),
        -root_of_unity(5, 2),
    ]
    for x in samples:
        text = render(x)
        assert parse(text) == x
        assert render(parse(text)) == text
    assert render(root_of_unity(9, 3)) == "E(3)^1"
    assert render(Cyclotomic.zero()) == "0"


def test_conjugate_is_involutive_ring_map():
    a = parse("E(12)^1 + 2*E(12)^5")
    b = parse("1/3*E(12)^7 - E(12)^2")
    assert a.conjugate().conjugate() == a
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()


def test_root_of_unity_order():
    for n, k in [(12, 8), (9, 3), (7, 0), (10, 5)]:
        x = root_of_unity(n, k)
        from math import gcd

        order = n // gcd(n, k) if k else 1
        assert x ** order == Cyclotomic.one()
        for m in range(1, order):
            assert x ** m != Cyclotomic.one()


def test_as_root_of_unity_detects_minus_one():
    minus_one = Cyclotomic.from_rational(-1)
    assert minus_one.as_root_of_unity() == (2, 1)
    assert root_of_unity(9, 3).as_root_of_unity() == (3, 1)
    assert (root_of_unity(5, 1) + 1).as_root_of_unity() is None


small_rationals = st.fractions(
    min_value=-4, max_value=4, max_denominator=6
)


@st.composite
def cyclotomics(draw):
    n = draw(st.sampled_from([1, 2, 3, 4, 5, 6, 8, 9, 12]))
    nterms = draw(st.integers(min_value=0, max_value=3))
    coeffs = {}
    for _ in range(nterms):
        k = draw(st.integers(min_value=0, max_value=n - 1))
        coeffs[k] = coeffs.get(k, Fraction(0)) + draw(small_rationals)
    return Cyclotomic(n, coeffs)


@settings(max_examples=150, deadline=None)
@given(cyclotomics(), cyclotomics(), cyclotomics())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=12), st.integers(min_value=0, max_value=40))
def test_monomial_inverse(n, k):
    x = root_of_unity(n, k)
    assert x * root_of_unity(n, -k) == Cyclotomic.one()


@settings(max_examples=100, deadline=None)
@given(cyclotomics(), cyclotomics())
def test_equality_agrees_with_float_evaluation(a, b):
    exact = a == b
    approx = abs(complex(a) - complex(b)) < 1e-9
    assert exact == approx


def test_json_roundtrip():
    x = parse("1/2*E(8)^1 - 3*E(8)^3 + 2")
    again = Cyclotomic.from_json_obj(x.to_json_obj())
    assert again == x
    assert again.to_json_obj() == x.to_json_obj()


def test_key_at_agrees_across_conductors():
    assert root_of_unity(9, 3).key_at(9) == root_of_unity(3, 1).key_at(9)
    assert root_of_unity(3, 1).key_at(63) == root_of_unity(9, 3).key_at(63)
