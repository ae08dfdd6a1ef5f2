import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import minpoly_coeffs
from rwps import FieldElement, FieldMismatchError, abs_cos, cheb_value, field_degree, field_inverse, minimal_polynomial
from rwps.field import cyclotomic_polynomial

KS = st.integers(min_value=1, max_value=30)
HEIGHT = 10**6
rationals = st.fractions(min_value=-HEIGHT, max_value=HEIGHT, max_denominator=HEIGHT)


@st.composite
def elements(draw, k=None):
    if k is None:
        k = draw(KS)
    d = field_degree(k)
    return FieldElement(k, draw(st.lists(rationals, min_size=d, max_size=d)))


@st.composite
def triples(draw):
    k = draw(KS)
    return draw(elements(k)), draw(elements(k)), draw(elements(k))


def test_known_minimal_polynomials():
    assert str(minimal_polynomial(5)) == "x^2 - x - 1"
    assert minimal_polynomial(1).coefficients == (2, 1)
    assert minimal_polynomial(2).coefficients == (0, 1)
    assert minimal_polynomial(3).coefficients == (-1, 1)
    assert minimal_polynomial(4).coefficients == (-2, 0, 1)
    assert minimal_polynomial(6).coefficients == (-3, 0, 1)


@pytest.mark.parametrize("k", range(1, 31))
def test_minimal_polynomial_matches_reference(k):
    assert list(minimal_polynomial(k).coefficients) == minpoly_coeffs(k)


@pytest.mark.parametrize("k", range(2, 25))
def test_degree_is_half_totient(k):
    phi = sum(1 for j in range(1, 2 * k + 1) if math.gcd(j, 2 * k) == 1)
    assert minimal_polynomial(k).degree == phi // 2


def test_minimal_polynomial_rejects_nonpositive():
    with pytest.raises(ValueError):
        minimal_polynomial(0)


def test_cyclotomic_small():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(10) == (1, -1, 1, -1, 1)


def test_worked_values():
    th5 = FieldElement.theta(5)
    assert field_inverse(th5) == th5 - 1
    assert th5 * th5 == th5 + 1
    assert field_inverse(FieldElement.theta(4)) == FieldElement.theta(4) / 2
    assert cheb_value("U", 4, 5) == 0
    assert abs_cos(1) == 1
    assert abs_cos(3) == Fraction(1, 2)


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        field_inverse(FieldElement.from_rational(7, 0))


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatchError):
        FieldElement.theta(5) + FieldElement.theta(7)


def test_rational_elements_compare_across_fields():
    assert FieldElement.from_rational(5, Fraction(1, 3)) == FieldElement.from_rational(8, Fraction(1, 3))
    assert FieldElement.from_rational(5, 2) == 2
    assert hash(FieldElement.from_rational(5, 2)) == hash(FieldElement.from_rational(9, 2))


def test_json_round_trip():
    e = FieldElement(7, [Fraction(1, 2), 0, Fraction(-3, 5)])
    assert e.to_json() == {"coords": ["1/2", "0", "-3/5"], "theta": "2cos(pi/7)"}
    assert FieldElement.from_json(e.to_json()) == e


def test_cheb_value_negative_index():
    assert cheb_value("U", -1, 4) == 0
    with pytest.raises(ValueError):
        cheb_value("T", -1, 4)


@settings(max_examples=60, deadline=None)
@given(triples())
def test_ring_axioms(abc):
    a, b, c = abc
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    assert a * 1 == a


@settings(max_examples=60, deadline=None)
@given(elements())
def test_inverse_axiom(a):
    if a:
        assert a * field_inverse(a) == 1
        assert a / a == 1


@settings(max_examples=40, deadline=None)
@given(KS, st.integers(min_value=0, max_value=60))
def test_pell_identity(k, n):
    t, u = cheb_value("T", n, k), cheb_value("U", n - 1, k)
    c = abs_cos(k)
    assert t * t - (c * c - 1) * u * u == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=30), st.integers(min_value=0, max_value=60))
def test_periodicity(k, n):
    # |cos(pi/k)| = cos(pi/k) for k >= 2, so T_{n+2k} = T_n and U_{n+2k} = U_n there
    assert cheb_value("T", n + 2 * k, k) == cheb_value("T", n, k)
    assert cheb_value("U", n + 2 * k, k) == cheb_value("U", n, k)
    assert cheb_value("U", k - 1, k) == 0


@settings(max_examples=40, deadline=None)
@given(KS, st.integers(min_value=1, max_value=60))
def test_chebyshev_recurrences_at_the_field_point(k, n):
    c = abs_cos(k)
    assert cheb_value("T", n + 1, k) == 2 * c * cheb_value("T", n, k) - cheb_value("T", n - 1, k)
    assert cheb_value("U", n, k) == 2 * c * cheb_value("U", n - 1, k) - cheb_value("U", n - 2, k)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=30))
def test_theta_is_a_root_numerically(k):
    mp = minimal_polynomial(k)
    assert abs(mp(2 * math.cos(math.pi / k))) < 1e-9
