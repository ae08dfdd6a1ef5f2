import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import cheb_to_poly, monomial_family
from rwps import (
    ChebyshevT,
    ExpansionTables,
    Table,
    Ultraspherical,
    polynomial,
    pq_tables,
    r_coeffs,
    sieve,
    sieved_poly_expansion,
    ultraspherical_rp,
)
from rwps.expansion import p_via_partial_sums, pochhammer
from rwps.family import random_table

F = Fraction
HALF = F(1, 2)
PARENTS = [ChebyshevT(), Ultraspherical(F(-1, 4)), Ultraspherical(HALF), random_table(random.Random(3), 30)]


def test_worked_tables():
    t = pq_tables(Ultraspherical(HALF), 3)
    assert t.p[2] == (F(1, 6), 0)
    assert t.q[2] == (HALF, F(1, 3))
    assert t.r[2] == (F(2, 3), F(1, 3))
    assert t.p[0] == (0,) and t.q[0] == (1,)


def test_worked_sieved_polynomial():
    assert sieved_poly_expansion(Ultraspherical(HALF), 2, 5).render() == "1/2*T5 + 1/6*T3 + 1/3*T1"
    assert sieved_poly_expansion(Ultraspherical(HALF), 2, 3) == polynomial(sieve(Ultraspherical(HALF), 2), 3)


@pytest.mark.parametrize("parent", PARENTS, ids=lambda f: f.fingerprint)
@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_expansion_matches_monomial_oracle(parent, k):
    s = sieve(parent, k)
    ref = monomial_family(s.c, 20)
    for m in range(21):
        assert cheb_to_poly(sieved_poly_expansion(parent, k, m).items()) == ref[m]


@pytest.mark.parametrize("parent", PARENTS, ids=lambda f: f.fingerprint)
def test_relations_between_tables(parent):
    N = 16
    t = pq_tables(parent, N + 1)
    for n in range(N + 1):
        for j in range(n // 2 + 1):
            if n >= 1:
                assert t.r_at(n, j) == t.p_at(n - 1, j - 1) + t.q_at(n - 1, j)
            assert t.q_at(n, j) == t.r_at(n, j) - t.p_at(n, j)
            assert t.p_at(n, j) == p_via_partial_sums(parent, n, j)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_polynomial_mapping(k):
    parent = Ultraspherical(F(3, 2))
    for m in range(7):
        assert sieved_poly_expansion(parent, k, k * m) == polynomial(parent, m).compose_T(k)


@pytest.mark.parametrize("alpha", [F(-1, 4), HALF, F(7, 2)])
def test_ultraspherical_closed_forms(alpha):
    fam = Ultraspherical(alpha)
    t = pq_tables(fam, 14)
    for n in range(15):
        for j in range(n // 2 + 1):
            assert ultraspherical_rp(alpha, n, j) == (t.r[n][j], t.p[n][j])


def test_ultraspherical_closed_forms_domain():
    with pytest.raises(ValueError):
        ultraspherical_rp(-HALF, 3, 0)
    with pytest.raises(ValueError):
        ultraspherical_rp(-1, 3, 0)
    with pytest.raises(ValueError):
        ultraspherical_rp(1, 3, 2)
    assert pochhammer(F(1, 2), 3) == F(15, 8)


def test_tables_json_round_trip():
    t = pq_tables(Ultraspherical(HALF), 6)
    assert ExpansionTables.from_json(t.to_json()) == t
    assert t.to_json()["p"][2] == ["1/6", "0"]


def test_row_lengths_and_out_of_triangle_reads():
    t = pq_tables(ChebyshevT(), 7)
    assert [len(row) for row in t.p] == [n // 2 + 1 for n in range(8)]
    assert t.p_at(3, -1) == 0 and t.q_at(3, 2) == 0
    assert r_coeffs(ChebyshevT(), 4) == [1, 0, 0]


def test_invalid_arguments():
    with pytest.raises(ValueError):
        sieved_poly_expansion(ChebyshevT(), 0, 3)
    with pytest.raises(ValueError):
        pq_tables(ChebyshevT(), -1)


@settings(max_examples=20, deadline=None)
@given(
    st.lists(st.fractions(min_value=F(1, 30), max_value=F(29, 30), max_denominator=30), min_size=8, max_size=8),
    st.integers(1, 4),
)
def test_random_parents(values, k):
    parent = Table(tuple(values))
    s = sieve(parent, k)
    for m in range(8 * k):
        assert sieved_poly_expansion(parent, k, m) == polynomial(s, m)
