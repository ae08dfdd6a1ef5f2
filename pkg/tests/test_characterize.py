import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rwps import (
    ChebyshevT,
    Table,
    Ultraspherical,
    characterization_report,
    check_alpha_vanishing,
    check_Dk_kernel_property,
    check_eigen,
    check_kappa_conditions,
    check_sieved_direct,
    check_ultraspherical_fit,
    sieve,
    verify_central_equation,
)
from rwps.characterize import DERIVATIVE_GROUP, reach
from rwps.family import random_table

F = Fraction
HALF = F(1, 2)
SIX_CHECKS = (
    lambda s, k, N: check_eigen(s, k, N),
    lambda s, k, N: check_alpha_vanishing(s, k, N),
    lambda s, k, N: verify_central_equation(s, k, N),
    lambda s, k, N: check_Dk_kernel_property(s, k, N),
    lambda s, k, N: check_kappa_conditions(s, k, N, "full"),
    lambda s, k, N: check_kappa_conditions(s, k, N, "weakened"),
)


def _perturbed(spec, index, length=30, value=F(1, 3)):
    values = [spec.c(n) for n in range(1, length + 1)]
    values[index - 1] = value
    return Table(tuple(values))


@pytest.mark.parametrize("k", [2, 3, 4])
def test_sieved_families_satisfy_everything(k):
    spec = sieve(random_table(random.Random(k), 20), k)
    report = characterization_report(spec, k, 16)
    assert report.sieved and report.all_hold
    assert report.beyond_reach == []


def test_ultraspherical_half_is_not_2_sieved():
    report = characterization_report(Ultraspherical(HALF), 2, 24)
    assert not report.sieved
    sieved = report.to_json()["conditions"][0]
    assert sieved["condition"] == "sieved"
    assert sieved["verdict"] == "fails" and sieved["n"] == 1
    assert sieved["witness"]["value"] == "1/4"
    assert all(c["verdict"] == "fails" for c in report.to_json()["conditions"])


def test_changing_only_a_multiple_of_k_keeps_the_family_sieved():
    # c_2 is the only coefficient away from 1/2, and 2 | 2, so the family is 2-sieved
    spec = Table((HALF, F(1, 3)) + (HALF,) * 28)
    report = characterization_report(spec, 2, 24)
    assert report.sieved and report.all_hold


def test_changing_an_odd_index_breaks_every_condition():
    spec = Table((HALF, HALF, F(1, 3)) + (HALF,) * 27)
    report = characterization_report(spec, 2, 24)
    assert not report.sieved
    assert len(report.failing()) == len(report.verdicts)
    assert report.verdicts["sieved"].n == 3


@pytest.mark.parametrize("k", [2, 3, 4])
@pytest.mark.parametrize("index_offset", [1, 2])
def test_single_perturbations_are_detected_by_every_check(k, index_offset):
    N = 16
    parent = sieve(Ultraspherical(F(3, 2)), k)
    index = k * 2 + index_offset if index_offset < k else k + 1
    spec = _perturbed(parent, index)
    assert not check_sieved_direct(spec, k, N).holds
    for check in SIX_CHECKS:
        assert not check(spec, k, N).holds


def test_k1_derivative_conditions_select_ultraspherical():
    report = characterization_report(Ultraspherical(1), 1, 20)
    assert report.all_hold and report.alpha == 1
    other = random_table(random.Random(2), 30)
    assert not check_ultraspherical_fit(other, 20).holds
    report = characterization_report(other, 1, 20)
    for name in DERIVATIVE_GROUP:
        assert not report.verdicts[name].holds


def test_chebyshev_is_sieved_for_every_k():
    for k in range(1, 6):
        assert characterization_report(ChebyshevT(), k, 12).all_hold


def test_horizon_caveat_is_reported():
    # the only bad coefficient sits at the horizon, beyond what the derivative checks can see
    k, N = 3, 10
    spec = _perturbed(sieve(Ultraspherical(HALF), k), N)
    report = characterization_report(spec, k, N)
    assert not report.sieved
    assert set(report.beyond_reach) >= {"kappa"}
    assert all(reach(name, k, N) < N for name in report.beyond_reach)
    data = report.to_json()
    assert set(data["beyond_reach"]) == set(report.beyond_reach)


def test_small_horizons_rejected():
    with pytest.raises(ValueError):
        check_kappa_conditions(ChebyshevT(), 2, 4)
    with pytest.raises(ValueError):
        check_kappa_conditions(ChebyshevT(), 2, 8, "partial")
    with pytest.raises(ValueError):
        characterization_report(ChebyshevT(), 2, 4)


def test_report_json_is_serializable_and_exact():
    report = characterization_report(Ultraspherical(HALF), 5, 12)
    text = json.dumps(report.to_json())
    data = json.loads(text)
    for c in data["conditions"]:
        if c["verdict"] == "fails":
            assert c["witness"]["field"] == "Q(cos(pi/5))"


@settings(max_examples=15, deadline=None)
@given(
    st.integers(2, 4),
    st.lists(st.fractions(min_value=F(1, 20), max_value=F(19, 20), max_denominator=20), min_size=6, max_size=6),
    st.booleans(),
)
def test_partial_sum_identity(k, parent_values, perturb):
    spec = sieve(Table(tuple(parent_values)), k)
    N = 6 * k
    assert verify_central_equation(spec, k, N).holds
    if perturb:
        spec = _perturbed(spec, 1, length=N, value=F(1, 3))
        v = verify_central_equation(spec, k, N)
        assert not v.holds and v.n == 1
