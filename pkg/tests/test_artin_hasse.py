from fractions import Fraction as F
from math import factorial

import pytest

from omegaconst.artin_hasse import (
    ah_eval,
    ah_factor,
    ah_derivative_identity,
    ah_exp_form,
    ah_integrality_check,
    ah_product_form,
    p_power_sum,
)
from omegaconst.padic import PadicInt
from omegaconst.powser import TruncSeries, ps_exp


def naive_exp(f, order):
    # sum_k f^k / k! with schoolbook products
    total = [F(0)] * (order + 1)
    power = [F(1)] + [F(0)] * order
    for k in range(order + 1):
        for i in range(order + 1):
            total[i] += power[i] / factorial(k)
        nxt = [F(0)] * (order + 1)
        for i, a in enumerate(power):
            if a:
                for j in range(order + 1 - i):
                    nxt[i + j] += a * f[j]
        power = nxt
    return total


def test_exp_form_examples():
    assert list(ah_exp_form(2, 4).series.coeffs) == [1, 1, 1, F(2, 3), F(2, 3)]
    assert list(ah_exp_form(3, 3).series.coeffs) == [1, 1, F(1, 2), F(1, 2)]
    for p in (2, 3, 5, 7, 11):
        s = ah_exp_form(p, 5).series
        assert s[0] == 1 and s[1] == 1


@pytest.mark.parametrize("p", [2, 3, 5])
def test_exp_form_against_naive(p):
    order = 16
    assert list(ah_exp_form(p, order).series.coeffs) == naive_exp(p_power_sum(p, order).coeffs, order)


def test_product_examples():
    assert list(ah_product_form(1, 6).series.coeffs) == [F(1, factorial(n)) for n in range(7)]
    assert ah_product_form(2, 4).series == ah_exp_form(2, 4).series


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_two_forms_agree(p):
    assert ah_product_form(p, 100).series == ah_exp_form(p, 100).series


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_integrality(p):
    rep = ah_integrality_check(ah_exp_form(p, 120))
    assert rep.passed and rep.first_failure is None


def test_integrality_controls():
    assert ah_integrality_check(TruncSeries.of([1, F(2, 3)]), 2).passed
    assert ah_integrality_check(TruncSeries.of([1, F(1, 2)]), 3).passed
    rep = ah_integrality_check(ps_exp(TruncSeries.x(10)), 2)
    assert not rep.passed and rep.first_failure == 2
    assert rep.to_json() == {"p": 2, "order": 10, "passed": False, "first_failure": 2}


def test_p_one_is_exp():
    assert ah_product_form(1, 40).series == ps_exp(TruncSeries.x(40))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_derivative_identity(p):
    assert ah_derivative_identity(ah_exp_form(p, 60))


def test_derivative_identity_detects_tampering():
    s = ah_exp_form(3, 12)
    coeffs = list(s.series.coeffs)
    coeffs[7] += 1
    bad = type(s)(3, 12, TruncSeries.of(coeffs), "exp-sum")
    assert not ah_derivative_identity(bad)


def test_composite_p_rejected():
    with pytest.raises(ValueError, match="p must be prime"):
        ah_exp_form(4, 10)
    with pytest.raises(ValueError, match="p must be prime"):
        ah_product_form(6, 10)


def test_eval_matches_exact_partial_sum():
    p, prec = 3, 20
    x = PadicInt(p, prec, 3 * 17)
    coeffs = ah_exp_form(p, 64).series.coeffs
    exact = sum(c * F(x.residue) ** i for i, c in enumerate(coeffs))
    assert ah_eval(p, x) == PadicInt(p, prec, exact.numerator * pow(exact.denominator, -1, p**prec))


def test_single_factor():
    # mu(2) = -1, so the n = 2 factor is (1 - x^2)^(1/2)
    assert list(ah_factor(2, 6).coeffs) == [1, 0, F(-1, 2), 0, F(-1, 8), 0, F(-1, 16)]
    assert ah_factor(4, 6) == TruncSeries.one(6)
