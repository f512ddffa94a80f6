from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from omegaconst.artin_hasse import ah_eval, ah_exp_form
from omegaconst.errors import CoefficientNotPIntegral, HenselConditionFailed, NonUnit, PrimeMismatch
from omegaconst.padic import (
    PadicInt,
    hensel_lift,
    padic_eval_series,
    padic_inv,
    padic_valuation,
    rational_to_padic,
)

PRIMES = [2, 3, 5, 7]


@st.composite
def ring_triples(draw):
    p = draw(st.sampled_from(PRIMES))
    n = draw(st.integers(1, 64))
    m = p**n
    a, b, c = (PadicInt(p, n, draw(st.integers(0, m - 1))) for _ in range(3))
    return a, b, c


@given(ring_triples())
def test_ring_axioms(t):
    a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == PadicInt(a.p, a.prec, 0)


@given(ring_triples())
def test_inverse(t):
    a = t[0]
    if a.is_unit():
        assert a * padic_inv(a) == PadicInt(a.p, a.prec, 1)
    else:
        with pytest.raises(NonUnit):
            padic_inv(a)


def test_examples():
    assert (PadicInt(5, 3, 124) + PadicInt(5, 3, 1)).residue == 0
    assert (PadicInt(3, 4, 5) * PadicInt(3, 4, 17)).residue == 4
    assert padic_inv(PadicInt(3, 3, 2)).residue == 14
    assert padic_inv(PadicInt(7, 5, 1)).residue == 1
    assert padic_valuation(PadicInt(2, 5, 12)) == 2
    assert padic_valuation(PadicInt(2, 5, 0)) == 5
    assert padic_valuation(PadicInt(2, 5, 1)) == 0


def test_mixed_precision_truncates():
    s = PadicInt(3, 10, 5) + PadicInt(3, 4, 1)
    assert s.prec == 4 and s.residue == 6


def test_prime_mismatch():
    with pytest.raises(PrimeMismatch):
        PadicInt(3, 4, 1) + PadicInt(5, 4, 1)


def test_rational_to_padic():
    assert rational_to_padic(Fraction(1, 3), 2, 4).residue == 11
    with pytest.raises(CoefficientNotPIntegral):
        rational_to_padic(Fraction(1, 3), 3, 4)


def test_rendering_roundtrip():
    a = PadicInt(3, 5, 21)
    assert a.digits() == [0, 1, 2, 0, 0]
    assert a.to_str() == "0 1 2 0 0 (base 3)"
    assert PadicInt.from_json(a.to_json()) == a


@given(
    st.sampled_from(PRIMES),
    st.lists(st.fractions(max_denominator=50), min_size=1, max_size=12),
    st.integers(0, 10**6),
    st.integers(2, 30),
)
def test_eval_series_against_exact(p, coeffs, r, prec):
    # keep only p-integral coefficients; evaluate at a multiple of p
    coeffs = [c for c in coeffs if c.denominator % p]
    if not coeffs:
        return
    x = PadicInt(p, prec, (r * p) % p**prec)
    exact = sum(c * Fraction(x.residue) ** i for i, c in enumerate(coeffs))
    assert padic_eval_series(coeffs, x) == rational_to_padic(exact, p, prec)


def test_artin_hasse_at_two_mod_16():
    # independent oracle: exact rational partial sum, then reduce mod 16
    coeffs = ah_exp_form(2, 40).series.coeffs
    exact = sum(c * 2**i for i, c in enumerate(coeffs))
    assert rational_to_padic(exact, 2, 4).residue == 7
    assert ah_eval(2, PadicInt(2, 4, 2)).residue == 7
    assert ah_eval(2, PadicInt(2, 12, 2)).with_prec(4).residue == 7


def poly(coeffs):
    def F(x):
        val = sum((c * x**i for i, c in enumerate(coeffs)), PadicInt(x.p, x.prec, 0))
        der = sum((i * c * x ** (i - 1) for i, c in enumerate(coeffs) if i), PadicInt(x.p, x.prec, 0))
        return val, der

    return F


def test_hensel_examples():
    F = poly([-3, 1])
    assert hensel_lift(F, PadicInt(5, 1, 3), 30).residue == 3
    root = hensel_lift(poly([1, 0, 1]), PadicInt(5, 1, 2), 2)
    assert root.residue == 7 and root.prec == 2


def test_hensel_doubles_digits():
    trace = []
    root = hensel_lift(poly([1, 0, 1]), PadicInt(5, 1, 2), 256, trace)
    assert (root * root + 1).valuation() >= 256
    v0 = trace[0]
    for k, v in enumerate(trace[:-1]):
        assert v >= min(2**k * v0, 256)


def test_hensel_condition():
    # x^2 - 2 has no root in Z_3 and x0 = 1 gives v(F) = 0
    with pytest.raises(HenselConditionFailed):
        hensel_lift(poly([-2, 0, 1]), PadicInt(3, 1, 1), 10)
