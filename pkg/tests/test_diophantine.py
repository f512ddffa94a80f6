from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from omegaconst.ball import ball_sqrt, from_decimal, from_int
from omegaconst.diophantine import (
    CSV_COLUMNS,
    best_approx_bruteforce,
    cf_expand,
    convergents,
    diagnostics_csv,
    irrationality_diagnostics,
    semiconvergents,
)
from omegaconst.errors import PrecisionGateFailed
from omegaconst.omega_real import omega_iterate

OMEGA_60 = "0.567143290409783872999968662210355549753815787186512508135131"


def omega_ball(digits):
    return omega_iterate(digits).value


def test_golden_and_sqrt2():
    s5 = ball_sqrt(from_int(5), 140)
    phi = (s5.lower() + 1) / 2, (s5.upper() + 1) / 2
    cf = cf_expand(phi, 500)
    assert cf.exhausted
    assert len(cf.partial_quotients) > 60
    assert set(cf.partial_quotients) == {1}
    cf2 = cf_expand(ball_sqrt(from_int(2), 140), 500)
    assert cf2.partial_quotients[0] == 1 and set(cf2.partial_quotients[1:]) == {2}


def test_omega_from_printed_digits():
    c = F(OMEGA_60)
    cf = cf_expand((c - F(1, 10**60), c + F(1, 10**60)), 1000)
    assert cf.partial_quotients[:6] == [0, 1, 1, 3, 4, 2]
    assert cf.exhausted


def test_rational_is_exact():
    cf = cf_expand(F(4, 7), 10)
    assert cf.partial_quotients == [0, 1, 1, 3]
    assert cf.stop_reason == "exact"


def test_convergents_examples():
    assert convergents([0, 1]) == [(0, 1), (1, 1)]
    assert convergents([0, 1, 1, 3])[-1] == (4, 7)
    assert convergents([1, 2, 2]) == [(1, 1), (3, 2), (7, 5)]


@given(st.fractions(min_value=0, max_value=50, max_denominator=10**9))
def test_cf_of_rational_reconstructs(q):
    cf = cf_expand(q, 200)
    assert cf.stop_reason == "exact"
    p, d = cf.convergents[-1]
    assert F(p, d) == q


def test_forty_terms_and_prefix_stability():
    a = cf_expand(omega_ball(100), 10_000)
    b = cf_expand(omega_ball(200), 10_000)
    assert a.certified >= 40
    assert b.partial_quotients[: a.certified] == a.partial_quotients


def test_alternation_and_sandwich():
    x = omega_ball(100)
    cf = cf_expand(x, 40)
    fine = omega_ball(240)
    recs = irrationality_diagnostics(fine, cf)
    for n, (p, q) in enumerate(cf.convergents):
        sign = (F(p, q) - fine.center()) > 0
        assert sign == (n % 2 == 1)
    for r, nxt in zip(recs, recs[1:]):
        q, q1 = r.q_n, nxt.q_n
        assert F(1, q * (q + q1)) < r.delta_n.lower()
        assert r.delta_n.upper() < F(1, q * q1)


def test_delta_four_sevenths():
    recs = irrationality_diagnostics(omega_ball(100), cf_expand(omega_ball(100), 5))
    r = recs[3]
    assert (r.p_n, r.q_n) == (4, 7)
    assert F(428, 10**5) < r.delta_n.lower() < r.delta_n.upper() < F(429, 10**5)
    assert recs[0].mu_eff is None and recs[0].r_n is None


def test_diagnostics_gate():
    coarse = from_decimal(OMEGA_60[:12], 128, F(1, 10**10))
    cf = cf_expand(omega_ball(100), 30)
    with pytest.raises(PrecisionGateFailed) as info:
        irrationality_diagnostics(coarse, cf)
    assert info.value.n > 3


def test_running_max_is_monotone():
    x = omega_ball(100)
    recs = irrationality_diagnostics(omega_ball(240), cf_expand(x, 40))
    seen = [r.running_max_r for r in recs if r.running_max_r is not None]
    assert seen == sorted(seen)
    assert seen[-1] == max(r.r_n for r in recs if r.r_n is not None)


def test_csv():
    x = omega_ball(60)
    text = diagnostics_csv(irrationality_diagnostics(omega_ball(150), cf_expand(x, 10)))
    lines = text.strip().split("\n")
    assert lines[0].split(",") == CSV_COLUMNS
    assert len(lines) == 11


def test_best_approx_examples():
    x = omega_ball(60)
    assert (4, 7) in best_approx_bruteforce(x, 7)
    assert best_approx_bruteforce(x, 1) == [(1, 1)]
    s5 = ball_sqrt(from_int(5), 200)
    phi = (s5.center() + 1) / 2
    qs = [q for _, q in best_approx_bruteforce(phi, 13)]
    assert set(qs) <= {1, 2, 3, 5, 8, 13}


def test_best_approx_among_semiconvergents():
    x = omega_ball(100)
    cf = cf_expand(x, 60)
    allowed = set(semiconvergents(cf)) | set(cf.convergents)
    for pq in best_approx_bruteforce(x, 10_000):
        assert pq in allowed


def test_best_approx_gate():
    with pytest.raises(PrecisionGateFailed):
        best_approx_bruteforce(from_decimal("0.5671", 64, F(1, 10**4)), 1000)
