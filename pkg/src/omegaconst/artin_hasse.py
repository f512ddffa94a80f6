"""The Artin-Hasse exponential E_p(x), built two independent ways.

Exponential form: exp(x + x^p/p + x^(p^2)/p^2 + ...).
Product form: prod over n coprime to p of (1 - x^n)^(-mu(n)/n).

The product is infinite, but the factor for n starts 1 + O(x^n), so factors
with n > N leave the coefficients up to x^N untouched; the finite product
over n <= N is exact to order N.  With p = 1 every n is admitted and the
product collapses to exp(x).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import is_prime, mobius
from .padic import PadicInt, padic_eval_series
from .powser import TruncSeries, ps_deriv, ps_exp, ps_mul, ps_pow_rational


@dataclass(frozen=True)
class ArtinHasseSeries:
    p: int
    order: int
    series: TruncSeries
    form: str  # "exp-sum" or "product"


@dataclass(frozen=True)
class IntegralityReport:
    p: int
    order: int
    passed: bool
    first_failure: int | None

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "order": self.order,
            "passed": self.passed,
            "first_failure": self.first_failure,
        }


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")


def p_power_sum(p: int, order: int) -> TruncSeries:
    """x + x^p/p + x^(p^2)/p^2 + ... truncated at ``order``."""
    coeffs = [Fraction(0)] * (order + 1)
    q = 1
    while q <= order:
        coeffs[q] = Fraction(1, q)
        q *= p
    return TruncSeries(tuple(coeffs))


@lru_cache(maxsize=64)
def ah_exp_form(p: int, order: int) -> ArtinHasseSeries:
    _check_prime(p)
    if order < 1:
        raise ValueError("order must be at least 1")
    return ArtinHasseSeries(p, order, ps_exp(p_power_sum(p, order)), "exp-sum")


def ah_factor(n: int, order: int) -> TruncSeries:
    """(1 - x^n)^(-mu(n)/n) to ``order``."""
    mu = mobius(n)
    if mu == 0:
        return TruncSeries.one(order)
    base = [Fraction(0)] * (order + 1)
    base[0] = Fraction(1)
    if n <= order:
        base[n] = Fraction(-1)
    return ps_pow_rational(TruncSeries(tuple(base)), Fraction(-mu, n))


def ah_product_form(p: int, order: int) -> ArtinHasseSeries:
    """Product form; ``p = 1`` admits every n and gives exp(x)."""
    if p != 1:
        _check_prime(p)
    if order < 1:
        raise ValueError("order must be at least 1")
    result = TruncSeries.one(order)
    for n in range(1, order + 1):
        if p != 1 and n % p == 0:
            continue
        if mobius(n) == 0:
            continue
        result = ps_mul(result, ah_factor(n, order))
    return ArtinHasseSeries(p, order, result, "product")


def ah_integrality_check(s, p: int | None = None) -> IntegralityReport:
    """Scan denominators for divisibility by p.

    ``s`` is an :class:`ArtinHasseSeries` or a bare :class:`TruncSeries`
    (then ``p`` is required).
    """
    if isinstance(s, ArtinHasseSeries):
        series = s.series
        p = s.p if p is None else p
    else:
        series = s
    if p is None or not is_prime(p):
        raise ValueError("integrality is checked against a prime p")
    bad = series.first_non_integral(p)
    return IntegralityReport(p, series.order, bad is None, bad)


def ah_derivative_identity(s: ArtinHasseSeries) -> bool:
    """E' = E * (1 + x^(p-1) + x^(p^2-1) + ...) to order N - 1."""
    n = s.order - 1
    if n < 0:
        return True
    dlog = ps_deriv(p_power_sum(s.p, s.order))
    return ps_deriv(s.series) == ps_mul(s.series.truncate(n), dlog)


def ah_eval(p: int, x: PadicInt) -> PadicInt:
    """E_p(x) for x in pZ_p at the precision of x."""
    v = x.valuation()
    need = max(1, (x.prec - 1) // max(v, 1))
    # round up so nearby precisions share one cached series
    coeffs = ah_exp_form(p, 1 << need.bit_length()).series.coeffs
    return padic_eval_series(coeffs, x)
