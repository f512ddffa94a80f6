"""The real Omega constant: the root of x e^x = 1.

Both solvers iterate on exact dyadic centres and certify every candidate
by enclosing the residual x e^x - 1.  On [1/2, 7/10] the derivative
e^x (1 + x) exceeds 2, so a residual bound r pins the root within r/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .ball import (
    ONE,
    Ball,
    ball_add,
    ball_div,
    ball_exp,
    ball_ln,
    ball_mul,
    ball_neg,
    ball_pow_int,
    ball_sub,
    digits_to_bits,
    from_fraction,
    inflate,
    to_decimal,
)
from .errors import NoConvergence

OMEGA_60_REFERENCE = "0.567143290409783872999968662210355549753815787186512508135131"

_BRACKET = (Fraction(1, 2), Fraction(7, 10))


@dataclass(frozen=True)
class OmegaResult:
    value: Ball
    iterations: int
    residual: Ball
    certified_digits: int
    digits: str
    method: str
    # -log2 of the residual bound after each step
    residual_exponents: list[float] = field(default_factory=list)


def guard_digits(prec: int) -> int:
    return 10 + math.ceil(math.log2(prec))


def _residual(x: Ball, ex: Ball, w: int) -> Ball:
    return ball_sub(ball_mul(x, ex, w), ONE, w)


def _enclose(x: Ball, residual: Ball) -> Ball | None:
    c = x.center()
    if not (_BRACKET[0] <= c <= _BRACKET[1]):
        return None
    return inflate(x, residual.mag() / 2)


def _neg_log2(q: Fraction) -> float:
    if q == 0:
        return math.inf
    return q.denominator.bit_length() - q.numerator.bit_length()


def _solve(prec: int, x0, step, method: str, max_iter: int) -> OmegaResult:
    if prec < 1:
        raise ValueError("prec must be at least 1 digit")
    w = digits_to_bits(prec + guard_digits(prec))
    x = from_fraction(x0, w).mid_ball()
    exponents: list[float] = []
    best = None
    stalled = 0
    for it in range(max_iter + 1):
        ex = ball_exp(x, w)
        res = _residual(x, ex, w)
        rho = res.mag()
        exponents.append(_neg_log2(rho))
        value = _enclose(x, res)
        if value is not None:
            text, count = to_decimal(value, prec)
            if count >= prec:
                return OmegaResult(value, it, res, count, text, method, exponents)
        if best is not None and rho >= best:
            stalled += 1
            if stalled >= 3:
                raise NoConvergence(f"residual stopped shrinking after {it} steps")
        else:
            best, stalled = rho, 0
        x = step(x, ex, w).mid_ball()
    raise NoConvergence(f"no certification within {max_iter} steps")


def _iterate_step(x: Ball, ex: Ball, w: int) -> Ball:
    return ball_div(ball_add(ONE, x, w), ball_add(ONE, ex, w), w)


def _newton_step(x: Ball, ex: Ball, w: int) -> Ball:
    f = _residual(x, ex, w)
    df = ball_mul(ex, ball_add(ONE, x, w), w)
    return ball_sub(x, ball_div(f, df, w), w)


def omega_iterate(prec: int, x0=1, max_iter: int = 500) -> OmegaResult:
    """Omega to ``prec`` certified digits via x -> (1 + x) / (1 + e^x)."""
    return _solve(prec, Fraction(x0), _iterate_step, "iterate", max_iter)


def omega_newton(prec: int, max_iter: int = 500) -> OmegaResult:
    """Omega to ``prec`` certified digits by Newton's method from 1/2."""
    return _solve(prec, Fraction(1, 2), _newton_step, "newton", max_iter)


def _work_prec(b: Ball) -> int:
    return max(64, b.mid.bit_length() + 16)


def minus_log_check(omega: Ball) -> Ball:
    """Enclosure of -ln(omega) - omega, which must contain 0 for Omega."""
    if not (omega.lower() > 0 and omega.upper() < 1):
        raise ValueError("omega must lie inside (0, 1)")
    w = _work_prec(omega)
    return ball_sub(ball_neg(ball_ln(omega, w)), omega, w)


def abel_check(omega: Ball, n_max: int) -> list[Ball]:
    """Enclosures of the n-th derivative of e^(omega x) at x = n, n = 0..n_max."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    w = _work_prec(omega) + 2 * n_max.bit_length()
    out = [ONE]
    for n in range(1, n_max + 1):
        power = ball_pow_int(omega, n, w)
        growth = ball_exp(ball_mul(Ball(n), omega, w), w)
        out.append(ball_mul(power, growth, w))
    return out
