"""Lambert W: the power series for W(x)**k and a real Newton solver.

For |x| < 1/e,

    W(x)**k = sum_{n >= 0} k (-1)**n (n + k)**(n - 1) / n! * x**(n + k).

The ratio of consecutive terms is bounded by |x| e (1 + k/(n + 1)), which
gives a rigorous geometric tail once that bound drops below 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .ball import (
    ONE,
    ZERO,
    Ball,
    ball_add,
    ball_div,
    ball_exp,
    ball_mul,
    ball_pow_int,
    ball_sub,
    digits_to_bits,
    from_float,
    from_fraction,
    from_interval,
    inflate,
    normalize,
)
from .errors import BelowBranchPoint, OutsideRadius


@dataclass(frozen=True)
class WSeriesSpec:
    k: int
    terms: int
    # coeffs[n] multiplies x**(n + k)
    coeffs: tuple[Fraction, ...]

    def series_coeffs(self) -> list[Fraction]:
        """Coefficients indexed by the power of x."""
        return [Fraction(0)] * self.k + list(self.coeffs)


def w_coeff(k: int, n: int) -> Fraction:
    sign = -1 if n % 2 else 1
    return sign * k * Fraction(n + k) ** (n - 1) / math.factorial(n)


def w_series_coeffs(k: int, terms: int) -> WSeriesSpec:
    if k < 1 or terms < 1:
        raise ValueError("need k >= 1 and terms >= 1")
    return WSeriesSpec(k, terms, tuple(w_coeff(k, n) for n in range(terms)))


def _e_bounds(w: int) -> tuple[Fraction, Fraction]:
    e = ball_exp(ONE, w)
    return e.lower(), e.upper()


def w_eval_series(x, k: int, prec: int) -> Ball:
    """Enclosure of W(x)**k from the series, ``prec`` decimal digits."""
    x = Fraction(x)
    if k < 1:
        raise ValueError("k must be positive")
    if x == 0:
        return ZERO
    w = digits_to_bits(prec) + 16
    e_lo, e_hi = _e_bounds(w)
    ax = abs(x)
    if ax * e_hi >= 1:
        raise OutsideRadius(f"|x| = {float(ax)} is not certifiably below 1/e")
    rate = float(ax * e_hi)
    est = int(w / max(-math.log2(rate), 1e-9)) + 1
    target = Fraction(1, 1 << (w + 1))
    w += 2 * est.bit_length() + 8
    term = from_fraction(x**k, w)
    total = term
    n = 1
    term = ball_mul(term, from_fraction(-k * x, w), w)
    while True:
        # |t_{m+1} / t_m| <= |x| e (1 + k/(m+1)) for m >= n
        q = ax * e_hi * (1 + Fraction(k, n + 1))
        if q < 1:
            tail = term.mag() / (1 - q)
            if tail <= target:
                total = inflate(total, tail)
                break
        total = ball_add(total, term, w)
        growth = ball_pow_int(from_fraction(Fraction(n + k + 1, n + k), w), n - 1, w)
        ratio = ball_mul(growth, from_fraction(-x * Fraction(n + k + 1, n + 1), w), w)
        term = ball_mul(term, ratio, w)
        n += 1
    return normalize(total.mid, total.exp, total.rad, digits_to_bits(prec) + 8)


def _seed(x: float) -> float:
    if x < -0.3:
        return -1 + math.sqrt(max(0.0, 2 * (1 + math.e * x)))
    if x < 3:
        w = math.log1p(x)
    else:
        w = math.log(x) - math.log(math.log(x))
    for _ in range(60):
        ew = math.exp(w)
        step = (w * ew - x) / (ew * (1 + w))
        w -= step
        if w <= -1:
            w = -1 + 1e-12
        if abs(step) < 1e-15 * max(1.0, abs(w)):
            break
    return w


def _f(y: Ball, x_end: Fraction, w: int) -> Ball:
    return ball_sub(ball_mul(y, ball_exp(y, w), w), from_fraction(x_end, w), w)


def w_newton_real(x: Ball, prec: int) -> Ball:
    """Enclosure of the standard real branch W(x) for x > -1/e.

    Newton on y e^y = x from a double-precision seed, then certified by a
    sign change of y e^y - x at both ends of a small bracket; y e^y is
    increasing on [-1, inf).
    """
    w = digits_to_bits(prec) + 32
    _, e_hi = _e_bounds(w)
    if x.lower() <= -1 / e_hi:
        raise BelowBranchPoint("x must exceed -1/e by a certified margin")
    if x.mid == 0 and x.rad == 0:
        return ZERO
    c = x.mid_ball()
    y = from_float(_seed(float(x.center())))
    bits = 48
    step_mag = Fraction(1)
    while True:
        bits = min(2 * bits, w)
        wp = bits + 16
        ey = ball_exp(y, wp)
        f = ball_sub(ball_mul(y, ey, wp), c, wp)
        df = ball_mul(ey, ball_add(ONE, y, wp), wp)
        step = ball_div(f, df, wp)
        step_mag = step.mag()
        y = ball_sub(y, step, wp).mid_ball()
        if bits >= w and step_mag < Fraction(1, 1 << (w - 8)):
            break
    yc = y.center()
    delta = 4 * step_mag + Fraction(1, 1 << (w - 4)) + 2 * x.radius()
    for _ in range(12):
        lo = max(yc - delta, Fraction(-1))
        hi = yc + delta
        f_lo = _f(from_fraction(lo, w + 64), x.upper(), w)
        f_hi = _f(from_fraction(hi, w + 64), x.lower(), w)
        if f_lo.upper() <= 0 and f_hi.lower() >= 0:
            return from_interval(lo, hi, w)
        delta *= 16
    raise ArithmeticError("could not certify the Newton bracket")
