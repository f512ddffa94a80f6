"""Ball arithmetic over binary floating/fixed point reals.

A :class:`Ball` is ``mid * 2**exp`` with an error radius ``rad * 2**exp``.
Every function here returns a ball guaranteed to contain the exact result
for every point of its inputs.  Precision arguments are in bits and bound
the mantissa length of the result (plus :data:`SLACK`).
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import isqrt

from .errors import DivisorStraddlesZero, NonPositiveArgument

SLACK = 8
# radius is kept within this many bits; mantissa bits below it are noise
RAD_BITS = 32

LOG2_10 = math.log2(10)


class Ball:
    __slots__ = ("mid", "exp", "rad")

    def __init__(self, mid: int, exp: int = 0, rad: int = 0):
        if rad < 0:
            raise ValueError("radius must be non-negative")
        object.__setattr__(self, "mid", int(mid))
        object.__setattr__(self, "exp", int(exp))
        object.__setattr__(self, "rad", int(rad))

    def __setattr__(self, name, value):
        raise AttributeError("Ball is immutable")

    def __repr__(self):
        return f"Ball({self.mid}, {self.exp}, {self.rad})"

    def __str__(self):
        return to_decimal(self)[0]

    @property
    def is_exact(self) -> bool:
        return self.rad == 0

    def center(self) -> Fraction:
        return _dyadic(self.mid, self.exp)

    def radius(self) -> Fraction:
        return _dyadic(self.rad, self.exp)

    def lower(self) -> Fraction:
        return _dyadic(self.mid - self.rad, self.exp)

    def upper(self) -> Fraction:
        return _dyadic(self.mid + self.rad, self.exp)

    def mag(self) -> Fraction:
        """Upper bound of ``|x|`` over the ball."""
        return _dyadic(abs(self.mid) + self.rad, self.exp)

    def mig(self) -> Fraction:
        """Lower bound of ``|x|`` over the ball (0 if it contains 0)."""
        return _dyadic(max(abs(self.mid) - self.rad, 0), self.exp)

    def contains(self, x) -> bool:
        x = Fraction(x)
        return self.lower() <= x <= self.upper()

    def contains_ball(self, other: "Ball") -> bool:
        return self.lower() <= other.lower() and other.upper() <= self.upper()

    def overlaps(self, other: "Ball") -> bool:
        return self.lower() <= other.upper() and other.lower() <= self.upper()

    def contains_zero(self) -> bool:
        return abs(self.mid) <= self.rad

    def is_positive(self) -> bool:
        return self.mid > self.rad

    def is_negative(self) -> bool:
        return -self.mid > self.rad

    def mid_ball(self) -> "Ball":
        return Ball(self.mid, self.exp, 0)

    def width(self) -> Fraction:
        return 2 * self.radius()


def _dyadic(m: int, e: int) -> Fraction:
    if e >= 0:
        return Fraction(m << e)
    return Fraction(m, 1 << -e)


def _top(b: Ball) -> int:
    """Exponent t with |x| < 2**t for every x in ``b``."""
    return b.exp + max(b.mid.bit_length(), b.rad.bit_length(), 1)


def _ceil_shift(x: int, s: int) -> int:
    return -((-x) >> s)


def normalize(mid: int, exp: int, rad: int, prec: int) -> Ball:
    s = max(mid.bit_length() - prec - SLACK, rad.bit_length() - RAD_BITS)
    if s > 0:
        rem = mid & ((1 << s) - 1)
        mid >>= s
        rad = _ceil_shift(rad, s) + (1 if rem else 0)
        exp += s
    return Ball(mid, exp, rad)


def _at_exp(b: Ball, e: int) -> tuple[int, int]:
    """Mantissa and radius of ``b`` re-expressed in units of ``2**e``."""
    if b.exp >= e:
        s = b.exp - e
        return b.mid << s, b.rad << s
    s = e - b.exp
    rem = b.mid & ((1 << s) - 1)
    return b.mid >> s, _ceil_shift(b.rad, s) + (1 if rem else 0)


ZERO = Ball(0)
ONE = Ball(1)


def from_int(n: int) -> Ball:
    return Ball(n)


def from_float(x: float) -> Ball:
    """Exact ball for a binary float."""
    num, den = float(x).as_integer_ratio()
    return Ball(num, -(den.bit_length() - 1))


def from_fraction(q, prec: int) -> Ball:
    q = Fraction(q)
    if q.denominator & (q.denominator - 1) == 0:
        return Ball(q.numerator, -(q.denominator.bit_length() - 1))
    return ball_div(Ball(q.numerator), Ball(q.denominator), prec)


def from_interval(lo, hi, prec: int) -> Ball:
    """Smallest convenient ball containing the rational interval [lo, hi]."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError("empty interval")
    mag = max(abs(lo), abs(hi))
    if mag == 0:
        return ZERO
    top = mag.numerator.bit_length() - mag.denominator.bit_length() + 1
    e = top - prec - SLACK
    c = (lo + hi) / 2
    scaled = c * Fraction(2) ** -e
    mid = math.floor(scaled)
    err = (hi - lo) / 2 + (scaled - mid) * Fraction(2) ** e
    rad = math.ceil(err * Fraction(2) ** -e)
    return normalize(mid, e, rad, prec)


def from_decimal(text: str, prec: int, rad=0) -> Ball:
    """Ball for a decimal literal, optionally widened by ``rad``."""
    q = Fraction(text)
    return from_interval(q - Fraction(rad), q + Fraction(rad), prec)


def inflate(b: Ball, err) -> Ball:
    """Widen ``b`` by the non-negative rational ``err``."""
    err = Fraction(err)
    if err <= 0:
        return b
    units = err * Fraction(2) ** -b.exp
    return Ball(b.mid, b.exp, b.rad + math.ceil(units))


def _inflate_pow2(b: Ball, k: int) -> Ball:
    if k >= b.exp:
        return Ball(b.mid, b.exp, b.rad + (1 << (k - b.exp)))
    return Ball(b.mid, b.exp, b.rad + 1)


def hull(a: Ball, b: Ball, prec: int) -> Ball:
    return from_interval(min(a.lower(), b.lower()), max(a.upper(), b.upper()), prec)


def ball_neg(a: Ball) -> Ball:
    return Ball(-a.mid, a.exp, a.rad)


def ball_abs(a: Ball) -> Ball:
    """Enclosure of ``|x|``; a ball straddling zero maps to ``[0, mag]``."""
    if a.mid >= a.rad:
        return a
    if -a.mid >= a.rad:
        return ball_neg(a)
    m = abs(a.mid) + a.rad
    return Ball(m, a.exp - 1, m)


def ball_add(a: Ball, b: Ball, prec: int) -> Ball:
    if a.mid == 0 and a.rad == 0:
        return normalize(b.mid, b.exp, b.rad, prec)
    if b.mid == 0 and b.rad == 0:
        return normalize(a.mid, a.exp, a.rad, prec)
    top = max(_top(a), _top(b))
    e = max(min(a.exp, b.exp), top - prec - SLACK - 2)
    ma, ra = _at_exp(a, e)
    mb, rb = _at_exp(b, e)
    return normalize(ma + mb, e, ra + rb, prec)


def ball_sub(a: Ball, b: Ball, prec: int) -> Ball:
    return ball_add(a, ball_neg(b), prec)


def ball_mul(a: Ball, b: Ball, prec: int) -> Ball:
    rad = abs(a.mid) * b.rad + abs(b.mid) * a.rad + a.rad * b.rad
    return normalize(a.mid * b.mid, a.exp + b.exp, rad, prec)


def ball_div(a: Ball, b: Ball, prec: int) -> Ball:
    bm = abs(b.mid)
    if bm <= b.rad:
        raise DivisorStraddlesZero("divisor ball contains zero")
    s = max(prec + SLACK + bm.bit_length() - a.mid.bit_length() + 2, 0)
    num = a.mid << s
    q, r = divmod(num, b.mid)
    if a.rad or b.rad:
        err_num = (a.rad * bm + abs(a.mid) * b.rad) << s
        err_den = (bm - b.rad) * bm
        rad = -(-err_num // err_den) + 1
    else:
        rad = 1 if r else 0
    return normalize(q, a.exp - b.exp - s, rad, prec)


def ball_pow_int(a: Ball, n: int, prec: int) -> Ball:
    if n < 0:
        return ball_div(ONE, ball_pow_int(a, -n, prec + 4), prec)
    w = prec + 2 * n.bit_length() + 4
    result = ONE
    base = a
    while n:
        if n & 1:
            result = ball_mul(result, base, w)
        n >>= 1
        if n:
            base = ball_mul(base, base, w)
    return normalize(result.mid, result.exp, result.rad, prec)


def ball_sqrt(a: Ball, prec: int) -> Ball:
    if a.lower() <= 0:
        if a.upper() < 0 or not (a.mid == 0 and a.rad == 0):
            raise NonPositiveArgument("sqrt needs a positive ball")
        return ZERO
    # floor sqrt of the centre at 2*(prec+SLACK) bits, then widen
    w = prec + SLACK + 2
    e = a.exp
    m = a.mid
    shift = 2 * w - m.bit_length()
    if shift > 0:
        shift += (shift + e) & 1
        m <<= shift
        e -= shift
    elif e & 1:
        m <<= 1
        e -= 1
    root = isqrt(m)
    res = Ball(root, e // 2, 1)
    if a.rad:
        # |sqrt(x) - sqrt(c)| <= r / sqrt(c - r)
        lo = a.lower()
        bound = a.radius() / _sqrt_lower(lo)
        res = inflate(res, bound)
    return normalize(res.mid, res.exp, res.rad, prec)


def _sqrt_lower(q: Fraction) -> Fraction:
    """A positive rational lower bound for sqrt(q), q > 0."""
    k = 64 + max(0, q.denominator.bit_length() - q.numerator.bit_length())
    return Fraction(isqrt((q.numerator << (2 * k)) // q.denominator), 1 << k)


def _exp_exact(c: Ball, prec: int) -> Ball:
    """exp of the exact dyadic ``c``: halve, sum Taylor terms, square back."""
    if c.mid == 0:
        return ONE
    top = c.exp + c.mid.bit_length()
    # |c / 2**k| < 2**-red; red ~ sqrt(prec) balances squarings against terms
    red = max(2, isqrt(prec) // 2)
    k = max(0, top + red)
    t = Ball(c.mid, c.exp - k)
    w = prec + k + 2 * prec.bit_length() + 16
    total = ONE
    term = ONE
    n = 0
    while True:
        n += 1
        tw = max(32, w + _top(term))
        term = ball_div(ball_mul(term, t, tw), Ball(n), tw)
        total = ball_add(total, term, w)
        if _top(term) < -w - 2:
            break
    # remainder after term n is at most 2*|t|*|term_n|/(n+1) < |term_n|
    total = _inflate_pow2(total, _top(term))
    for _ in range(k):
        total = ball_mul(total, total, w)
    return normalize(total.mid, total.exp, total.rad, prec)


def ball_exp(a: Ball, prec: int) -> Ball:
    if a.rad == 0:
        return _exp_exact(a, prec)
    r = a.radius()
    if r <= 1:
        e = _exp_exact(a.mid_ball(), prec + 4)
        # e^r - 1 <= r + r^2 for r <= 1
        res = inflate(e, e.mag() * (r + r * r))
        return normalize(res.mid, res.exp, res.rad, prec)
    lo = _exp_exact(Ball(a.mid - a.rad, a.exp), prec + 4)
    hi = _exp_exact(Ball(a.mid + a.rad, a.exp), prec + 4)
    return hull(lo, hi, prec)


def _float_log(b: Ball) -> float:
    m = b.mid
    drop = max(0, m.bit_length() - 53)
    return math.log(m >> drop) + (b.exp + drop) * math.log(2)


def ball_ln(a: Ball, prec: int) -> Ball:
    if a.lower() <= 0:
        raise NonPositiveArgument("ln needs a ball contained in (0, inf)")
    c = a.mid_ball()
    if c.center() == 1:
        res = ZERO
    else:
        w = prec + 16
        y = from_float(_float_log(c))
        bits = 48
        while bits < w:
            bits = min(2 * bits, w)
            wp = bits + 16
            e = _exp_exact(y, wp)
            step = ball_sub(ball_div(c, e, wp), ONE, wp)
            y = ball_add(y, step, wp).mid_ball()
        e = _exp_exact(y, w)
        u = ball_sub(ball_div(c, e, w), ONE, w).mag()
        if u >= Fraction(1, 2):
            raise ArithmeticError("logarithm refinement failed")
        # |ln(1+u)| <= u / (1 - u)
        res = inflate(y, u / (1 - u))
    if a.rad:
        lo = a.lower()
        res = inflate(res, a.radius() / lo)
    return normalize(res.mid, res.exp, res.rad, prec)


def _pow10(e: int) -> Fraction:
    return Fraction(10) ** e


def _floor_log10(q: Fraction) -> int:
    """floor(log10(q)) for q > 0, exactly."""
    e = int(math.floor((q.numerator.bit_length() - q.denominator.bit_length()) / LOG2_10))
    while _pow10(e) > q:
        e -= 1
    while _pow10(e + 1) <= q:
        e += 1
    return e


def _int_to_str(n: int) -> str:
    """``str(n)`` for non-negative ``n`` without the interpreter's digit cap."""
    if n.bit_length() < 10000:
        return str(n)
    k = int(n.bit_length() / LOG2_10 / 2)
    hi, lo = divmod(n, 10**k)
    return _int_to_str(hi) + _int_to_str(lo).rjust(k, "0")


def certified_digits(b: Ball) -> int:
    """Digits after the point whose rounding is within one unit of every point."""
    return to_decimal(b)[1]


def to_decimal(b: Ball, digits: int | None = None) -> tuple[str, int]:
    """Render the centre rounded to the digits the radius certifies.

    Returns ``(text, count)`` with ``count`` digits after the point; the
    printed number is within one unit of its last digit of every point of
    the ball.  Scientific notation is used when ``|x|`` falls outside
    [1e-6, 1e9).
    """
    c, rad = b.center(), b.radius()
    if c == 0 and rad == 0:
        return "0", 0
    if b.contains_zero():
        return "0 +/- " + f"{float(b.mag()):.3e}", 0
    sign = "-" if c < 0 else ""
    mag = abs(c)
    e10 = None
    if not (Fraction(1, 10**6) <= mag < 10**9):
        e10 = _floor_log10(mag)
        mag, rad = mag * _pow10(-e10), rad * _pow10(-e10)
    if rad == 0:
        d = digits if digits is not None else 30
    else:
        # 2 * rad * 10**d <= 1 keeps the rounded centre within one unit
        d = _floor_log10(1 / (2 * rad))
        if digits is not None:
            d = min(d, digits)
    if d < 0:
        return f"{sign}{float(mag):.3g}?" + (f"e{e10:+d}" if e10 is not None else ""), 0
    n = round(mag * _pow10(d))
    if e10 is not None and n >= 10 ** (d + 1):
        n = round(n, -1) // 10
        e10 += 1
    s = _int_to_str(n).rjust(d + 1, "0")
    text = s[: len(s) - d] + ("." + s[len(s) - d:] if d else "")
    return sign + text + (f"e{e10:+d}" if e10 is not None else ""), d


def digits_to_bits(digits: int) -> int:
    return int(math.ceil(digits * LOG2_10))
