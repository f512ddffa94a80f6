"""Exact rationals and the small number-theoretic helpers the series need.

Rationals are :class:`fractions.Fraction`, which already keeps numerator
and denominator in lowest terms with a positive denominator.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

ExactRational = Fraction


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    if n < 1:
        raise ValueError("n must be positive")
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def valuation(n: int, p: int) -> int:
    """Exponent of ``p`` in the non-zero integer ``n``."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def parse_rational(text: str) -> Fraction:
    """Parse ``"num/den"``, an integer, or a decimal literal."""
    return Fraction(text.strip())


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_to_decimal(q, digits: int = 30) -> str:
    """Certified decimal rendering of a rational."""
    from .ball import digits_to_bits, from_fraction, to_decimal

    return to_decimal(from_fraction(q, digits_to_bits(digits) + 16), digits)[0]
