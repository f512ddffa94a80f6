"""Truncated formal power series with exact rational coefficients.

A :class:`TruncSeries` of order ``N`` stores ``c_0 .. c_N`` and stands for a
series known modulo ``x**(N+1)``.  Every operation returns the order it can
actually prove; nothing is padded with unverified zeros.

Products go through integer vectors over a common denominator packed into a
single big integer (Kronecker substitution), which keeps the quadratic
number of rational operations out of the inner loop.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    CompositionInnerConstantNonzero,
    ConstantTermNotOne,
    NonzeroConstantTerm,
    ZeroLinearCoefficient,
)
from .exact import format_rational

try:
    import gmpy2

    def _bigmul(a: int, b: int) -> int:
        return int(gmpy2.mpz(a) * gmpy2.mpz(b))

except ImportError:  # pragma: no cover

    def _bigmul(a: int, b: int) -> int:
        return a * b


@dataclass(frozen=True)
class TruncSeries:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least the constant term")
        cs = self.coeffs
        if type(cs) is not tuple or not all(type(c) is Fraction for c in cs):
            object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in cs))

    @classmethod
    def of(cls, coeffs: Iterable, order: int | None = None) -> "TruncSeries":
        cs = [Fraction(c) for c in coeffs]
        if order is not None:
            if len(cs) > order + 1:
                cs = cs[: order + 1]
            cs += [Fraction(0)] * (order + 1 - len(cs))
        return cls(tuple(cs))

    @classmethod
    def x(cls, order: int) -> "TruncSeries":
        return cls.of([0, 1], order)

    @classmethod
    def one(cls, order: int) -> "TruncSeries":
        return cls.of([1], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TruncSeries(self.coeffs[: order + 1])

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            return TruncSeries((self.coeffs[0] + Fraction(other),) + self.coeffs[1:])
        n = min(self.order, other.order)
        return TruncSeries(tuple(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return ps_mul(self, other)
        k = Fraction(other)
        return TruncSeries(tuple(c * k for c in self.coeffs))

    __rmul__ = __mul__

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by ``x**k``; the known order grows by ``k``."""
        return TruncSeries((Fraction(0),) * k + self.coeffs)

    def valuation(self) -> int:
        """Index of the first non-zero coefficient (order + 1 if none)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return len(self.coeffs)

    def first_non_integral(self, p: int) -> int | None:
        """Index of the first coefficient whose denominator is divisible by p."""
        for i, c in enumerate(self.coeffs):
            if c.denominator % p == 0:
                return i
        return None

    def to_str(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            s = format_rational(c)
            if i == 0:
                terms.append(s)
            elif i == 1:
                terms.append(f"{s}*x")
            else:
                terms.append(f"{s}*x^{i}")
        body = " + ".join(terms).replace("+ -", "- ") or "0"
        return f"{body} + O(x^{self.order + 1})"

    def to_json_list(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    def to_json(self) -> str:
        return json.dumps(self.to_json_list())

    @classmethod
    def from_json_list(cls, items: Sequence[str]) -> "TruncSeries":
        return cls.of(Fraction(s) for s in items)

    def __str__(self):
        return self.to_str()


def _to_ints(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = math.lcm(*(c.denominator for c in coeffs))
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _offset(nbytes: int, count: int) -> int:
    """Sum of 2**(8*nbytes-1) placed in each of ``count`` slots."""
    return int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * count, "little")


def _pack(vals: Sequence[int], nbytes: int) -> int:
    half = 1 << (8 * nbytes - 1)
    raw = b"".join((v + half).to_bytes(nbytes, "little") for v in vals)
    return int.from_bytes(raw, "little") - _offset(nbytes, len(vals))


def _unpack(n: int, nbytes: int, count: int, slots: int) -> list[int]:
    half = 1 << (8 * nbytes - 1)
    n += _offset(nbytes, slots)
    raw = n.to_bytes(nbytes * slots, "little")
    out = [
        int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
        for i in range(min(count, slots))
    ]
    return out + [0] * (count - len(out))


def int_poly_mul(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """Coefficients 0..n of the product of two integer polynomials."""
    a, b = list(a[: n + 1]), list(b[: n + 1])
    ma = max((abs(v) for v in a), default=0)
    mb = max((abs(v) for v in b), default=0)
    if ma == 0 or mb == 0:
        return [0] * (n + 1)
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 2
    nbytes = (bits + 7) // 8
    prod = _bigmul(_pack(a, nbytes), _pack(b, nbytes))
    return _unpack(prod, nbytes, n + 1, len(a) + len(b) - 1)


def _sparse(f: TruncSeries) -> list[tuple[int, Fraction]]:
    return [(i, c) for i, c in enumerate(f.coeffs) if c]


def ps_mul(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    n = min(f.order, g.order)
    sf, sg = _sparse(f.truncate(n)), _sparse(g.truncate(n))
    if min(len(sf), len(sg)) <= 4:
        out = [Fraction(0)] * (n + 1)
        if len(sf) > len(sg):
            sf, sg = sg, sf
        for i, a in sf:
            for j, b in sg:
                if i + j > n:
                    break
                out[i + j] += a * b
        return TruncSeries(tuple(out))
    fa, da = _to_ints(f.coeffs[: n + 1])
    ga, db = _to_ints(g.coeffs[: n + 1])
    den = da * db
    return TruncSeries(tuple(Fraction(c, den) for c in int_poly_mul(fa, ga, n)))


def ps_pow_int(f: TruncSeries, k: int) -> TruncSeries:
    if k < 0:
        return ps_pow_int(ps_inv(f), -k)
    result = TruncSeries.one(f.order)
    base = f
    while k:
        if k & 1:
            result = ps_mul(result, base)
        k >>= 1
        if k:
            base = ps_mul(base, base)
    return result


def ps_inv(f: TruncSeries) -> TruncSeries:
    """Multiplicative inverse; needs a non-zero constant term."""
    c0 = f.coeffs[0]
    if c0 == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    sf = _sparse(f)[1:]
    g = [1 / c0]
    for m in range(1, f.order + 1):
        s = Fraction(0)
        for j, c in sf:
            if j > m:
                break
            s += c * g[m - j]
        g.append(-s / c0)
    return TruncSeries(tuple(g))


def ps_deriv(f: TruncSeries) -> TruncSeries:
    """Derivative; known to one order less than ``f``."""
    if f.order == 0:
        return TruncSeries((Fraction(0),))
    return TruncSeries(tuple(i * c for i, c in enumerate(f.coeffs) if i))


def ps_integrate(f: TruncSeries, c0=0) -> TruncSeries:
    return TruncSeries((Fraction(c0),) + tuple(c / (i + 1) for i, c in enumerate(f.coeffs)))


def ps_exp(f: TruncSeries) -> TruncSeries:
    """exp(f) from (exp f)' = f' exp f; ``f`` must vanish at 0."""
    if f.coeffs[0] != 0:
        raise NonzeroConstantTerm("exp needs a series without constant term")
    terms = [(j, j * c) for j, c in _sparse(f)]
    g = [Fraction(1)]
    for m in range(1, f.order + 1):
        s = Fraction(0)
        for j, jc in terms:
            if j > m:
                break
            s += jc * g[m - j]
        g.append(s / m)
    return TruncSeries(tuple(g))


def ps_log(f: TruncSeries) -> TruncSeries:
    """log(f) for ``f`` with constant term 1."""
    if f.coeffs[0] != 1:
        raise ConstantTermNotOne("log needs constant term 1")
    if f.order == 0:
        return TruncSeries((Fraction(0),))
    return ps_integrate(ps_mul(ps_deriv(f), ps_inv(f.truncate(f.order - 1))))


def ps_pow_rational(f: TruncSeries, alpha) -> TruncSeries:
    """f**alpha via g' f = alpha f' g; ``f`` must start with 1."""
    if f.coeffs[0] != 1:
        raise ConstantTermNotOne("rational power needs constant term 1")
    alpha = Fraction(alpha)
    sf = _sparse(f)[1:]
    g = [Fraction(1)]
    for m in range(1, f.order + 1):
        s = Fraction(0)
        for j, c in sf:
            if j > m:
                break
            s += (alpha * j - (m - j)) * c * g[m - j]
        g.append(s / m)
    return TruncSeries(tuple(g))


def ps_compose(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    """f(g(x)) by Horner's rule; ``g`` must vanish at 0."""
    if g.coeffs[0] != 0:
        raise CompositionInnerConstantNonzero("inner series must have zero constant term")
    n = min(f.order, g.order)
    g = g.truncate(n)
    h = TruncSeries.of([f.coeffs[n]], n)
    for i in range(n - 1, -1, -1):
        h = ps_mul(h, g) + f.coeffs[i]
    return h


def ps_revert(f: TruncSeries) -> TruncSeries:
    """Compositional inverse of ``f`` (f(0) = 0, f'(0) != 0).

    Newton on g -> g - (f(g) - x) g', which doubles the known order per
    step because f'(g) = 1/g'.  The result is checked by composition.
    """
    if f.coeffs[0] != 0:
        raise NonzeroConstantTerm("reversion needs f(0) = 0")
    if f.order < 1 or f.coeffs[1] == 0:
        raise ZeroLinearCoefficient("reversion needs an invertible linear term")
    N = f.order
    g = TruncSeries.of([0, 1 / f.coeffs[1]])
    n = 1
    while n < N:
        n2 = min(2 * n, N)
        g2 = TruncSeries.of(g.coeffs, n2)
        err = ps_compose(f.truncate(n2), g2) - TruncSeries.x(n2)
        g = g2 - ps_mul(err, TruncSeries.of(ps_deriv(g2).coeffs, n2))
        n = n2
    if ps_compose(f, g) != TruncSeries.x(N):
        raise ArithmeticError("reversion failed its composition check")
    return g


def ps_revert_naive(f: TruncSeries) -> TruncSeries:
    """Reversion by undetermined coefficients, one coefficient at a time."""
    if f.coeffs[0] != 0:
        raise NonzeroConstantTerm("reversion needs f(0) = 0")
    if f.order < 1 or f.coeffs[1] == 0:
        raise ZeroLinearCoefficient("reversion needs an invertible linear term")
    N = f.order
    c1 = f.coeffs[1]
    g = [Fraction(0), 1 / c1] + [Fraction(0)] * (N - 1)
    for m in range(2, N + 1):
        # with g_m = 0 the x^m coefficient of f(g) is what g_m must cancel
        comp = ps_compose(f, TruncSeries(tuple(g)))
        g[m] = -comp.coeffs[m] / c1
    return TruncSeries(tuple(g))
