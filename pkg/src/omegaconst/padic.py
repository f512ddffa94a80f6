"""p-adic integers at finite precision.

A :class:`PadicInt` is a residue modulo ``p**prec``.  Mixed-precision
operations truncate to the smaller precision, so no result ever claims
digits its inputs did not determine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import (
    ArgumentNotInMaximalIdeal,
    CoefficientNotPIntegral,
    DerivativeNotUnitEnough,
    HenselConditionFailed,
    NoConvergence,
    NonUnit,
    PrimeMismatch,
)


@dataclass(frozen=True)
class PadicInt:
    p: int
    prec: int
    residue: int

    def __post_init__(self):
        if self.prec < 1:
            raise ValueError("precision must be positive")
        object.__setattr__(self, "residue", self.residue % self.p**self.prec)

    @property
    def modulus(self) -> int:
        return self.p**self.prec

    def _coerce(self, other) -> "PadicInt":
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise PrimeMismatch(f"p={self.p} and p={other.p} cannot be combined")
            return other
        if isinstance(other, Fraction):
            return rational_to_padic(other, self.p, self.prec)
        return PadicInt(self.p, self.prec, int(other))

    def __add__(self, other):
        o = self._coerce(other)
        return PadicInt(self.p, min(self.prec, o.prec), self.residue + o.residue)

    __radd__ = __add__

    def __neg__(self):
        return PadicInt(self.p, self.prec, -self.residue)

    def __sub__(self, other):
        o = self._coerce(other)
        return PadicInt(self.p, min(self.prec, o.prec), self.residue - o.residue)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return PadicInt(self.p, min(self.prec, o.prec), self.residue * o.residue)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return padic_inv(self) ** -n
        return PadicInt(self.p, self.prec, pow(self.residue, n, self.modulus))

    def __truediv__(self, other):
        return self * padic_inv(self._coerce(other))

    def __eq__(self, other):
        """Equality of residues at the common precision."""
        if isinstance(other, PadicInt):
            if other.p != self.p:
                return False
            n = min(self.prec, other.prec)
            m = self.p**n
            return (self.residue - other.residue) % m == 0
        if isinstance(other, int):
            return (self.residue - other) % self.modulus == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.prec, self.residue))

    def valuation(self) -> int:
        return padic_valuation(self)

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def with_prec(self, prec: int) -> "PadicInt":
        """Reduce to ``prec`` digits (``prec <= self.prec``)."""
        if prec > self.prec:
            raise ValueError("cannot invent digits; use lift() for an arbitrary lift")
        return PadicInt(self.p, prec, self.residue)

    def lift(self, prec: int) -> "PadicInt":
        """The same residue read at a higher precision (one particular lift)."""
        return PadicInt(self.p, prec, self.residue)

    def digits(self) -> list[int]:
        """Base-p digits, least significant first."""
        out = []
        r = self.residue
        for _ in range(self.prec):
            r, d = divmod(r, self.p)
            out.append(d)
        return out

    def to_str(self) -> str:
        return " ".join(map(str, self.digits())) + f" (base {self.p})"

    def to_json(self) -> dict:
        return {"p": self.p, "precN": self.prec, "digits": self.digits()}

    @classmethod
    def from_json(cls, obj: dict) -> "PadicInt":
        p = obj["p"]
        residue = sum(d * p**i for i, d in enumerate(obj["digits"]))
        return cls(p, obj["precN"], residue)

    def __str__(self):
        return self.to_str()


def padic_valuation(a: PadicInt) -> int:
    r = a.residue
    if r == 0:
        return a.prec
    v = 0
    while r % a.p == 0:
        r //= a.p
        v += 1
    return v


def padic_inv(a: PadicInt) -> PadicInt:
    if not a.is_unit():
        raise NonUnit(f"{a.residue} is not a unit mod {a.p}")
    return PadicInt(a.p, a.prec, pow(a.residue, -1, a.modulus))


def rational_to_padic(q, p: int, prec: int) -> PadicInt:
    q = Fraction(q)
    if q.denominator % p == 0:
        raise CoefficientNotPIntegral(f"{q} is not {p}-integral")
    m = p**prec
    return PadicInt(p, prec, q.numerator * pow(q.denominator, -1, m))


def padic_eval_series(
    coeffs: Sequence, x: PadicInt, order: int | None = None
) -> PadicInt:
    """Evaluate ``sum c_m x**m`` for p-integral ``c_m`` and ``v(x) >= 1``.

    Terms with ``m * v(x) >= prec`` vanish and are skipped.  If ``order`` is
    given the coefficients are only known up to ``x**order`` and the result
    precision is capped at ``(order + 1) * v(x)``.
    """
    p, n = x.p, x.prec
    v = x.valuation()
    if v == 0:
        raise ArgumentNotInMaximalIdeal("series argument must have positive valuation")
    last = (n - 1) // v
    prec = n
    if order is not None and order < last:
        prec = min(n, (order + 1) * v)
        last = order
    last = min(last, len(coeffs) - 1)
    m = p**n
    acc = 0
    for c in reversed(coeffs[: last + 1]):
        c = Fraction(c)
        if c.denominator % p == 0:
            raise CoefficientNotPIntegral(f"coefficient {c} is not {p}-integral")
        cr = c.numerator * pow(c.denominator, -1, m) if c.denominator != 1 else c.numerator
        acc = (acc * x.residue + cr) % m
    return PadicInt(p, prec, acc)


def hensel_lift(
    F: Callable[[PadicInt], tuple[PadicInt, PadicInt]],
    x0: PadicInt,
    target: int,
    trace: list | None = None,
) -> PadicInt:
    """Newton-lift an approximate root of ``F`` to ``target`` digits.

    ``F(x)`` returns ``(F(x), F'(x))`` at the precision of ``x``.  Requires
    ``v(F(x0)) > 2 v(F'(x0))``.  Each step roughly doubles the number of
    certified digits and the working precision follows it.  If ``trace`` is
    a list, ``v(F(x_k))`` is appended per step.
    """
    p = x0.p
    cur = x0.lift(max(target, x0.prec))
    fx, dfx = F(cur)
    d = dfx.valuation()
    if d >= dfx.prec:
        raise DerivativeNotUnitEnough("derivative vanishes at the working precision")
    full = target + d
    if cur.prec < full:
        cur = cur.lift(full)
        fx, dfx = F(cur)
    v = fx.valuation()
    if v <= 2 * d:
        raise HenselConditionFailed(f"v(F(x0)) = {v} is not greater than 2 v(F'(x0)) = {2 * d}")
    max_steps = math.ceil(math.log2(max(target, 2))) + 2
    for _ in range(max_steps + 1):
        if trace is not None:
            trace.append(v)
        if v - d >= target:
            return PadicInt(p, target, cur.residue)
        # the step yields about 2(v - d) digits, so F must be known that far
        wp = min(full, 2 * v + 2)
        if cur.prec < wp:
            cur = cur.lift(wp)
            fx, dfx = F(cur)
        md = p ** (wp - d)
        delta = (fx.residue // p**d) * pow(dfx.residue // p**d, -1, md) % md
        cur = PadicInt(p, wp, cur.residue - delta)
        fx, dfx = F(cur)
        if dfx.valuation() != d:
            raise DerivativeNotUnitEnough("derivative valuation changed during lifting")
        v = fx.valuation()
    raise NoConvergence(f"Hensel lifting did not reach {target} digits in {max_steps} steps")
