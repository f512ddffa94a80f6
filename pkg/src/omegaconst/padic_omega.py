"""The p-adic Omega constant.

W_p is the compositional inverse of x E_p(x) and Omega_p = W_p(p), i.e. the
root of x E_p(x) = p in pZ_p.  Three routes:

* ``series``: revert x E_p(x) exactly, evaluate at p;
* ``hensel``: Newton-lift x E_p(x) - p from x = p (the reference);
* ``paper-iteration``: x -> (p + x) / (1 + E_p(x)) from x = p, measured
  against the Hensel value.  Near the root this map has a unit derivative
  for odd p, so the distance need not shrink; the trace is reported as is.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .artin_hasse import ah_eval, ah_exp_form, _check_prime
from .errors import (
    HenselConditionFailed,
    IntegralityViolation,
    PrecisionExhausted,
    StagnationDetected,
)
from .padic import PadicInt, hensel_lift, padic_eval_series
from .powser import TruncSeries, ps_revert


@dataclass
class PadicOmegaResult:
    p: int
    prec: int
    value: PadicInt
    method: str
    defect: int
    # paper-iteration only: v(x_n - Omega_p) and the precision of x_n
    trace: list[int] | None = None
    trace_prec: list[int] | None = None
    converged: bool = True
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "p": self.p,
            "precN": self.prec,
            "method": self.method,
            "value": self.value.to_json(),
            "defect_valuation": self.defect,
            "converged": self.converged,
        }
        if self.trace is not None:
            out["trace"] = [
                {"step": i, "distance_valuation": v, "precision": n}
                for i, (v, n) in enumerate(zip(self.trace, self.trace_prec))
            ]
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def x_times_ep(p: int, order: int) -> TruncSeries:
    """x E_p(x) to ``order``."""
    return ah_exp_form(p, order - 1).series.shift(1)


def wp_series(p: int, order: int) -> TruncSeries:
    """W_p(x) to ``order``, by reverting x E_p(x)."""
    _check_prime(p)
    if order < 2:
        raise ValueError("order must be at least 2")
    return ps_revert(x_times_ep(p, order))


def verify_defining_identity(p: int, candidate: PadicInt) -> int:
    """v(c E_p(c) - p) at the precision of ``candidate``."""
    if candidate.valuation() < 1:
        raise ValueError("candidate must lie in pZ_p")
    return (candidate * ah_eval(p, candidate) - p).valuation()


def omega_p_series(p: int, prec: int) -> PadicOmegaResult:
    """Omega_p = W_p(p); the x^m term has valuation >= m, so order prec suffices."""
    if prec < 2:
        raise ValueError("precN must be at least 2")
    w = wp_series(p, prec)
    bad = w.first_non_integral(p)
    if bad is not None:
        raise IntegralityViolation(f"W_{p} coefficient {bad} is not {p}-integral")
    value = padic_eval_series(w.coeffs, PadicInt(p, prec, p), order=w.order)
    defect = verify_defining_identity(p, value)
    if defect < prec:
        raise IntegralityViolation(f"defect {defect} below target {prec}")
    return PadicOmegaResult(p, prec, value, "series", defect)


def _xep_and_derivative(p: int):
    def F(x: PadicInt):
        need = max(1, x.prec - 1)
        e = ah_exp_form(p, 1 << need.bit_length()).series.coeffs[: need + 1]
        xe = [Fraction(0)] + list(e)
        dxe = [(m + 1) * c for m, c in enumerate(e)]
        return padic_eval_series(xe, x) - p, padic_eval_series(dxe, x)

    return F


def omega_p_hensel(p: int, prec: int, trace: list | None = None) -> PadicOmegaResult:
    """Root of x E_p(x) = p lifted from x = p."""
    _check_prime(p)
    if prec < 2:
        raise ValueError("precN must be at least 2")
    F = _xep_and_derivative(p)
    x0 = PadicInt(p, prec, p)
    f0, df0 = F(x0)
    if f0.valuation() < 2 or not df0.is_unit():
        raise HenselConditionFailed("x E_p(x) - p does not satisfy Hensel's condition at p")
    value = hensel_lift(F, x0, prec, trace)
    return PadicOmegaResult(p, prec, value, "hensel", verify_defining_identity(p, value))


def paper_iteration_step(p: int, x: PadicInt) -> PadicInt:
    """(p + x) / (1 + E_p(x)), dropping v(1 + E_p(x)) digits when it is no unit."""
    den = 1 + ah_eval(p, x)
    num = p + x
    d = den.valuation()
    if d == 0:
        return num / den
    if d >= x.prec or x.prec - d < 1:
        raise PrecisionExhausted(f"denominator has valuation {d} at precision {x.prec}")
    if num.valuation() < d:
        raise PrecisionExhausted("quotient leaves Z_p")
    n = x.prec - d
    m = p**n
    q = (num.residue // p**d) * pow(den.residue // p**d, -1, m)
    return PadicInt(p, n, q)


def omega_p_paper_iteration(p: int, prec: int, max_steps: int = 50) -> PadicOmegaResult:
    """Run x_{n+1} = (p + x_n) / (1 + E_p(x_n)), x_0 = p, and trace v(x_n - Omega_p).

    Returns on convergence to ``prec`` digits; otherwise raises
    :class:`StagnationDetected` (or :class:`PrecisionExhausted` when the
    p = 2 divisions use up the precision) carrying the partial result.
    """
    if prec < 2 or max_steps < 1:
        raise ValueError("need precN >= 2 and max_steps >= 1")
    ref = omega_p_hensel(p, prec).value
    x = PadicInt(p, prec, p)
    trace = [(x - ref).valuation()]
    precs = [x.prec]

    def result(converged: bool) -> PadicOmegaResult:
        defect = verify_defining_identity(p, x) if x.valuation() >= 1 else 0
        return PadicOmegaResult(
            p, prec, x, "paper-iteration", defect, trace, precs, converged
        )

    for _ in range(max_steps):
        try:
            x = paper_iteration_step(p, x)
        except PrecisionExhausted as exc:
            raise PrecisionExhausted(str(exc), result(False)) from None
        trace.append((x - ref).valuation())
        precs.append(x.prec)
        if trace[-1] >= prec:
            return result(True)
    res = result(False)
    raise StagnationDetected(
        f"distance to Omega_{p} after {max_steps} steps has valuation {trace[-1]} < {prec}",
        res,
    )
