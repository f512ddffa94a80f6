"""Certified continued fractions and irrationality diagnostics for Omega.

Partial quotients are extracted by running the Gauss map on both ends of
an enclosure and emitting a quotient only while the ends agree.  The
diagnostics tabulate, per convergent p/q,

    mu_eff = -ln|x - p/q| / ln q        and        r = -ln|x - p/q| / ln(q)^2,

the second being an empirical proxy for the constant in a bound of the
form |x - p/q| > exp(-C ln(q)^2).  These are measurements, not proofs.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction

from .ball import Ball, ball_div, ball_ln, ball_neg, from_int, from_interval
from .errors import PrecisionGateFailed


@dataclass(frozen=True)
class CFExpansion:
    partial_quotients: list[int]
    convergents: list[tuple[int, int]]
    # "max_terms", "precision_exhausted" or "exact"
    stop_reason: str

    @property
    def certified(self) -> int:
        """Every emitted quotient is certified; this is their count."""
        return len(self.partial_quotients)

    @property
    def exhausted(self) -> bool:
        return self.stop_reason == "precision_exhausted"


@dataclass(frozen=True)
class DiagnosticRecord:
    n: int
    a_n: int
    p_n: int
    q_n: int
    delta_n: Ball
    mu_eff: float | None
    r_n: float | None
    running_max_r: float | None


def _endpoints(x) -> tuple[Fraction, Fraction]:
    if isinstance(x, Ball):
        return x.lower(), x.upper()
    if isinstance(x, tuple):
        return Fraction(x[0]), Fraction(x[1])
    q = Fraction(x)
    return q, q


def cf_expand(x, max_terms: int) -> CFExpansion:
    """Certified partial quotients of every number in the enclosure ``x``.

    ``x`` is a :class:`Ball`, an exact rational, or a ``(lo, hi)`` pair.
    """
    lo, hi = _endpoints(x)
    quotients: list[int] = []
    reason = "max_terms"
    while len(quotients) < max_terms:
        a = math.floor(lo)
        if math.floor(hi) != a:
            reason = "precision_exhausted"
            break
        quotients.append(a)
        f_lo, f_hi = lo - a, hi - a
        if f_lo == 0:
            reason = "exact" if f_hi == 0 else "precision_exhausted"
            break
        # the Gauss map reverses orientation
        lo, hi = 1 / f_hi, 1 / f_lo
    return CFExpansion(quotients, convergents(quotients), reason)


def convergents(cf) -> list[tuple[int, int]]:
    quotients = cf.partial_quotients if isinstance(cf, CFExpansion) else list(cf)
    out = []
    p0, p1 = 0, 1
    q0, q1 = 1, 0
    for a in quotients:
        p0, p1 = p1, a * p1 + p0
        q0, q1 = q1, a * q1 + q0
        if math.gcd(p1, q1) != 1:
            raise ArithmeticError(f"convergent {p1}/{q1} is not in lowest terms")
        out.append((p1, q1))
    return out


def semiconvergents(cf) -> list[tuple[int, int]]:
    """(k p_{n-1} + p_{n-2}) / (k q_{n-1} + q_{n-2}) for 1 <= k <= a_n."""
    quotients = cf.partial_quotients if isinstance(cf, CFExpansion) else list(cf)
    out = []
    p0, p1 = 0, 1
    q0, q1 = 1, 0
    for a in quotients:
        for k in range(1, a + 1):
            out.append((k * p1 + p0, k * q1 + q0))
        if a == 0:
            out.append((p0, q0))
        p0, p1 = p1, a * p1 + p0
        q0, q1 = q1, a * q1 + q0
    return out


def _sig6(b: Ball) -> float:
    return float(f"{float(b.center()):.6g}")


def irrationality_diagnostics(x: Ball, cf: CFExpansion) -> list[DiagnosticRecord]:
    """Per-convergent distance enclosures and the mu_eff / r statistics.

    Every convergent must be at least ten radii away from the centre of
    ``x``; otherwise :class:`PrecisionGateFailed` names the first one.
    """
    lo, hi = x.lower(), x.upper()
    rad = x.radius()
    records = []
    running = None
    for n, ((p, q), a) in enumerate(zip(cf.convergents, cf.partial_quotients)):
        r = Fraction(p, q)
        d1, d2 = lo - r, hi - r
        if (d1 > 0) != (d2 > 0) or d1 == 0 or d2 == 0:
            raise PrecisionGateFailed(n, f"convergent {n} ({p}/{q}) lies inside the enclosure")
        d_lo, d_hi = sorted((abs(d1), abs(d2)))
        if 10 * rad >= d_lo:
            raise PrecisionGateFailed(n, f"radius too large to measure |x - {p}/{q}|")
        delta = from_interval(d_lo, d_hi, 128)
        mu = r_n = None
        if q > 1:
            neg_ln_delta = ball_neg(ball_ln(delta, 64))
            ln_q = ball_ln(from_int(q), 64)
            mu = _sig6(ball_div(neg_ln_delta, ln_q, 64))
            r_n = _sig6(ball_div(ball_div(neg_ln_delta, ln_q, 64), ln_q, 64))
            running = r_n if running is None else max(running, r_n)
        records.append(DiagnosticRecord(n, a, p, q, delta, mu, r_n, running))
    return records


def best_approx_bruteforce(x, q_max: int) -> list[tuple[int, int]]:
    """All p/q, q <= q_max, that strictly improve |q x - p| over smaller q.

    Decisions use the centre of ``x``; the radius must be below
    1/(2 q_max^2) so the centre stands in for every point of the ball.
    """
    if isinstance(x, Ball):
        if x.radius() >= Fraction(1, 2 * q_max * q_max):
            raise PrecisionGateFailed(q_max, "enclosure too wide for this q_max")
        c = x.center()
    else:
        c = Fraction(x)
    out = []
    best = None
    for q in range(1, q_max + 1):
        p = math.floor(q * c + Fraction(1, 2))
        err = abs(q * c - p)
        if best is None or err < best:
            out.append((p, q))
            best = err
    return out


def delta_interval_text(b: Ball) -> str:
    return f"[{float(b.lower()):.6e}, {float(b.upper()):.6e}]"


CSV_COLUMNS = ["n", "a_n", "p_n", "q_n", "delta_lo", "delta_hi", "mu_eff", "r_n", "running_max_r"]


def diagnostics_rows(records: list[DiagnosticRecord]) -> list[dict]:
    return [
        {
            "n": r.n,
            "a_n": r.a_n,
            "p_n": str(r.p_n),
            "q_n": str(r.q_n),
            "delta_lo": f"{float(r.delta_n.lower()):.6e}",
            "delta_hi": f"{float(r.delta_n.upper()):.6e}",
            "mu_eff": r.mu_eff,
            "r_n": r.r_n,
            "running_max_r": r.running_max_r,
        }
        for r in records
    ]


def diagnostics_csv(records: list[DiagnosticRecord]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in diagnostics_rows(records):
        writer.writerow(row)
    return buf.getvalue()
