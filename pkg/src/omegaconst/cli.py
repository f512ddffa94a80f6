"""Command-line front end.

Exit codes: 0 success, 2 usage or precondition error, 3 an honest
inconclusive outcome (precision exhausted, stagnation); reports are still
printed in the last case.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .artin_hasse import ah_exp_form, ah_integrality_check, ah_product_form
from .ball import ball_pow_int, digits_to_bits, from_fraction, to_decimal
from .diophantine import (
    cf_expand,
    diagnostics_csv,
    diagnostics_rows,
    irrationality_diagnostics,
)
from .errors import OmegaError, PrecisionExhausted, StagnationDetected
from .exact import format_rational, is_prime, parse_rational
from .lambert import w_eval_series, w_newton_real, w_series_coeffs
from .omega_real import abel_check, minus_log_check, omega_iterate, omega_newton
from .padic_omega import omega_p_hensel, omega_p_paper_iteration, omega_p_series

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omegaconst",
        description="Omega constant, Lambert W, Artin-Hasse exponential, p-adic Omega "
        "and continued-fraction diagnostics.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON (default: text)")
    common.add_argument("--out", metavar="FILE", help="write the report to FILE instead of stdout")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("omega", parents=[common], help="certified digits of Omega")
    p.add_argument("--digits", type=_positive, default=60, help="certified decimal digits (default 60)")
    p.add_argument("--method", choices=["iterate", "newton", "both"], default="both",
                   help="solver (default both)")
    p.add_argument("--x", type=_rational, default=Fraction(1), metavar="NUM/DEN",
                   help="starting point of the iterate method (default 1)")
    p.add_argument("--terms", type=int, default=10, metavar="T",
                   help="check the Abel derivative identity for n <= T (default 10)")

    p = sub.add_parser("lambert", parents=[common], help="Lambert W series and evaluation")
    p.add_argument("--k", type=_positive, default=1, help="power k of W(x)^k (default 1)")
    p.add_argument("--terms", type=_positive, default=10, help="series coefficients to print (default 10)")
    p.add_argument("--x", type=_rational, default=None, metavar="NUM/DEN", help="evaluate W(x)^k at x")
    p.add_argument("--digits", type=_positive, default=30, help="evaluation digits (default 30)")
    p.add_argument("--method", choices=["series", "newton"], default=None,
                   help="evaluation route (default: series when |x| < 1/3, else newton)")

    p = sub.add_parser("artin-hasse", parents=[common], help="Artin-Hasse exponential E_p(x)")
    p.add_argument("--p", type=int, required=True, help="prime p, or 1 for the product identity")
    p.add_argument("--order", type=_positive, default=20, help="truncation order (default 20)")
    p.add_argument("--method", choices=["exp", "product", "both"], default="both",
                   help="construction (default both, compared coefficientwise)")

    p = sub.add_parser("padic-omega", parents=[common], help="the p-adic Omega constant")
    p.add_argument("--p", type=int, required=True, help="prime p")
    p.add_argument("--prec", type=int, default=20, help="p-adic precision N (default 20)")
    p.add_argument("--method", choices=["series", "hensel", "paper-iteration"], default="hensel",
                   help="route (default hensel)")
    p.add_argument("--max-steps", type=_positive, default=50,
                   help="step budget for paper-iteration (default 50)")

    p = sub.add_parser("cf", parents=[common], help="continued fraction of Omega and diagnostics")
    p.add_argument("--digits", type=_positive, default=100, help="digits of the enclosure (default 100)")
    p.add_argument("--terms", type=_positive, default=40, help="partial quotients wanted (default 40)")
    p.add_argument("--csv", action="store_true", help="emit the diagnostics table as CSV")
    return parser


def _config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k != "out"}
    for k, v in cfg.items():
        if isinstance(v, Fraction):
            cfg[k] = format_rational(v)
    return cfg


# --- subcommands -----------------------------------------------------------

def run_omega(args):
    methods = ["iterate", "newton"] if args.method == "both" else [args.method]
    results = []
    for m in methods:
        r = omega_iterate(args.digits, args.x) if m == "iterate" else omega_newton(args.digits)
        results.append(r)
    ref = results[0].value
    minus_log = minus_log_check(ref)
    abel = abel_check(ref, max(args.terms, 0))
    payload = {
        "results": [
            {
                "method": r.method,
                "digits": r.digits,
                "certified_digits": r.certified_digits,
                "iterations": r.iterations,
                "residual_bound": f"{float(r.residual.mag()):.3e}",
                "residual_exponents": [None if e == float("inf") else e for e in r.residual_exponents],
            }
            for r in results
        ],
        "enclosures_overlap": all(r.value.overlaps(ref) for r in results),
        "minus_log_contains_zero": minus_log.contains(0),
        "abel_n_max": len(abel) - 1,
        "abel_all_contain_one": all(b.contains(1) for b in abel),
    }
    lines = []
    for r in payload["results"]:
        lines.append(f"omega ({r['method']}): {r['digits']}")
        lines.append(
            f"  certified digits {r['certified_digits']}, iterations {r['iterations']}, "
            f"|x e^x - 1| <= {r['residual_bound']}"
        )
    lines.append(f"enclosures overlap: {payload['enclosures_overlap']}")
    lines.append(f"-ln(omega) - omega encloses 0: {payload['minus_log_contains_zero']}")
    lines.append(
        f"Abel identity (omega e^omega)^n encloses 1 for n <= {payload['abel_n_max']}: "
        f"{payload['abel_all_contain_one']}"
    )
    return payload, lines, EXIT_OK


def run_lambert(args):
    spec = w_series_coeffs(args.k, args.terms)
    payload = {
        "k": args.k,
        "coefficients": [f"{c.numerator}/{c.denominator}" for c in spec.coeffs],
        "first_power": args.k,
    }
    lines = [f"W(x)^{args.k} = x^{args.k} * (sum_n c_n x^n), n < {args.terms}:"]
    lines += [f"  c_{n} = {format_rational(c)}" for n, c in enumerate(spec.coeffs)]
    if args.x is not None:
        method = args.method
        x = args.x
        bits = digits_to_bits(args.digits) + 32
        if method is None:
            method = "series" if abs(x) < Fraction(1, 3) else "newton"
        if method == "series":
            val = w_eval_series(x, args.k, args.digits)
        else:
            w = w_newton_real(from_fraction(x, bits), args.digits)
            val = w if args.k == 1 else ball_pow_int(w, args.k, bits)
        text, count = to_decimal(val, args.digits)
        payload["evaluation"] = {
            "x": format_rational(x),
            "method": method,
            "value": text,
            "certified_digits": count,
        }
        lines.append(f"W({format_rational(x)})^{args.k} = {text}  [{method}, {count} certified digits]")
    return payload, lines, EXIT_OK


def run_artin_hasse(args):
    p = args.p
    if p != 1 and not is_prime(p):
        raise UsageError("p must be prime (or 1 for the product identity)")
    if p == 1 and args.method != "product":
        if args.method == "exp":
            raise UsageError("the exponential form needs a prime p")
        args.method = "product"
    forms = {}
    if args.method in ("exp", "both"):
        forms["exp-sum"] = ah_exp_form(p, args.order)
    if args.method in ("product", "both"):
        forms["product"] = ah_product_form(p, args.order)
    first = next(iter(forms.values()))
    payload = {
        "p": p,
        "order": args.order,
        "coefficients": first.series.to_json_list(),
        "forms": sorted(forms),
    }
    lines = [f"E_{p}(x) = {first.series.to_str()}"]
    if len(forms) == 2:
        agree = forms["exp-sum"].series == forms["product"].series
        payload["forms_agree"] = agree
        lines.append(f"exp-sum and product forms agree to order {args.order}: {agree}")
    if p != 1:
        rep = ah_integrality_check(first)
        payload["integrality"] = rep.to_json()
        lines.append(
            f"{p}-integral: {rep.passed}"
            + ("" if rep.passed else f" (first failure at index {rep.first_failure})")
        )
    return payload, lines, EXIT_OK


def run_padic_omega(args):
    p = args.p
    if not is_prime(p):
        raise UsageError("p must be prime")
    if args.prec < 2:
        raise UsageError("--prec must be at least 2")
    code = EXIT_OK
    verdict = None
    if args.method == "series":
        res = omega_p_series(p, args.prec)
    elif args.method == "hensel":
        res = omega_p_hensel(p, args.prec)
    else:
        try:
            res = omega_p_paper_iteration(p, args.prec, args.max_steps)
            verdict = "converged"
        except StagnationDetected as exc:
            res, verdict, code = exc.result, "stagnation", EXIT_INCONCLUSIVE
        except PrecisionExhausted as exc:
            res, verdict, code = exc.result, "precision-exhausted", EXIT_INCONCLUSIVE
            res.notes.append(str(exc))
    payload = res.to_json()
    lines = [
        f"Omega_{p} mod {p}^{res.value.prec} ({res.method}): {res.value.to_str()}",
        f"  residue {res.value.residue}",
        f"  defect valuation v(x E_p(x) - p) = {res.defect}",
    ]
    if verdict is not None:
        payload["verdict"] = verdict
        lines.append(f"  verdict: {verdict} after {len(res.trace) - 1} steps")
        lines.append("  distance valuations v(x_n - Omega_p): " + " ".join(map(str, res.trace)))
        for note in res.notes:
            lines.append(f"  note: {note}")
    return payload, lines, code


def run_cf(args):
    x = omega_iterate(args.digits).value
    cf = cf_expand(x, args.terms)
    # diagnostics need the convergents well separated from the enclosure
    fine = omega_iterate(2 * args.digits + 20).value
    records = irrationality_diagnostics(fine, cf)
    code = EXIT_INCONCLUSIVE if cf.certified < args.terms else EXIT_OK
    payload = {
        "label": "empirical diagnostics; no claim about the irrationality measure",
        "partial_quotients": cf.partial_quotients,
        "certified_terms": cf.certified,
        "stop_reason": cf.stop_reason,
        "diagnostics": diagnostics_rows(records),
        "running_max_r": records[-1].running_max_r if records else None,
    }
    if args.csv:
        lines = ["# " + payload["label"]] + diagnostics_csv(records).rstrip("\n").split("\n")
        return payload, lines, code
    lines = [
        f"Omega CF from a {args.digits}-digit enclosure: {cf.certified} certified terms "
        f"({cf.stop_reason})",
        "[" + ", ".join(map(str, cf.partial_quotients)) + "]",
        "empirical diagnostics (not a proof of anything):",
        f"{'n':>4} {'a_n':>5} {'q_n':>24} {'delta_n':>14} {'mu_eff':>10} {'r_n':>10} {'max r':>10}",
    ]
    for r in records:
        q = str(r.q_n) if len(str(r.q_n)) <= 24 else f"{float(r.q_n):.6e}"
        lines.append(
            f"{r.n:>4} {r.a_n:>5} {q:>24} {float(r.delta_n.center()):>14.6e} "
            f"{'' if r.mu_eff is None else r.mu_eff:>10} {'' if r.r_n is None else r.r_n:>10} "
            f"{'' if r.running_max_r is None else r.running_max_r:>10}"
        )
    return payload, lines, code


RUNNERS = {
    "omega": run_omega,
    "lambert": run_lambert,
    "artin-hasse": run_artin_hasse,
    "padic-omega": run_padic_omega,
    "cf": run_cf,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    config = _config(args)
    try:
        payload, lines, code = RUNNERS[args.subcommand](args)
    except UsageError as exc:
        print(f"omegaconst {args.subcommand}: error: {exc}", file=stderr)
        return EXIT_USAGE
    except (OmegaError, ValueError) as exc:
        print(f"omegaconst {args.subcommand}: error: {exc}", file=stderr)
        return EXIT_USAGE
    if args.json:
        text = json.dumps({"config": config, "result": payload}, indent=2, sort_keys=True)
    else:
        echo = " ".join(f"{k}={v}" for k, v in sorted(config.items()))
        text = "\n".join([f"# {echo}"] + lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=stdout)
    return code


def main() -> None:
    sys.exit(run())
