"""Command-line orchestration.

Subcommands: exponents, sample, scan, weyl, cf, discrepancy, verify.
Reports go to stdout (or --output) as JSON, CSV or text; floats are
printed with 17 significant digits so they round-trip.  Exit codes:
0 success, 2 usage error, 3 computation error, 4 resource error.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from typing import Optional

from . import construction, diophantine, exponents, scan, weyl
from .errors import ResourceLimitError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_COMPUTE = 3
EXIT_RESOURCE = 4

SCHEMA_VERSION = 1

THREADS_ENV = "DUALBASE_THREADS"


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    if v is None:
        return ""
    return str(v)


def _label(v: float) -> str:
    """Short round-trip label for a parameter value (column names)."""
    return repr(float(v))


def _exact_int(text: str) -> int:
    """Integer argument accepting scientific notation (1e9), parsed exactly."""
    try:
        d = Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number")
    if d != d.to_integral_value():
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    return int(d)


@dataclass
class Report:
    command: str
    params: dict
    results: dict
    csv_header: list[str] = field(default_factory=list)
    csv_rows: list[list] = field(default_factory=list)
    text_lines: list[str] = field(default_factory=list)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            doc = {
                "schema_version": SCHEMA_VERSION,
                "command": self.command,
                "params": self.params,
                "results": self.results,
            }
            return json.dumps(doc, indent=2) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            buf.write(",".join(self.csv_header) + "\n")
            for row in self.csv_rows:
                buf.write(",".join(_fmt(v) for v in row) + "\n")
            return buf.getvalue()
        return "\n".join(self.text_lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dualbase",
        description="digit sums in two multiplicatively independent bases",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, default_format):
        p.add_argument("--format", choices=["json", "csv", "text"], default=default_format)
        p.add_argument("--output", help="write the report to this path instead of stdout")

    p = sub.add_parser("exponents", help="all closed-form and optimized constants")
    p.add_argument("--a", type=int, default=2)
    p.add_argument("--b", type=int, default=3)
    p.add_argument("--tau", type=float, default=1.0)
    add_common(p, "json")

    p = sub.add_parser("sample", help="sample the two-digit construction and report digit-sum ratios")
    p.add_argument("--a", type=int, default=2)
    p.add_argument("--b", type=int, default=3)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--k", type=_exact_int, required=True, help="number of digit positions")
    p.add_argument("--count", type=_exact_int, default=100)
    p.add_argument("--seed", type=_exact_int, default=1)
    add_common(p, "csv")

    p = sub.add_parser("scan", help="exhaustive joint digit-sum histogram scan")
    p.add_argument("--a", type=int, default=2)
    p.add_argument("--b", type=int, default=3)
    p.add_argument("--max", type=_exact_int, required=True, help="scan 1..max (accepts 1e9)")
    p.add_argument("--tau", type=float, default=1.0)
    p.add_argument("--eps", type=float, action="append", default=None,
                   help="extra relative tolerances, repeatable")
    p.add_argument("--threads", type=int, default=None,
                   help=f"worker threads (default: ${THREADS_ENV} or 1)")
    p.add_argument("--chunk-size", type=_exact_int, default=scan.DEFAULT_CHUNK_SIZE)
    p.add_argument("--checkpoints", default=None,
                   help="comma-separated x values for snapshot rows (default: decades)")
    p.add_argument("--engine", choices=["vectorized", "counter"], default="vectorized")
    p.add_argument("--save", help="write the final histogram checkpoint here")
    p.add_argument("--resume", help="resume from a checkpoint file")
    add_common(p, "csv")

    p = sub.add_parser("weyl", help="table of shift-averaged exponential sums and their majorant")
    p.add_argument("--m", type=_exact_int, required=True)
    p.add_argument("--a", type=int, default=2)
    p.add_argument("--n", type=_exact_int, required=True, help="number of shifts")
    p.add_argument("--H", type=_exact_int, required=True, help="harmonic cutoff")
    add_common(p, "csv")

    p = sub.add_parser("cf", help="certified continued fraction of log(a)/log(b)")
    p.add_argument("--a", type=int, default=2)
    p.add_argument("--b", type=int, default=3)
    p.add_argument("--terms", type=_exact_int, default=64)
    p.add_argument("--bits", type=_exact_int, default=diophantine.DEFAULT_PRECISION_BITS)
    p.add_argument("--qmax", type=_exact_int, default=None,
                   help="only report effective exponents for q <= qmax")
    add_common(p, "csv")

    p = sub.add_parser("discrepancy", help="exact star discrepancy of the <nu theta> orbit")
    p.add_argument("--a", type=int, default=2)
    p.add_argument("--b", type=int, default=3)
    p.add_argument("--n", type=_exact_int, action="append", required=True,
                   help="orbit length, repeatable")
    p.add_argument("--cd", type=float, default=2.0, help="constant in the convergent bound")
    p.add_argument("--gamma", type=float, default=5.117,
                   help="irrationality exponent for the n^(-1/gamma) reference")
    add_common(p, "csv")

    p = sub.add_parser("verify", help="run the oracle cross-check suites")
    p.add_argument("--fast", action="store_true", help="smaller problem sizes")
    add_common(p, "text")

    return parser


# ---------------------------------------------------------------------------
# command implementations


def _cmd_exponents(args) -> Report:
    rep = exponents.lower_exponents(args.a, args.b, args.tau)
    results = {
        "tau0": rep.tau0,
        "rho1": rep.rho1,
        "rho2": rep.rho2,
        "c1": rep.c1,
        "c2": rep.c2,
        "c0": rep.c0,
        "Lambda": rep.Lambda,
        "M": rep.M,
        "sigma_max": rep.sigma_max,
        "sigma1_a": rep.sigma1_a,
        "sigma1_b": rep.sigma1_b,
    }
    try:
        ub = exponents.upper_exponent(args.a, args.b, args.tau)
        results["upper"] = {
            "swapped": ub.swapped,
            "tau_a": ub.tau_a,
            "tau_b": ub.tau_b,
            "domain": list(ub.domain),
            "lambda_star": ub.lambda_star,
            "mu_star": ub.mu_star,
            "v_star": ub.v_star,
            "w_star": ub.w_star,
            "d1": ub.d1,
            "d2": ub.d2,
            "d0": ub.d0,
            "lambda_star_printed": ub.lambda_star_printed,
            "d0_printed": ub.d0_printed,
        }
    except exponents.ExcludedParameterError:
        results["upper"] = None  # tau equals the balanced ratio
    t, theta_star = exponents.independence_heuristic(args.a, args.b)
    results["heuristic"] = {"t": t, "theta_star": theta_star}

    flat = []
    for key, val in results.items():
        if isinstance(val, dict):
            flat.extend((f"{key}.{k}", v) for k, v in val.items())
        elif val is None:
            flat.append((key, None))
        else:
            flat.append((key, val))
    report = Report(
        command="exponents",
        params={"a": args.a, "b": args.b, "tau": args.tau},
        results=results,
        csv_header=["name", "value"],
        csv_rows=[[k, v if not isinstance(v, list) else ";".join(map(_fmt, v))] for k, v in flat],
    )
    report.text_lines = [f"{k:>24} = {_fmt(v)}" for k, v in flat]
    return report


def _cmd_sample(args) -> Report:
    exp = construction.ratio_experiment(args.a, args.b, args.tau, args.k, args.count, args.seed)
    results = {
        "host_base": exp.host_base,
        "rho": exp.rho,
        "requested": exp.requested,
        "used": exp.used,
        "mean_ratio": exp.mean_ratio,
        "median_ratio": exp.median_ratio,
        "median_abs_dev": exp.median_abs_dev,
        "abs_dev_deciles": list(exp.abs_dev_deciles),
        "s_a": list(exp.s_a),
        "s_b": list(exp.s_b),
        "ratios": list(exp.ratios),
    }
    rows = [[i, sa, sb, r] for i, (sa, sb, r) in enumerate(zip(exp.s_a, exp.s_b, exp.ratios))]
    report = Report(
        command="sample",
        params={"a": args.a, "b": args.b, "tau": args.tau, "k": args.k,
                "count": args.count, "seed": args.seed},
        results=results,
        csv_header=["i", "s_a", "s_b", "ratio"],
        csv_rows=rows,
    )
    report.text_lines = [
        f"host base {exp.host_base}, rho = {_fmt(exp.rho)}",
        f"samples used {exp.used}/{exp.requested}",
        f"mean ratio   {_fmt(exp.mean_ratio)}",
        f"median ratio {_fmt(exp.median_ratio)}",
        f"median |ratio - tau| {_fmt(exp.median_abs_dev)}",
        "deciles of |ratio - tau|: " + " ".join(_fmt(d) for d in exp.abs_dev_deciles),
    ]
    return report


def _default_checkpoints(xmax: int) -> list[int]:
    cps = []
    c = 1000
    while c < xmax:
        cps.append(c)
        c *= 10
    cps.append(xmax)
    return sorted(set(cps))


def _cmd_scan(args) -> Report:
    threads = args.threads
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV, "1"))
    eps_list = args.eps or []
    if args.resume:
        base_hist = scan.load_checkpoint(args.resume)
        if (base_hist.a, base_hist.b) != (args.a, args.b):
            raise ValueError(
                f"checkpoint bases ({base_hist.a},{base_hist.b}) do not match requested"
                f" ({args.a},{args.b})"
            )
        hist = scan.extend_histogram(
            base_hist, args.max, chunk_size=args.chunk_size,
            engine=args.engine, threads=threads,
        )
        checkpoints = [args.max]
        hists = [hist]
    else:
        if args.checkpoints:
            checkpoints = sorted(set(_exact_int(t) for t in args.checkpoints.split(",")))
        else:
            checkpoints = _default_checkpoints(args.max)
        if checkpoints[-1] != args.max:
            checkpoints = sorted(set(checkpoints + [args.max]))
        series = scan.scan_series(
            args.a, args.b, checkpoints,
            chunk_size=args.chunk_size, engine=args.engine, threads=threads,
        )
        hists = series.histograms
        checkpoints = series.checkpoints
    counts_eq = [scan.predicate_counts(h, args.tau, 0.0) for h in hists]
    counts_eps = {e: [scan.predicate_counts(h, args.tau, e) for h in hists] for e in eps_list}
    rows = []
    for i, (x, ceq) in enumerate(zip(checkpoints, counts_eq)):
        slope = None
        if i >= 1 and all(c > 0 for c in counts_eq[: i + 1]):
            slope = scan.exponent_fit(list(zip(checkpoints[: i + 1], counts_eq[: i + 1])))
        row = [x, ceq] + [counts_eps[e][i] for e in eps_list] + [slope]
        rows.append(row)
    slope_eq = rows[-1][-1] if len(rows) > 1 else None
    if args.save:
        scan.save_checkpoint(hists[-1], args.save)
    results = {
        "x": checkpoints[-1],
        "total": hists[-1].total(),
        "checkpoints": checkpoints,
        "counts_eq": counts_eq,
        "counts_eps": {_label(e): v for e, v in counts_eps.items()},
        "fitted_slope": slope_eq,
        "threads": threads,
        "engine": args.engine,
    }
    header = ["x", "count_eq"] + [f"count_eps_{_label(e)}" for e in eps_list] + ["fitted_slope"]
    report = Report(
        command="scan",
        params={"a": args.a, "b": args.b, "max": args.max, "tau": args.tau,
                "eps": eps_list, "threads": threads, "engine": args.engine},
        results=results,
        csv_header=header,
        csv_rows=rows,
    )
    report.text_lines = [",".join(header)] + [",".join(_fmt(v) for v in r) for r in rows]
    return report


def _cmd_weyl(args) -> Report:
    rows = []
    contribs = []
    for h in range(1, args.H + 1):
        s = weyl.weyl_sum(args.m, args.a, args.n, h)
        contribs.append(abs(s) / h)
        rows.append([h, s.real, s.imag, abs(s), abs(s) / h])
    dn = 1.0 / (args.H + 1) + math.fsum(contribs)
    results = {
        "delta_n": dn,
        "rows": [
            {"h": r[0], "re": r[1], "im": r[2], "abs": r[3], "contrib": r[4]} for r in rows
        ],
    }
    report = Report(
        command="weyl",
        params={"m": args.m, "a": args.a, "n": args.n, "H": args.H},
        results=results,
        csv_header=["h", "sigma_re", "sigma_im", "sigma_abs", "contrib"],
        csv_rows=rows,
    )
    report.text_lines = [
        f"{'h':>4} {'|sigma_h|':>20} {'contrib |s|/h':>20}",
        *(f"{r[0]:>4} {r[3]:>20.12g} {r[4]:>20.12g}" for r in rows),
        f"Delta_n = {_fmt(dn)}",
    ]
    return report


def _cmd_cf(args) -> Report:
    table = diophantine.continued_fraction_theta(
        args.a, args.b, max_terms=args.terms, precision_bits=args.bits
    )
    qmax = args.qmax if args.qmax is not None else (table.convergents[-1][1] if table.convergents else 1)
    lam_by_q = dict(diophantine.effective_irrationality(table, qmax))
    rows = []
    for i, (quot, (p, q), (err_lo, err_hi)) in enumerate(
        zip(table.partial_quotients, table.convergents, table.error_bounds)
    ):
        rows.append([i, quot, p, q, float(err_lo), float(err_hi), lam_by_q.get(q)])
    results = {
        "partial_quotients": table.partial_quotients,
        "convergents": [[p, q] for p, q in table.convergents],
        "rational": table.rational,
        "truncated": table.truncated,
        "precision_bits": table.theta.precision_bits,
        "rows": [
            {"i": r[0], "a_i": r[1], "p_i": r[2], "q_i": r[3],
             "err_lo": r[4], "err_hi": r[5], "lambda_eff": r[6]}
            for r in rows
        ],
    }
    report = Report(
        command="cf",
        params={"a": args.a, "b": args.b, "terms": args.terms, "bits": args.bits},
        results=results,
        csv_header=["i", "a_i", "p_i", "q_i", "err_lo", "err_hi", "lambda_eff"],
        csv_rows=rows,
    )
    report.text_lines = [
        f"theta = log({args.a})/log({args.b}), {len(rows)} certified terms"
        + (" (rational)" if table.rational else "")
        + (" (truncated)" if table.truncated else ""),
        *(f"a_{r[0]} = {r[1]:<6} p/q = {r[2]}/{r[3]}" for r in rows[:20]),
    ]
    return report


def _cmd_discrepancy(args) -> Report:
    table = diophantine.continued_fraction_theta(args.a, args.b)
    rows = []
    for n in args.n:
        pts = diophantine.theta_multiples(args.a, args.b, n)
        dstar = diophantine.star_discrepancy(pts)
        bound = diophantine.discrepancy_bound_cf(table, n, args.cd)
        rows.append([n, dstar, bound, n ** (-1.0 / args.gamma)])
    results = {
        "rows": [
            {"n": r[0], "d_star": r[1], "cf_bound": r[2], "gamma_ref": r[3]} for r in rows
        ]
    }
    report = Report(
        command="discrepancy",
        params={"a": args.a, "b": args.b, "n": args.n, "cd": args.cd, "gamma": args.gamma},
        results=results,
        csv_header=["n", "d_star", "cf_bound", "gamma_ref"],
        csv_rows=rows,
    )
    report.text_lines = [
        f"{'n':>10} {'D*_n':>22} {'cf bound':>22} {'n^(-1/gamma)':>22}",
        *(f"{r[0]:>10} {r[1]:>22.12g} {r[2]:>22.12g} {r[3]:>22.12g}" for r in rows),
    ]
    return report


def _cmd_verify(args) -> Report:
    from .verify import run_checks

    checks = run_checks(fast=args.fast)
    all_passed = all(c.passed for c in checks)
    rows = [[c.name, "PASS" if c.passed else "FAIL", c.detail] for c in checks]
    report = Report(
        command="verify",
        params={"fast": args.fast},
        results={
            "all_passed": all_passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks
            ],
        },
        csv_header=["name", "status", "detail"],
        csv_rows=rows,
    )
    report.text_lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}  {c.detail}" for c in checks]
    report.text_lines.append("all checks passed" if all_passed else "SOME CHECKS FAILED")
    if not all_passed:
        raise VerificationFailure(report)
    return report


class VerificationFailure(Exception):
    """Carries the verify report so it can still be emitted before the
    nonzero exit."""

    def __init__(self, report: Report):
        super().__init__("verification checks failed")
        self.report = report


_DISPATCH = {
    "exponents": _cmd_exponents,
    "sample": _cmd_sample,
    "scan": _cmd_scan,
    "weyl": _cmd_weyl,
    "cf": _cmd_cf,
    "discrepancy": _cmd_discrepancy,
    "verify": _cmd_verify,
}


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_error(args, exc: Exception, code: int) -> None:
    sys.stderr.write(f"dualbase {getattr(args, 'command', '?')}: error: {exc}\n")
    if getattr(args, "format", None) == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "command": args.command,
            "error": {"type": type(exc).__name__, "message": str(exc), "exit_code": code},
        }
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        report = _DISPATCH[args.command](args)
    except VerificationFailure as vf:
        _emit(vf.report.render(args.format), args.output)
        sys.stderr.write("dualbase verify: error: some checks failed\n")
        return EXIT_COMPUTE
    except (ResourceLimitError, MemoryError) as exc:
        _emit_error(args, exc, EXIT_RESOURCE)
        return EXIT_RESOURCE
    except (ValueError, ArithmeticError) as exc:
        _emit_error(args, exc, EXIT_COMPUTE)
        return EXIT_COMPUTE
    try:
        _emit(report.render(args.format), args.output)
    except OSError as exc:
        _emit_error(args, exc, EXIT_RESOURCE)
        return EXIT_RESOURCE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
