"""Command-line front end.

Exit codes: 0 ok, 1 a verified inequality failed, 2 parse or usage error,
3 the requested norm is infinite.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .errors import MarcinkiewiczError, ParseError
from .exact import (
    INFINITY,
    as_rational,
    format_extent,
    format_number,
    is_infinite,
    to_decimal_string,
)
from .gauge import PiecewiseLinearGauge, big_psi_at, classify, doubling_profile, ratio_at
from .norms import lorentz_norm, marcinkiewicz_norm, natural_norm, weak_lp_norm
from .step import head_integral_profile, submajorization_margin, submajorizes
from .textio import read_function, read_gauge
from .verify import SuiteConfig, remark_counterexample, run_suite

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_INFINITE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _rational_arg(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational p/q, got {text!r}") from None


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="marcinkiewicz", description="Exact Marcinkiewicz-space computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def out_flag(p):
        p.add_argument("--out", choices=("text", "csv", "json-lines"), default="text")

    p = sub.add_parser("norm", help="norm of a step function")
    p.add_argument("--gauge", help="gauge file (not needed for weaklp)")
    p.add_argument("--fn", required=True, help="function file")
    p.add_argument("--variant", choices=("plain", "natural", "lorentz", "weaklp"), default="plain")
    p.add_argument("--delta", type=_rational_arg)
    p.add_argument("--p", type=_rational_arg)
    p.add_argument("--precision", type=_positive_int, default=128)
    out_flag(p)

    p = sub.add_parser("classify", help="doubling-condition classification of a gauge")
    p.add_argument("--gauge", required=True)
    out_flag(p)

    p = sub.add_parser("submajorize", help="decide whether --fn is submajorized by --by")
    p.add_argument("--fn", required=True)
    p.add_argument("--by", required=True)
    p.add_argument("--up-to", type=_rational_arg)
    out_flag(p)

    p = sub.add_parser("verify", help="run the randomized inequality suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=_positive_int, default=100)
    p.add_argument("--gauge", action="append", default=[], help="restrict gauges to these files")
    p.add_argument("--precision", type=_positive_int, default=128)
    p.add_argument("--max-pieces", type=_positive_int, default=6)

    p = sub.add_parser("curve", help="sampled curve data")
    p.add_argument("--gauge", required=True)
    p.add_argument("--fn")
    p.add_argument("--what", choices=("head", "ratio", "bigpsi"), default="bigpsi")
    p.add_argument("--samples", type=int, default=16)
    p.add_argument("--exact", action="store_true", help="print exact values instead of decimals")
    p.add_argument("--digits", type=_positive_int, default=12, help="significant digits of decimal output")
    out_flag(p)

    p = sub.add_parser("remark", help="the min(2t, 1) counterexample")
    p.add_argument("--slope", type=_rational_arg, default=Fraction(2))
    out_flag(p)
    return parser


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------

def _emit_rows(rows, out: str, stream):
    if out == "text":
        for k, v in rows:
            stream.write(f"{k} = {v}\n")
    elif out == "csv":
        w = csv.writer(stream, lineterminator="\n")
        w.writerow(("key", "value"))
        w.writerows(rows)
    else:
        stream.write(json.dumps(dict(rows)) + "\n")


def _emit_table(header, rows, out: str, stream):
    if out == "json-lines":
        for r in rows:
            stream.write(json.dumps(dict(zip(header, r))) + "\n")
    else:
        w = csv.writer(stream, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _norm(args, stream) -> int:
    f = read_function(args.fn)
    if args.variant == "weaklp":
        if args.p is None:
            raise UsageError("--variant weaklp needs --p")
        result = weak_lp_norm(f, args.p)
    else:
        if not args.gauge:
            raise UsageError(f"--variant {args.variant} needs --gauge")
        psi = read_gauge(args.gauge)
        if args.variant == "natural":
            if args.delta is None:
                raise UsageError("--variant natural needs --delta")
            result = natural_norm(f, psi, args.delta)
        elif args.variant == "lorentz":
            result = lorentz_norm(f, psi)
        else:
            result = marcinkiewicz_norm(f, psi)
    _emit_rows(result.rows(args.precision), args.out, stream)
    return EXIT_OK if result.finite else EXIT_INFINITE


def _classify(args, stream) -> int:
    report = classify(read_gauge(args.gauge))
    rows = [(k, v) for k, v in (line.split(" = ", 1) for line in report.to_text().splitlines())]
    _emit_rows(rows, args.out, stream)
    return EXIT_OK


def _submajorize(args, stream) -> int:
    f, g = read_function(args.fn), read_function(args.by)
    up_to = INFINITY if args.up_to is None else args.up_to
    ok = submajorizes(g, f, up_to)
    margin, where = submajorization_margin(g, f, up_to)
    rows = [("submajorized", "yes" if ok else "no"), ("margin", format_number(margin)),
            ("location", format_extent(where))]
    _emit_rows(rows, args.out, stream)
    return EXIT_OK


def _verify(args, stream) -> int:
    pool = tuple(read_gauge(path) for path in args.gauge)
    config = SuiteConfig(seed=args.seed, cases=args.cases, max_pieces=args.max_pieces,
                         gauge_pool=pool, precision=args.precision)
    report = run_suite(config)
    stream.write(report.to_text())
    return EXIT_VIOLATION if report.violations else EXIT_OK


def _remark(args, stream) -> int:
    results = remark_counterexample(args.slope)
    rows = []
    for r in results:
        value = r.margin if r.name != "remark.verdict" else next(n for n in r.notes).split("=", 1)[1]
        rows.append((r.name.split(".", 1)[1], value if isinstance(value, str) else format_number(value)))
        rows.append((r.name.split(".", 1)[1] + "_status", r.status))
    _emit_rows(rows, args.out, stream)
    return EXIT_VIOLATION if any(r.status == "VIOLATED" for r in results) else EXIT_OK


def curve_points(psi, what: str, samples: int, f=None) -> list:
    """``(t, value)`` at every exact breakpoint and ``samples`` evenly spaced interior points.

    The range is ``[0, gamma]`` for head integrals, ``(0, gamma]`` for Psi and
    ``(0, gamma/2]`` for the doubling ratio; on ``(0, inf)`` it stops at twice
    the last breakpoint.
    """
    if what == "ratio":
        profile = doubling_profile(psi)
        end, breaks = profile.end, set(profile.points())
        fn = lambda t: ratio_at(psi, t)
    elif what == "bigpsi":
        end = psi.gamma
        breaks = set(psi.profile.points()) if isinstance(psi, PiecewiseLinearGauge) else set()
        fn = lambda t: big_psi_at(psi, t)
    else:
        if f is None:
            raise UsageError("--what head needs --fn")
        h = head_integral_profile(f)
        end, breaks = f.gamma, set(h.points()) | {Fraction(0)}
        fn = h.extended
    if is_infinite(end):
        end = 2 * max(breaks | {Fraction(1, 2)})
    ts = {t for t in breaks if t < end} | {end}
    ts |= {end * Fraction(i, samples + 1) for i in range(1, samples + 1)}
    return [(t, fn(t)) for t in sorted(ts)]


def _curve(args, stream) -> int:
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    psi = read_gauge(args.gauge)
    f = read_function(args.fn) if args.fn else None
    points = curve_points(psi, args.what, args.samples, f)
    render = format_number if args.exact else (lambda x: to_decimal_string(x, args.digits))
    rows = [(render(t), render(v)) for t, v in points]
    if args.out == "text":
        for t, v in rows:
            stream.write(f"{t},{v}\n")
    else:
        _emit_table(("t", "value"), rows, args.out, stream)
    return EXIT_OK


COMMANDS = {
    "norm": _norm,
    "classify": _classify,
    "submajorize": _submajorize,
    "verify": _verify,
    "curve": _curve,
    "remark": _remark,
}


def main(argv=None, stream=None) -> int:
    stream = stream or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    # build the whole report before writing so errors never leave partial output
    buffer = io.StringIO()
    try:
        code = COMMANDS[args.command](args, buffer)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_USAGE
    except (UsageError, MarcinkiewiczError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    stream.write(buffer.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
