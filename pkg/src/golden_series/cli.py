"""Command-line entry point: ``compute``, ``oracle``, ``table`` and ``verify``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain error.

``--terms`` output is the exact truncated sum cut (toward zero) after the
certified digits plus a few more; ``--digits`` output and the constant
table are rounded to nearest, and only printed once every value inside
the error bound rounds to the same string.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import checks
from .analysis import PAPER_ROWS, accuracy_table, rate_bits
from .dyadic import Dyadic, ceil_log10, floor_log10_abs, to_decimal, to_decimal_rounded
from .errors import DomainError
from .oracle import derived_ref
from .series import SeriesKind, evaluate, tail_bound

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3

# extra decimal places shown in --terms mode beyond the certified ones
TERMS_EXTRA_PLACES = 10
# stop doubling K in --digits mode once the tail is this many digits past D
MAX_EXTRA_DIGITS = 60


@dataclass
class OutputRecord:
    n: int
    series: str
    terms: int | None
    digits_requested: int | None
    value: str
    error_bound_exponent: int
    elapsed_ms: float


def _error_exponent(bound: Dyadic, loss: Fraction) -> int:
    """Smallest ``e`` with ``bound + loss <= 10**e``."""
    return ceil_log10(bound.to_fraction() + loss)


def _certified_rounding(value: Dyadic, bound: Dyadic, places: int) -> str | None:
    """Rounded digits shared by every point within ``bound`` of ``value``."""
    lo = to_decimal_rounded(value - bound, places)
    hi = to_decimal_rounded(value + bound, places)
    return lo if lo == hi else None


def _rounded_output(value: Dyadic, bound: Dyadic, places: int) -> tuple[str, int] | None:
    text = _certified_rounding(value, bound, places)
    if text is None:
        return None
    # |text - true value| <= 10**-places / 2
    return text, -places


def compute_terms(n: int, kind: SeriesKind, K: int) -> tuple[str, int]:
    value = evaluate(n, kind, K)
    bound = tail_bound(n, kind, K)
    certified = max(0, -floor_log10_abs(bound))
    places = min(value.exponent, certified + TERMS_EXTRA_PLACES)
    text, inexact = to_decimal(value, places)
    return text, _error_exponent(bound, Fraction(inexact, 10**places))


def initial_terms(n: int, digits: int) -> int:
    """Term count the convergence rate predicts for ``digits`` places."""
    return max(1, math.ceil(digits / (rate_bits(n) * math.log10(2))))


def compute_digits(n: int, kind: SeriesKind, digits: int) -> tuple[str, int, int]:
    """Series value rounded to ``digits`` places, certified by the tail bound.

    Doubles the term count until every point within the tail bound rounds
    to the same string.  Returns ``(text, exponent, K)``.
    """
    K = initial_terms(n, digits)
    limit = Dyadic(1, math.ceil((digits + MAX_EXTRA_DIGITS) * math.log2(10)))
    while True:
        value = evaluate(n, kind, K)
        bound = tail_bound(n, kind, K)
        if bound.to_fraction() <= Fraction(1, 10**digits):
            out = _rounded_output(value, bound, digits)
            if out is not None:
                return (*out, K)
            if bound <= limit:
                loss = Fraction(1, 2 * 10**digits)
                return to_decimal_rounded(value, digits), _error_exponent(bound, loss), K
        K *= 2


def oracle_digits(n: int, kind: SeriesKind, digits: int) -> tuple[str, int]:
    """Certified reference rounded to ``digits`` places."""
    bits = math.ceil(digits * math.log2(10)) + 8
    for _ in range(8):
        ref = derived_ref(kind, n, bits)
        out = _rounded_output(ref.value, ref.error_bound, digits)
        if out is not None:
            return out
        bits *= 2
    loss = Fraction(1, 2 * 10**digits)
    return to_decimal_rounded(ref.value, digits), _error_exponent(ref.error_bound, loss)


def _emit(record: OutputRecord, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(asdict(record)) + "\n")
    else:
        out.write(f"{record.value}\n")
        out.write(f"# |error| <= 1e{record.error_bound_exponent}\n")


def cmd_compute(args, out) -> int:
    kind = SeriesKind.parse(args.series)
    start = time.perf_counter()
    if args.terms is not None:
        text, exp = compute_terms(args.n, kind, args.terms)
        terms = args.terms
    else:
        text, exp, terms = compute_digits(args.n, kind, args.digits)
    ms = (time.perf_counter() - start) * 1e3
    _emit(OutputRecord(args.n, kind.value, terms, args.digits, text, exp, round(ms, 3)),
          args.format, out)
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    kind = SeriesKind.parse(args.target)
    start = time.perf_counter()
    text, exp = oracle_digits(args.n, kind, args.digits)
    ms = (time.perf_counter() - start) * 1e3
    _emit(OutputRecord(args.n, "oracle", None, args.digits, text, exp, round(ms, 3)),
          args.format, out)
    return EXIT_OK


def table_one(places: int = 20) -> list[tuple[int, str]]:
    return [(n, oracle_digits(n, SeriesKind.ALPHA, places)[0]) for n in range(2, 11)]


TABLE2_HEADER = ["n", "k", "predicted", "actual_alpha", "actual_beta", "actual_gap"]


def parse_rows(spec: str) -> list[tuple[int, int]]:
    rows = []
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        n, _, k = item.partition(":")
        rows.append((int(n), int(k)))
    if not rows:
        raise ValueError("no rows given")
    return rows


def cmd_table(args, out) -> int:
    if args.which == 1:
        rows = table_one()
        if args.format == "json":
            out.write(json.dumps([{"n": n, "alpha": v} for n, v in rows]) + "\n")
        elif args.format == "csv":
            w = csv.writer(out, lineterminator="\n")
            w.writerow(["n", "alpha"])
            w.writerows(rows)
        else:
            out.write(f"{'n':>3}  alpha_n\n")
            for n, v in rows:
                out.write(f"{n:>3}  {v}\n")
        return EXIT_OK

    table = accuracy_table(args.rows)
    cells = [[r.n, r.K, r.predicted, r.actual_alpha, r.actual_beta, r.actual_gap] for r in table]
    if args.format == "json":
        out.write(json.dumps([dict(zip(TABLE2_HEADER, c)) for c in cells]) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(TABLE2_HEADER)
        w.writerows(cells)
    else:
        widths = [max(len(h), 6) for h in TABLE2_HEADER]
        out.write("  ".join(h.rjust(w) for h, w in zip(TABLE2_HEADER, widths)) + "\n")
        for c in cells:
            out.write("  ".join(str(v).rjust(w) for v, w in zip(c, widths)) + "\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    results = checks.run_all(args.n_max, args.k_max, args.bits)
    for r in results:
        status = "ok" if r.ok else "FAIL"
        out.write(f"{r.name:<26} {r.checked:>7} checked  {status}\n")
    failed = [r for r in results if not r.ok]
    if failed:
        out.write(f"first counterexample: {failed[0].failure}\n")
        return EXIT_VERIFY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="golden-series",
        description="Generalized golden means from exact Lagrange-inversion series.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="evaluate a truncated series")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--series", choices=["alpha", "beta", "gap"], required=True)
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--terms", type=int)
    g.add_argument("--digits", type=int)
    c.add_argument("--format", choices=["plain", "json"], default="plain")
    c.set_defaults(func=cmd_compute)

    o = sub.add_parser("oracle", help="certified reference value by root finding")
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--digits", type=int, required=True)
    o.add_argument("--target", choices=["alpha", "beta", "gap"], default="alpha")
    o.add_argument("--format", choices=["plain", "json"], default="plain")
    o.set_defaults(func=cmd_oracle)

    t = sub.add_parser("table", help="reproduce the constant or accuracy table")
    t.add_argument("--which", type=int, choices=[1, 2], default=1)
    t.add_argument("--rows", default=None, help='table 2 rows as "n:K,n:K,..."')
    t.add_argument("--format", choices=["plain", "json", "csv"], default="plain")
    t.set_defaults(func=cmd_table)

    v = sub.add_parser("verify", help="run the invariant suites")
    v.add_argument("--n-max", type=int, default=10)
    v.add_argument("--k-max", type=int, default=50)
    v.add_argument("--bits", type=int, default=256)
    v.set_defaults(func=cmd_verify)
    return p


def _validate(parser, args) -> None:
    if args.command == "compute":
        if args.terms is not None and args.terms < 1:
            parser.error("--terms must be >= 1")
        if args.digits is not None and args.digits < 1:
            parser.error("--digits must be >= 1")
    elif args.command == "oracle":
        if args.digits < 1:
            parser.error("--digits must be >= 1")
    elif args.command == "table":
        if args.rows is not None and args.which != 2:
            parser.error("--rows only applies to --which 2")
        try:
            args.rows = parse_rows(args.rows) if args.rows else list(PAPER_ROWS)
        except ValueError:
            parser.error(f"malformed --rows {args.rows!r}")
        if any(n < 2 or k < 1 for n, k in args.rows):
            parser.error("table rows need n >= 2 and K >= 1")
    elif args.command == "verify":
        if args.n_max < 2 or args.k_max < 1 or args.bits < 16:
            parser.error("verify needs --n-max >= 2, --k-max >= 1, --bits >= 16")


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(parser, args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args, out)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def run(argv=None) -> tuple[int, str]:
    """Run the CLI in-process, returning ``(exit_code, stdout_text)``."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
