"""Command line interface.

Exit codes: 0 NOT_BI_ORDERABLE (or no positive root / certificate found),
10 INCONCLUSIVE (a positive root exists), 11 NOT_APPLICABLE, 2 input error,
3 certificate search hit the cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .exactnum import format_poly, normalize_canonical
from .ingest import ParseError, parse_poly, parse_record
from .pipeline import (
    CAP_EXCEEDED,
    DEFAULT_WIDTH,
    INCONCLUSIVE,
    NOT_APPLICABLE,
    NOT_BI_ORDERABLE,
    report_text,
    run_corpus,
)
from .pipeline import analyze as analyze_record
from .realroots import (
    DEFAULT_CAP,
    CapExceeded,
    count_positive_roots,
    isolate_positive_root,
    polya_certificate,
)
from .topology import TopologyError

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_INCONCLUSIVE, EXIT_NA = 0, 2, 3, 10, 11
STATUS_EXIT = {
    NOT_BI_ORDERABLE: EXIT_OK,
    INCONCLUSIVE: EXIT_INCONCLUSIVE,
    NOT_APPLICABLE: EXIT_NA,
    CAP_EXCEEDED: EXIT_CAP,
}


def _fraction(text: str) -> Fraction:
    try:
        f = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")
    if f <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return f


def _natural(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biorder",
        description="Certify non-bi-orderability of knot groups from Alexander polynomials.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze one knot record (JSON file)")
    p.add_argument("record")
    p.add_argument("--cap", type=_natural, default=DEFAULT_CAP)
    p.add_argument("--width", type=_fraction, default=DEFAULT_WIDTH)
    p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("roots", help="count positive real roots of a polynomial")
    p.add_argument("poly")
    p.add_argument("--width", type=_fraction, default=DEFAULT_WIDTH)

    p = sub.add_parser("certify", help="search for a (1+t)^N positivity certificate")
    p.add_argument("poly")
    p.add_argument("--cap", type=_natural, default=DEFAULT_CAP)

    p = sub.add_parser("corpus", help="analyze a JSON array of knot records")
    p.add_argument("file")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cap", type=_natural, default=DEFAULT_CAP)
    p.add_argument("--width", type=_fraction, default=DEFAULT_WIDTH)
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    return parser


def _err(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_INPUT


def cmd_analyze(args) -> int:
    try:
        with open(args.record, encoding="utf-8") as fh:
            record = parse_record(fh.read())
        report = analyze_record(record, args.cap, args.width)
    except OSError as exc:
        return _err(str(exc))
    except (ParseError, TopologyError) as exc:
        return _err(str(exc))
    if args.format == "json":
        print(json.dumps(report.to_json(), indent=2, sort_keys=True))
    else:
        print(report_text(report))
    return STATUS_EXIT[report.status]


def _read_poly(text: str):
    p = parse_poly(text)
    if p.is_zero():
        raise ParseError("zero polynomial", 0)
    return normalize_canonical(p)


def cmd_roots(args) -> int:
    try:
        p = _read_poly(args.poly)
    except ParseError as exc:
        return _err(str(exc))
    n = count_positive_roots(p)
    print(f"positive real roots: {n}")
    if n == 0:
        return EXIT_OK
    iv = isolate_positive_root(p, args.width)
    print(f"isolating interval: [{iv.lo}, {iv.hi}]")
    return EXIT_INCONCLUSIVE


def cmd_certify(args) -> int:
    try:
        p = _read_poly(args.poly)
    except ParseError as exc:
        return _err(str(exc))
    if count_positive_roots(p) > 0:
        print("no certificate: polynomial has a positive real root")
        return EXIT_INCONCLUSIVE
    try:
        cert = polya_certificate(p, args.cap)
    except CapExceeded as exc:
        print(f"no certificate: {exc}")
        return EXIT_CAP
    print(f"polya exponent: {cert.polya_exponent}")
    print(f"product: {format_poly(cert.product)}")
    return EXIT_OK


def _corpus_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "route", "status", "delta", "rhf", "evidence", "timing_ms"])
    for r in reports:
        ev = r.evidence or {}
        if ev.get("kind") == "positivity_certificate":
            detail = f"polya_exponent={ev['polya_exponent']}"
        elif ev.get("kind") == "root_interval":
            detail = f"root in [{ev['lo']},{ev['hi']}]"
        else:
            detail = ev.get("reason", "")
        w.writerow([
            r.name, r.route, r.status,
            format_poly(r.delta) if r.delta is not None else "",
            "" if r.rhf is None else str(r.rhf).lower(),
            detail, f"{r.timing_ms:.3f}",
        ])
    return buf.getvalue()


def cmd_corpus(args) -> int:
    try:
        reports, summary = run_corpus(args.file, args.cap, max(1, args.jobs), args.width)
    except OSError as exc:
        return _err(str(exc))
    except ParseError as exc:
        return _err(str(exc))
    if args.format == "json":
        print(json.dumps({"reports": [r.to_json() for r in reports], "summary": summary},
                         indent=2, sort_keys=True))
    elif args.format == "csv":
        sys.stdout.write(_corpus_csv(reports))
    else:
        width = max((len(r.name) for r in reports), default=4)
        for r in reports:
            delta = format_poly(r.delta) if r.delta is not None else "-"
            print(f"{r.name:<{width}}  {r.status:<16}  {delta}")
        print("summary: " + ", ".join(f"{k}={v}" for k, v in summary.items()))
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "roots": cmd_roots,
    "certify": cmd_certify,
    "corpus": cmd_corpus,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return COMMANDS[args.command](args)
