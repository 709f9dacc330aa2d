"""Verdicts: apply the criterion to a record and package the evidence.

A record yields NOT_BI_ORDERABLE only when its Alexander polynomial is
non-constant, the route's hypotheses hold (rationally homologically fibered
for knots, H_1-surjectivity for HNN extensions), Sturm counting finds no
positive real root, and a (1+t)^N certificate was found and re-verified.
"""

from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from . import __version__
from .exactnum import LaurentPoly, canonical_or_zero, format_poly, poly_to_json, squarefree_part
from .ingest import KnotRecord, ParseError, load_corpus, record_from_dict
from .realroots import (
    DEFAULT_CAP,
    CapExceeded,
    PositivityCertificate,
    RootInterval,
    count_positive_roots,
    isolate_positive_root,
    polya_certificate,
    verify_positive_combination,
)
from .topology import (
    TopologyError,
    alexander_from_braid,
    alexander_from_presentation,
    alexander_from_seifert,
    genus_from_seifert,
    h1_surjectivity_check,
    hnn_presentation,
    rhf_check,
    rhf_check_seifert,
)

NOT_BI_ORDERABLE = "NOT_BI_ORDERABLE"
INCONCLUSIVE = "INCONCLUSIVE"
NOT_APPLICABLE = "NOT_APPLICABLE"
CAP_EXCEEDED = "CAP_EXCEEDED"
ERROR = "ERROR"
STATUSES = (NOT_BI_ORDERABLE, INCONCLUSIVE, NOT_APPLICABLE, CAP_EXCEEDED, ERROR)

NA_REASONS = ("delta_zero", "not_rhf", "delta_constant", "hypotheses_unverified")

DEFAULT_WIDTH = Fraction(1, 2**20)


@dataclass(frozen=True)
class Config:
    cap: int = DEFAULT_CAP
    width: Fraction = DEFAULT_WIDTH


@dataclass
class Report:
    name: str
    route: str
    status: str
    delta: Optional[LaurentPoly] = None
    rhf: Optional[bool] = None
    evidence: Any = None
    assumptions: list = field(default_factory=list)
    timing_ms: float = 0.0
    version: str = __version__
    # kept for re-verification; not serialized directly
    certificate: Optional[PositivityCertificate] = None
    interval: Optional[RootInterval] = None

    @property
    def reason(self) -> Optional[str]:
        if isinstance(self.evidence, dict):
            return self.evidence.get("reason")
        return None

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "schema": 1,
            "name": self.name,
            "route": self.route,
            "delta": poly_to_json(self.delta) if self.delta is not None else None,
            "rhf": self.rhf,
            "status": self.status,
            "evidence": self.evidence,
            "assumptions": list(self.assumptions),
            "tool_version": self.version,
        }
        if timing:
            out["timing_ms"] = round(self.timing_ms, 3)
        return out


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _root_evidence(delta: LaurentPoly, width: Fraction) -> tuple[dict, RootInterval]:
    count = count_positive_roots(delta)
    iv = isolate_positive_root(delta, width)
    witness = squarefree_part(delta)
    return {
        "kind": "root_interval",
        "positive_root_count": count,
        "lo": _frac(iv.lo),
        "hi": _frac(iv.hi),
        "witness_poly": poly_to_json(witness),
    }, iv


def _certificate_evidence(cert: PositivityCertificate) -> dict:
    return {
        "kind": "positivity_certificate",
        "positive_root_count": 0,
        "polya_exponent": cert.polya_exponent,
        "multiplier": poly_to_json(cert.multiplier),
        "product": poly_to_json(cert.product),
    }


def _root_summary(delta: LaurentPoly) -> dict:
    return {"positive_root_count": count_positive_roots(delta)}


def not_applicable(report: Report, reason: str, detail: str, **extra) -> Report:
    report.status = NOT_APPLICABLE
    report.evidence = {"reason": reason, "detail": detail, **extra}
    return report


def _compute_delta(record: KnotRecord) -> LaurentPoly:
    if record.route == "seifert_matrix":
        return alexander_from_seifert(record.seifert)
    if record.route == "braid":
        return alexander_from_braid(record.braid)
    if record.route == "alexander_poly":
        return canonical_or_zero(record.alexander_poly)
    pres = record.presentation
    if pres is None:
        pres = hnn_presentation(record.hnn)
    return alexander_from_presentation(pres)


def _check_hypotheses(record: KnotRecord, delta: LaurentPoly, report: Report) -> bool:
    """Fill in rhf/assumptions; return False after marking NOT_APPLICABLE."""
    a = report.assumptions
    if record.route == "presentation" and record.hnn is not None:
        surj = h1_surjectivity_check(record.hnn)
        if record.presentation is not None:
            a.append("presentation_is_hnn_extension_asserted")
        a.append("h1_surjectivity:" + ("surjective_both" if surj.surjective_both else "not_surjective"))
        if not surj.surjective_both:
            not_applicable(report, "hypotheses_unverified",
                           "iota images do not span H_1(H;Q) on side(s) "
                           + ",".join(surj.failing_sides),
                           surjectivity=surj.to_json(), root_analysis=_root_summary(delta))
            return False
        return True

    if record.route == "presentation" and record.genus is None:
        not_applicable(report, "hypotheses_unverified",
                       "presentation without HNN data or knot genus",
                       root_analysis=_root_summary(delta))
        return False

    if record.route == "seifert_matrix":
        if not record.seifert.minimal_genus_asserted:
            not_applicable(report, "hypotheses_unverified",
                           "Seifert surface not asserted to be minimal genus",
                           root_analysis=_root_summary(delta))
            return False
        a.append("minimal_genus_asserted")
        genus = genus_from_seifert(record.seifert)
        if record.genus is not None and record.genus != genus:
            raise TopologyError(f"genus {record.genus} conflicts with Seifert dimension {record.seifert.dim}")
        report.rhf = rhf_check_seifert(record.seifert)
    else:
        if record.genus is None:
            not_applicable(report, "hypotheses_unverified", "knot genus not supplied",
                           root_analysis=_root_summary(delta))
            return False
        a.append("genus_asserted")
        if record.route == "presentation":
            a.append("presentation_is_knot_group_asserted")
        genus = record.genus
        report.rhf = rhf_check(delta, genus)

    if not report.rhf:
        not_applicable(report, "not_rhf",
                       f"deg Delta = {delta.span} but 2*genus = {2 * genus}")
        return False

    if record.route == "braid":
        a.append("ambient_s3:braid_closure")
    elif record.flag("ambient_qhs3_asserted") or record.flag("ambient_s3"):
        a.append("ambient_qhs3_asserted")
    else:
        not_applicable(report, "hypotheses_unverified",
                       "ambient rational homology sphere not asserted",
                       root_analysis=_root_summary(delta))
        return False
    return True


def analyze(record: KnotRecord, cap: int = DEFAULT_CAP, width: Fraction = DEFAULT_WIDTH) -> Report:
    start = time.perf_counter()
    route = record.route
    if route == "presentation" and record.hnn is not None:
        route = "presentation+hnn"
    report = Report(name=record.name, route=route, status=NOT_APPLICABLE)
    delta = _compute_delta(record)
    report.delta = delta

    if delta.is_zero():
        not_applicable(report, "delta_zero", "Alexander polynomial vanishes (free module part)")
    elif delta.is_constant():
        not_applicable(report, "delta_constant", "Alexander polynomial is a unit")
        if record.route != "presentation" and record.genus is not None:
            report.rhf = rhf_check(delta, record.genus)
            if not report.rhf:
                report.evidence["reason"] = "not_rhf"
                report.evidence["detail"] = f"deg Delta = 0 but 2*genus = {2 * record.genus}"
        elif record.route == "seifert_matrix" and record.seifert.minimal_genus_asserted:
            report.rhf = rhf_check_seifert(record.seifert)
            if not report.rhf:
                report.evidence["reason"] = "not_rhf"
                report.evidence["detail"] = f"det V = 0 for a genus {record.seifert.dim // 2} surface"
    elif _check_hypotheses(record, delta, report):
        if count_positive_roots(delta) == 0:
            try:
                cert = polya_certificate(delta, cap)
            except CapExceeded:
                report.status = CAP_EXCEEDED
                report.evidence = {"reason": "cap_exceeded", "cap": cap, "positive_root_count": 0}
            else:
                report.status = NOT_BI_ORDERABLE
                report.certificate = cert
                report.evidence = _certificate_evidence(cert)
        else:
            report.status = INCONCLUSIVE
            report.evidence, report.interval = _root_evidence(delta, width)
    check_report(report)
    report.timing_ms = (time.perf_counter() - start) * 1000
    return report


def check_report(report: Report) -> None:
    """Re-verify the evidence a report carries; raises AssertionError if unsound."""
    if report.status == NOT_BI_ORDERABLE:
        cert = report.certificate
        assert report.rhf is True or report.route == "presentation+hnn"
        assert cert is not None and cert.verify(report.delta)
        assert verify_positive_combination(report.delta, cert.multiplier)
    elif report.status == INCONCLUSIVE:
        assert report.interval is not None
        assert report.interval.verify(squarefree_part(report.delta))
    elif report.status == NOT_APPLICABLE:
        assert report.reason in NA_REASONS


def error_report(name: str, exc: Exception) -> Report:
    return Report(name=name, route="unknown", status=ERROR,
                  evidence={"reason": "input_error", "detail": str(exc)})


def analyze_raw(item, index: int, cap: int, width: Fraction) -> Report:
    """Parse and analyze one corpus entry; input errors stay inside the report."""
    name = item.get("name") if isinstance(item, dict) and isinstance(item.get("name"), str) else f"#{index}"
    try:
        record = record_from_dict(item, f"[{index}]")
    except ParseError as exc:
        return error_report(name, exc)
    try:
        return analyze(record, cap, width)
    except (TopologyError, ValueError) as exc:
        return error_report(name, exc)


def _analyze_star(args):
    return analyze_raw(*args)


def run_corpus(path, cap: int = DEFAULT_CAP, jobs: int = 1,
               width: Fraction = DEFAULT_WIDTH) -> tuple[list, dict]:
    """Analyze every record of a corpus file, keeping input order."""
    items = load_corpus(path)
    return run_items(items, cap, jobs, width)


def run_items(items, cap: int = DEFAULT_CAP, jobs: int = 1,
              width: Fraction = DEFAULT_WIDTH) -> tuple[list, dict]:
    args = [(item, i, cap, width) for i, item in enumerate(items)]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_analyze_star, args))
    else:
        reports = [_analyze_star(a) for a in args]
    return reports, summarize(reports)


def summarize(reports) -> dict:
    counts = Counter(r.status for r in reports)
    out = {s: counts.get(s, 0) for s in STATUSES}
    out["total"] = len(reports)
    return out


def report_text(r: Report) -> str:
    lines = [f"{r.name}: {r.status}", f"  route: {r.route}"]
    if r.delta is not None:
        lines.append(f"  delta: {format_poly(r.delta)}")
    if r.rhf is not None:
        lines.append(f"  rhf: {str(r.rhf).lower()}")
    ev = r.evidence or {}
    if ev.get("kind") == "positivity_certificate":
        lines.append(f"  certificate: (1+t)^{ev['polya_exponent']} * delta has nonnegative coefficients")
    elif ev.get("kind") == "root_interval":
        lines.append(f"  positive roots: {ev['positive_root_count']}, one in [{ev['lo']}, {ev['hi']}]")
    elif "reason" in ev:
        lines.append(f"  reason: {ev['reason']} ({ev.get('detail', '')})")
    if r.assumptions:
        lines.append("  assumptions: " + ", ".join(r.assumptions))
    return "\n".join(lines)
