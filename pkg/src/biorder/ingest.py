"""Text and JSON formats: polynomials, braids, presentations, knot records."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .exactnum import LaurentPoly, format_poly, poly_to_json
from .topology import (
    BraidWord,
    GroupPresentation,
    HnnData,
    SeifertMatrix,
    TopologyError,
)

SCHEMA_VERSION = 1


class ParseError(ValueError):
    """Malformed input; ``where`` is a character offset or a JSON field path."""

    def __init__(self, message: str, where: Any = None):
        self.message = message
        self.where = where
        if where is None:
            super().__init__(message)
        elif isinstance(where, int):
            super().__init__(f"{message} (at position {where})")
        else:
            super().__init__(f"{where}: {message}")


# -- polynomials -----------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\s*/\s*\d+)?)|(?P<t>t)|(?P<op>\*\*|[-+*^()\{\}])|(?P<bad>\S))"
)


def _tokenize_poly(text: str):
    pos, out = 0, []
    text = text.replace("−", "-")
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group('bad')!r}", start)
        if kind == "op" and m.group("op") == "**":
            out.append(("op", "^", start))
        else:
            out.append((kind, m.group(kind), start))
        pos = m.end()
    return out


class _PolyParser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize_poly(text)
        self.i = 0

    def peek(self, kind=None, value=None):
        if self.i >= len(self.toks):
            return None
        tok = self.toks[self.i]
        if kind and tok[0] != kind:
            return None
        if value and tok[1] != value:
            return None
        return tok

    def take(self, kind=None, value=None, what="token"):
        tok = self.peek(kind, value)
        if tok is None:
            where = self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)
            raise ParseError(f"expected {what}", where)
        self.i += 1
        return tok

    def parse(self) -> LaurentPoly:
        if not self.toks:
            raise ParseError("empty polynomial", 0)
        terms: dict[int, Fraction] = {}
        first = True
        while self.i < len(self.toks):
            sign = 1
            op = self.peek("op")
            if op and op[1] in "+-":
                self.i += 1
                sign = -1 if op[1] == "-" else 1
            elif not first:
                raise ParseError("expected '+' or '-'", op[2] if op else self.toks[self.i][2])
            c, k = self.term()
            terms[k] = terms.get(k, Fraction(0)) + sign * c
            first = False
        return LaurentPoly.from_dict(terms)

    def term(self):
        coeff = Fraction(1)
        num = self.peek("num")
        if num:
            self.i += 1
            try:
                coeff = Fraction(num[1].replace(" ", ""))
            except ZeroDivisionError:
                raise ParseError("zero denominator", num[2]) from None
            if self.peek("op", "*"):
                self.i += 1
                self.take("t", what="'t' after '*'")
            elif self.peek("t"):
                self.i += 1  # implicit product, "2t"
            else:
                return coeff, 0
        else:
            self.take("t", what="coefficient or 't'")
        if self.peek("op", "^"):
            self.i += 1
            return coeff, self.exponent()
        return coeff, 1

    def exponent(self) -> int:
        close = None
        if self.peek("op", "("):
            close = ")"
        elif self.peek("op", "{"):
            close = "}"
        if close:
            self.i += 1
        sign = 1
        if self.peek("op", "-"):
            self.i += 1
            sign = -1
        elif self.peek("op", "+"):
            self.i += 1
        tok = self.take("num", what="integer exponent")
        if "/" in tok[1]:
            raise ParseError("exponent must be an integer", tok[2])
        if close:
            self.take("op", close, what=f"'{close}'")
        return sign * int(tok[1])


def parse_poly(text) -> LaurentPoly:
    """Parse ``"2 - 12*t + 30*t^2"``-style text, or the JSON coefficient form.

    The JSON form is a list of rationals (lowest exponent first) or
    ``{"min_degree": k, "coeffs": [...]}``.  Coefficients are kept exactly as
    written; no unit normalization happens here.
    """
    if isinstance(text, (list, dict)):
        return _poly_from_json(text, "poly")
    if not isinstance(text, str):
        raise ParseError("polynomial must be a string", "poly")
    stripped = text.strip()
    if stripped.startswith(("[", "{")):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc.msg}", exc.pos) from None
        return _poly_from_json(data, "poly")
    return _PolyParser(text).parse()


def _rational(x, path) -> Fraction:
    if isinstance(x, bool):
        raise ParseError("expected a rational", path)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise ParseError("expected an integer or 'p/q' string", path)


def _poly_from_json(data, path) -> LaurentPoly:
    if isinstance(data, list):
        coeffs, k = data, 0
    elif isinstance(data, dict):
        extra = set(data) - {"coeffs", "min_degree"}
        if extra:
            raise ParseError(f"unknown keys {sorted(extra)}", path)
        coeffs = data.get("coeffs")
        k = data.get("min_degree", 0)
        if not isinstance(coeffs, list):
            raise ParseError("expected a list", f"{path}.coeffs")
        if isinstance(k, bool) or not isinstance(k, int):
            raise ParseError("expected an integer", f"{path}.min_degree")
    else:
        raise ParseError("expected a coefficient list or object", path)
    if not coeffs:
        raise ParseError("empty coefficient list", path)
    return LaurentPoly([_rational(c, f"{path}.coeffs[{i}]") for i, c in enumerate(coeffs)], k)


def serialize_poly(p: LaurentPoly) -> str:
    return format_poly(p)


# -- braids ----------------------------------------------------------------

_BRAID = re.compile(r"\s*B\s*(\d+)\s*:(.*)$", re.S)


def parse_braid(text: str) -> BraidWord:
    m = _BRAID.match(text)
    if not m:
        raise ParseError("expected 'Bn: i1 i2 ...'", 0)
    n = int(m.group(1))
    letters = []
    for tm in re.finditer(r"[^\s,]+", m.group(2)):
        tok = tm.group()
        pos = m.start(2) + tm.start()
        if not re.fullmatch(r"[+-]?\d+", tok):
            raise ParseError(f"bad generator {tok!r}", pos)
        x = int(tok)
        if x == 0 or abs(x) >= n:
            raise ParseError(f"generator {x} out of range for B{n}", pos)
        letters.append(x)
    try:
        b = BraidWord(n, letters)
    except TopologyError as exc:
        raise ParseError(str(exc), 0) from None
    cycles = b.closure_cycles()
    if len(cycles) != 1:
        raise ParseError(f"closure has {len(cycles)} components, not a knot", 0)
    return b


def serialize_braid(b: BraidWord) -> str:
    return f"B{b.strands}: " + " ".join(str(x) for x in b.letters)


# -- presentations ---------------------------------------------------------

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"


def parse_word(text: str, generators, offset: int = 0) -> tuple:
    """Space-separated letters; ``X`` inverts ``x``, ``x1^-1`` and ``x^3`` work too."""
    gens = set(generators)
    single = all(len(g) == 1 for g in gens)
    word = []
    for tm in re.finditer(r"\S+", text):
        tok, pos = tm.group(), offset + tm.start()
        pm = re.fullmatch(rf"({_NAME})\^\(?([+-]?\d+)\)?", tok)
        if pm:
            name, k = pm.group(1), int(pm.group(2))
            if name not in gens:
                raise ParseError(f"unknown generator {name!r}", pos)
            word.extend([(name, 1 if k > 0 else -1)] * abs(k))
            continue
        if tok in gens:
            word.append((tok, 1))
            continue
        if single and re.fullmatch(r"[A-Za-z]+", tok):
            for j, ch in enumerate(tok):
                if ch in gens:
                    word.append((ch, 1))
                elif ch.lower() in gens and ch.isupper():
                    word.append((ch.lower(), -1))
                else:
                    raise ParseError(f"unknown generator {ch!r}", pos + j)
            continue
        raise ParseError(f"unknown generator {tok!r}", pos)
    return tuple(word)


def serialize_word(word) -> str:
    return " ".join(g if e > 0 else f"{g}^-1" for g, e in word)


def parse_presentation(text: str, require_phi: bool = True) -> GroupPresentation:
    """``gens: x,y; rels: x y x Y X Y; phi: 1,1`` (relators comma-separated)."""
    if not isinstance(text, str):
        raise ParseError("presentation must be a string", 0)
    sections: dict[str, tuple[str, int]] = {}
    pos = 0
    for part in text.split(";"):
        start = pos
        pos += len(part) + 1
        if not part.strip():
            continue
        if ":" not in part:
            raise ParseError("expected 'key: value'", start)
        key, val = part.split(":", 1)
        key = key.strip().lower()
        if key not in ("gens", "rels", "phi"):
            raise ParseError(f"unknown section {key!r}", start)
        if key in sections:
            raise ParseError(f"duplicate section {key!r}", start)
        sections[key] = (val, start + len(part.split(":", 1)[0]) + 1)
    if "gens" not in sections:
        raise ParseError("missing 'gens' section", 0)
    gval, goff = sections["gens"]
    gens = [g.strip() for g in gval.split(",") if g.strip()]
    for g in gens:
        if not re.fullmatch(_NAME, g):
            raise ParseError(f"bad generator name {g!r}", goff)
    if not gens:
        raise ParseError("no generators", goff)
    rels = []
    if "rels" in sections:
        rval, roff = sections["rels"]
        sub = 0
        for chunk in rval.split(","):
            if chunk.strip():
                rels.append(parse_word(chunk, gens, roff + sub))
            sub += len(chunk) + 1
    phi = None
    if "phi" in sections:
        pval, poff = sections["phi"]
        vals = [v.strip() for v in pval.split(",") if v.strip()]
        if len(vals) != len(gens):
            raise ParseError(f"phi has {len(vals)} values for {len(gens)} generators", poff)
        try:
            phi = dict(zip(gens, (int(v) for v in vals)))
        except ValueError:
            raise ParseError("phi values must be integers", poff) from None
    elif require_phi:
        raise ParseError("missing 'phi' section", len(text))
    try:
        return GroupPresentation(gens, rels, phi)
    except TopologyError as exc:
        raise ParseError(str(exc), 0) from None


def serialize_presentation(p: GroupPresentation) -> str:
    parts = [
        "gens: " + ",".join(p.generators),
        "rels: " + ", ".join(serialize_word(r) for r in p.relators),
    ]
    if p.phi is not None:
        parts.append("phi: " + ",".join(str(p.phi[g]) for g in p.generators))
    return "; ".join(parts)


def parse_hnn(data, path="source.hnn_data") -> HnnData:
    if not isinstance(data, dict):
        raise ParseError("expected an object", path)
    allowed = {"h", "a_generators", "iota_plus", "iota_minus", "stable_letter"}
    extra = set(data) - allowed
    if extra:
        raise ParseError(f"unknown keys {sorted(extra)}", path)
    for key in ("h", "a_generators", "iota_plus", "iota_minus"):
        if key not in data:
            raise ParseError("missing field", f"{path}.{key}")
    try:
        h = parse_presentation(data["h"], require_phi=False)
    except ParseError as exc:
        raise ParseError(exc.message, f"{path}.h") from None
    if h.phi is not None:
        raise ParseError("H takes no phi", f"{path}.h")
    a_gens = data["a_generators"]
    if not isinstance(a_gens, list) or not all(isinstance(a, str) for a in a_gens):
        raise ParseError("expected a list of names", f"{path}.a_generators")
    maps = {}
    for key in ("iota_plus", "iota_minus"):
        m = data[key]
        if not isinstance(m, dict):
            raise ParseError("expected an object", f"{path}.{key}")
        out = {}
        for a, w in m.items():
            if not isinstance(w, str):
                raise ParseError("expected a word string", f"{path}.{key}.{a}")
            try:
                out[a] = parse_word(w, h.generators)
            except ParseError as exc:
                raise ParseError(exc.message, f"{path}.{key}.{a}") from None
        maps[key] = out
    stable = data.get("stable_letter", "t")
    if not isinstance(stable, str) or not re.fullmatch(_NAME, stable):
        raise ParseError("bad stable letter", f"{path}.stable_letter")
    try:
        return HnnData(h, tuple(a_gens), maps["iota_plus"], maps["iota_minus"], stable)
    except TopologyError as exc:
        raise ParseError(str(exc), path) from None


def serialize_hnn(h: HnnData) -> dict:
    return {
        "h": serialize_presentation(h.h_presentation),
        "a_generators": list(h.a_generators),
        "iota_plus": {a: serialize_word(h.iota_plus[a]) for a in h.a_generators},
        "iota_minus": {a: serialize_word(h.iota_minus[a]) for a in h.a_generators},
        "stable_letter": h.stable_letter,
    }


# -- knot records ----------------------------------------------------------

FLAG_NAMES = ("minimal_genus_asserted", "ambient_qhs3_asserted", "alternating", "ambient_s3")
ROUTES = ("seifert_matrix", "braid", "alexander_poly", "presentation")


@dataclass(frozen=True)
class KnotRecord:
    name: str
    route: str
    seifert: Optional[SeifertMatrix] = None
    braid: Optional[BraidWord] = None
    alexander_poly: Optional[LaurentPoly] = None
    presentation: Optional[GroupPresentation] = None
    hnn: Optional[HnnData] = None
    genus: Optional[int] = None
    flags: dict = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def flag(self, name: str) -> bool:
        return bool(self.flags.get(name, False))


def _natural(x, path) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise ParseError("expected a natural number", path)
    return x


def record_from_dict(data, path: str = "") -> KnotRecord:
    def at(key):
        return f"{path}.{key}" if path else key

    if not isinstance(data, dict):
        raise ParseError("record must be a JSON object", path or "$")
    extra = set(data) - {"schema", "name", "source", "genus", "flags", "meta"}
    if extra:
        raise ParseError(f"unknown keys {sorted(extra)}", path or "$")
    schema = data.get("schema", SCHEMA_VERSION)
    if schema != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema {schema!r}", at("schema"))
    name = data.get("name")
    if not isinstance(name, str) or not name:
        raise ParseError("expected a non-empty string", at("name"))

    flags_in = data.get("flags", {})
    if not isinstance(flags_in, dict):
        raise ParseError("expected an object", at("flags"))
    flags = {}
    for k, v in flags_in.items():
        if k not in FLAG_NAMES:
            raise ParseError("unknown flag", at(f"flags.{k}"))
        if not isinstance(v, bool):
            raise ParseError("expected a boolean", at(f"flags.{k}"))
        flags[k] = v
    meta = data.get("meta", {})
    if not isinstance(meta, dict) or not all(isinstance(v, str) for v in meta.values()):
        raise ParseError("expected an object of strings", at("meta"))

    genus = data.get("genus")
    if genus is not None:
        genus = _natural(genus, at("genus"))

    src = data.get("source")
    spath = at("source")
    if not isinstance(src, dict):
        raise ParseError("expected an object", spath)
    extra = set(src) - set(ROUTES) - {"genus", "hnn_data"}
    if extra:
        raise ParseError(f"unknown keys {sorted(extra)}", spath)
    present = [r for r in ROUTES if r in src]
    if "hnn_data" in src and "presentation" not in present:
        present.append("presentation")
    if len(present) != 1:
        raise ParseError(
            f"exactly one source variant required, found {len(present)}"
            + (f" ({', '.join(present)})" if present else ""),
            spath,
        )
    route = present[0]

    if "genus" in src:
        g = _natural(src["genus"], f"{spath}.genus")
        if genus is not None and genus != g:
            raise ParseError("conflicts with top-level genus", f"{spath}.genus")
        genus = g
    if "hnn_data" in src and route != "presentation":
        raise ParseError("hnn_data only accompanies a presentation", f"{spath}.hnn_data")

    kw: dict[str, Any] = {}
    if route == "seifert_matrix":
        v = src["seifert_matrix"]
        vpath = f"{spath}.seifert_matrix"
        if not isinstance(v, list) or not all(isinstance(r, list) for r in v):
            raise ParseError("expected a list of rows", vpath)
        for i, r in enumerate(v):
            if len(r) != len(v):
                raise ParseError("matrix must be square", f"{vpath}[{i}]")
            for j, x in enumerate(r):
                if isinstance(x, bool) or not isinstance(x, int):
                    raise ParseError("expected an integer", f"{vpath}[{i}][{j}]")
        if len(v) % 2:
            raise ParseError(f"odd dimension {len(v)}", vpath)
        kw["seifert"] = SeifertMatrix(
            v,
            minimal_genus_asserted=flags.get("minimal_genus_asserted", False),
            ambient_qhs3_asserted=flags.get("ambient_qhs3_asserted", False),
        )
    elif route == "braid":
        try:
            kw["braid"] = parse_braid(src["braid"]) if isinstance(src["braid"], str) else None
        except ParseError as exc:
            raise ParseError(str(exc), f"{spath}.braid") from None
        if kw["braid"] is None:
            raise ParseError("expected a braid string", f"{spath}.braid")
    elif route == "alexander_poly":
        try:
            kw["alexander_poly"] = parse_poly(src["alexander_poly"])
        except ParseError as exc:
            raise ParseError(str(exc), f"{spath}.alexander_poly") from None
        if genus is None:
            raise ParseError("alexander_poly source requires genus", f"{spath}.genus")
    else:
        if "presentation" in src:
            try:
                kw["presentation"] = parse_presentation(src["presentation"])
            except ParseError as exc:
                raise ParseError(str(exc), f"{spath}.presentation") from None
        if "hnn_data" in src:
            kw["hnn"] = parse_hnn(src["hnn_data"], f"{spath}.hnn_data")
    return KnotRecord(name=name, route=route, genus=genus, flags=flags, meta=dict(meta), **kw)


def parse_record(json_text: str) -> KnotRecord:
    try:
        data = json.loads(json_text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc.msg}", exc.pos) from None
    return record_from_dict(data)


def record_to_dict(r: KnotRecord) -> dict:
    src: dict[str, Any] = {}
    if r.route == "seifert_matrix":
        src["seifert_matrix"] = [list(row) for row in r.seifert.V]
    elif r.route == "braid":
        src["braid"] = serialize_braid(r.braid)
    elif r.route == "alexander_poly":
        src["alexander_poly"] = serialize_poly(r.alexander_poly)
    else:
        if r.presentation is not None:
            src["presentation"] = serialize_presentation(r.presentation)
        if r.hnn is not None:
            src["hnn_data"] = serialize_hnn(r.hnn)
    out: dict[str, Any] = {"schema": SCHEMA_VERSION, "name": r.name, "source": src}
    if r.genus is not None:
        out["genus"] = r.genus
    if r.flags:
        out["flags"] = dict(r.flags)
    if r.meta:
        out["meta"] = dict(r.meta)
    return out


def serialize_record(r: KnotRecord) -> str:
    return json.dumps(record_to_dict(r), sort_keys=True)


def load_corpus(path) -> list:
    """Raw record objects from a corpus file; raises on file-level problems."""
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc.msg}", exc.pos) from None
    if not isinstance(data, list):
        raise ParseError("corpus must be a JSON array of records", "$")
    return data


__all__ = [
    "KnotRecord",
    "ParseError",
    "load_corpus",
    "parse_braid",
    "parse_hnn",
    "parse_poly",
    "parse_presentation",
    "parse_record",
    "parse_word",
    "poly_to_json",
    "record_from_dict",
    "record_to_dict",
    "serialize_braid",
    "serialize_presentation",
    "serialize_poly",
    "serialize_record",
]
