"""Alexander polynomials from Seifert matrices, braids and group presentations,
plus the hypothesis checks the non-bi-orderability criterion consumes."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from functools import reduce
from typing import Mapping, Optional, Sequence

from .exactnum import (
    ONE,
    ZERO,
    LaurentPoly,
    T,
    canonical_or_zero,
)
from .linalg import PolyMatrix, RationalMatrix, det_poly_matrix, minors_gcd, rank_rational

# A word is a tuple of (generator, +1 | -1) letters.
Letter = tuple
Word = tuple


class TopologyError(ValueError):
    pass


# -- Seifert route ------------------------------------------------------


@dataclass(frozen=True)
class SeifertMatrix:
    V: tuple
    minimal_genus_asserted: bool = False
    ambient_qhs3_asserted: bool = False

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.V)
        object.__setattr__(self, "V", rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise TopologyError("Seifert matrix must be square")
        if n % 2:
            raise TopologyError(f"Seifert matrix has odd dimension {n}")

    @property
    def dim(self) -> int:
        return len(self.V)


def genus_from_seifert(s: SeifertMatrix) -> int:
    if not s.minimal_genus_asserted:
        raise TopologyError("genus unknown: Seifert surface not asserted minimal")
    return s.dim // 2


def seifert_form_matrix(s: SeifertMatrix) -> PolyMatrix:
    """t*V - V^T."""
    n = s.dim
    return PolyMatrix.from_rows(
        [[T.scale(s.V[i][j]) - s.V[j][i] for j in range(n)] for i in range(n)]
    )


def alexander_from_seifert(s: SeifertMatrix) -> LaurentPoly:
    return canonical_or_zero(det_poly_matrix(seifert_form_matrix(s)))


def seifert_det(s: SeifertMatrix) -> int:
    d = det_poly_matrix(PolyMatrix.from_rows(s.V, s.dim))
    return int(d.coeff(0))


def rhf_check(delta: LaurentPoly, genus: int) -> bool:
    """deg(Delta) == 2 * genus, with Delta nonzero."""
    return not delta.is_zero() and delta.span == 2 * genus


def rhf_check_seifert(s: SeifertMatrix) -> bool:
    """Both forms of the test on a minimal-genus Seifert matrix; they must agree."""
    by_span = rhf_check(alexander_from_seifert(s), genus_from_seifert(s))
    by_det = seifert_det(s) != 0
    if by_span != by_det:
        raise AssertionError("span and determinant forms of the RHF test disagree")
    return by_span


# -- braid route --------------------------------------------------------


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if self.strands < 2:
            raise TopologyError("a braid needs at least 2 strands")
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise TopologyError(f"generator {x} out of range for B{self.strands}")

    def closure_cycles(self) -> list[list[int]]:
        perm = list(range(self.strands))
        for x in self.letters:
            i = abs(x) - 1
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        seen, cycles = set(), []
        for s in range(self.strands):
            if s in seen:
                continue
            cyc, j = [], s
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = perm[j]
            cycles.append(cyc)
        return cycles

    def is_knot(self) -> bool:
        return len(self.closure_cycles()) == 1


def _burau_generator(n: int, i: int) -> PolyMatrix:
    m = n - 1
    c = abs(i) - 1
    rows = [[ONE if r == s else ZERO for s in range(m)] for r in range(m)]
    if i > 0:
        rows[c][c] = -T
        if c > 0:
            rows[c - 1][c] = T
        if c + 1 < m:
            rows[c + 1][c] = ONE
    else:
        t_inv = LaurentPoly([1], -1)
        rows[c][c] = -t_inv
        if c > 0:
            rows[c - 1][c] = ONE
        if c + 1 < m:
            rows[c + 1][c] = t_inv
    return PolyMatrix.from_rows(rows)


def reduced_burau(b: BraidWord) -> PolyMatrix:
    result = PolyMatrix.identity(b.strands - 1)
    for x in b.letters:
        result = result @ _burau_generator(b.strands, x)
    return result


def alexander_from_braid(b: BraidWord) -> LaurentPoly:
    """det(Burau(b) - I) * (t - 1) / (t^n - 1), canonicalized."""
    if not b.is_knot():
        raise TopologyError("braid closure is not a knot")
    n = b.strands
    d = det_poly_matrix(reduced_burau(b) - PolyMatrix.identity(n - 1))
    try:
        q = (d * (T - 1)).exact_div(T**n - 1)
    except ArithmeticError as exc:
        raise AssertionError("Burau determinant not divisible by 1 + t + ... + t^(n-1)") from exc
    return canonical_or_zero(q)


# -- presentations and Fox calculus --------------------------------------


@dataclass(frozen=True)
class GroupPresentation:
    """Finite presentation; ``phi`` (generator -> integer) is None for a bare group."""

    generators: tuple
    relators: tuple
    phi: Optional[Mapping] = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(tuple(tuple(l) for l in r) for r in self.relators))
        if len(set(self.generators)) != len(self.generators):
            raise TopologyError("duplicate generator names")
        gens = set(self.generators)
        for r in self.relators:
            for g, e in r:
                if g not in gens:
                    raise TopologyError(f"unknown generator {g!r}")
                if e not in (1, -1):
                    raise TopologyError("letters must have exponent +1 or -1")
        if self.phi is not None:
            phi = {g: int(self.phi[g]) for g in self.generators}
            object.__setattr__(self, "phi", phi)
            for idx, r in enumerate(self.relators):
                w = word_weight(r, phi)
                if w != 0:
                    raise TopologyError(f"relator {idx} has phi-weight {w}, not 0")
            if reduce(gcd, phi.values(), 0) != 1:
                raise TopologyError("phi is not a surjection onto Z")

    def abelianized(self) -> RationalMatrix:
        idx = {g: i for i, g in enumerate(self.generators)}
        rows = []
        for r in self.relators:
            v = [0] * len(self.generators)
            for g, e in r:
                v[idx[g]] += e
            rows.append(v)
        return RationalMatrix.from_rows(rows, len(self.generators))


def word_weight(word: Sequence, phi: Mapping) -> int:
    return sum(e * phi[g] for g, e in word)


def abelianize_word(word: Sequence, generators: Sequence) -> list[int]:
    idx = {g: i for i, g in enumerate(generators)}
    v = [0] * len(generators)
    for g, e in word:
        if g not in idx:
            raise TopologyError(f"unknown generator {g!r}")
        v[idx[g]] += e
    return v


def fox_derivative_phi(word: Sequence, gen: str, phi: Mapping) -> LaurentPoly:
    """Free derivative d(word)/d(gen) pushed through g -> t^phi(g)."""
    if gen not in phi:
        raise TopologyError(f"unknown generator {gen!r}")
    terms: dict[int, int] = {}
    w = 0
    for g, e in word:
        if g not in phi:
            raise TopologyError(f"unknown generator {g!r}")
        if e > 0:
            if g == gen:
                terms[w] = terms.get(w, 0) + 1
            w += phi[g]
        else:
            w -= phi[g]
            if g == gen:
                terms[w] = terms.get(w, 0) - 1
    return LaurentPoly.from_dict(terms)


def alexander_matrix(p: GroupPresentation) -> PolyMatrix:
    if p.phi is None:
        raise TopologyError("presentation has no phi")
    return PolyMatrix.from_rows(
        [[fox_derivative_phi(r, g, p.phi) for g in p.generators] for r in p.relators],
        len(p.generators),
    )


def admissible_columns(p: GroupPresentation) -> list[int]:
    return [j for j, g in enumerate(p.generators) if p.phi[g] != 0]


def alexander_from_presentation(p: GroupPresentation, delete: Optional[int] = None) -> LaurentPoly:
    """Order of H_1(ker phi; Q) from the Alexander matrix.

    Deletes column ``delete`` (default: first generator with phi != 0) and
    takes the gcd of maximal minors.  Deleting the column of a generator x
    with |phi(x)| = c yields Delta * (t^c - 1) / (t - 1), so that factor is
    divided back out; for c = 1 it is trivial.
    """
    if p.phi is None:
        raise TopologyError("presentation has no phi")
    if not p.generators:
        raise TopologyError("empty presentation")
    cols = admissible_columns(p)
    if not cols:
        raise TopologyError("phi vanishes on every generator")
    j = cols[0] if delete is None else delete
    if j not in cols:
        raise TopologyError(f"column {j} is not admissible (phi = 0)")
    a = alexander_matrix(p)
    n = len(p.generators)
    keep = [c for c in range(n) if c != j]
    reduced = a.submatrix(range(a.rows), keep)
    k = n - 1
    if k > reduced.rows:
        return ZERO
    g = minors_gcd(reduced, k)
    if g.is_zero():
        return ZERO
    c = abs(p.phi[p.generators[j]])
    return canonical_or_zero((g * (T - 1)).exact_div(T**c - 1))


def alexander_full_ideal(p: GroupPresentation) -> LaurentPoly:
    """gcd of all (n-1)-minors of the whole Alexander matrix; no column choice."""
    a = alexander_matrix(p)
    k = len(p.generators) - 1
    if k > a.rows:
        return ZERO
    return minors_gcd(a, k)


# -- HNN extensions ------------------------------------------------------


@dataclass(frozen=True)
class HnnData:
    h_presentation: GroupPresentation
    a_generators: tuple
    iota_plus: Mapping
    iota_minus: Mapping
    stable_letter: str = "t"

    def __post_init__(self):
        object.__setattr__(self, "a_generators", tuple(self.a_generators))
        gens = set(self.h_presentation.generators)
        for name, m in (("iota_plus", self.iota_plus), ("iota_minus", self.iota_minus)):
            m = {a: tuple(tuple(l) for l in w) for a, w in m.items()}
            object.__setattr__(self, name, m)
            for a in self.a_generators:
                if a not in m:
                    raise TopologyError(f"{name} undefined on {a!r}")
                for g, _ in m[a]:
                    if g not in gens:
                        raise TopologyError(f"{name}({a}) uses unknown generator {g!r}")
        if self.stable_letter in gens:
            raise TopologyError(f"stable letter {self.stable_letter!r} clashes with a generator of H")


@dataclass(frozen=True)
class SurjectivityResult:
    quotient_dim: int
    rank_plus: int
    rank_minus: int

    @property
    def surjective_plus(self) -> bool:
        return self.rank_plus == self.quotient_dim

    @property
    def surjective_minus(self) -> bool:
        return self.rank_minus == self.quotient_dim

    @property
    def surjective_both(self) -> bool:
        return self.surjective_plus and self.surjective_minus

    @property
    def failing_sides(self) -> list[str]:
        out = []
        if not self.surjective_plus:
            out.append("plus")
        if not self.surjective_minus:
            out.append("minus")
        return out

    def to_json(self) -> dict:
        return {
            "surjective_both": self.surjective_both,
            "h1_dim": self.quotient_dim,
            "rank_plus": self.rank_plus,
            "rank_minus": self.rank_minus,
            "failing_sides": self.failing_sides,
        }


def h1_surjectivity_check(h: HnnData) -> SurjectivityResult:
    """Rank of the iota-images of the supplied A-generators in H_1(H; Q).

    Surjectivity from the supplied generators implies it for all of A; a
    failure only speaks about the supplied generators.
    """
    hp = h.h_presentation
    rel = hp.abelianized().to_rows()
    n = len(hp.generators)
    r0 = rank_rational(RationalMatrix.from_rows(rel, n))
    dim = n - r0

    def image_rank(iota):
        imgs = [abelianize_word(iota[a], hp.generators) for a in h.a_generators]
        return rank_rational(RationalMatrix.from_rows(rel + imgs, n)) - r0

    return SurjectivityResult(dim, image_rank(h.iota_plus), image_rank(h.iota_minus))


def hnn_presentation(h: HnnData) -> GroupPresentation:
    """<t, H | t^-1 iota+(a) t = iota-(a)> with phi(t) = 1, phi(H) = 0."""
    s = h.stable_letter
    hp = h.h_presentation
    rels = list(hp.relators)
    for a in h.a_generators:
        minus_inv = tuple((g, -e) for g, e in reversed(h.iota_minus[a]))
        rels.append(((s, -1),) + h.iota_plus[a] + ((s, 1),) + minus_inv)
    phi = {s: 1, **{g: 0 for g in hp.generators}}
    return GroupPresentation((s,) + hp.generators, tuple(rels), phi)
