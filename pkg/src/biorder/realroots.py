"""Exact decisions about real roots on (0, oo) and Polya positivity certificates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactnum import (
    LaurentPoly,
    poly_divrem,
    laurent_eval,
    normalize_canonical,
    squarefree_part,
)

DEFAULT_CAP = 256


class CapExceeded(Exception):
    """No Polya exponent up to the cap made every coefficient nonnegative."""

    def __init__(self, cap: int):
        super().__init__(f"no (1+t)^N certificate with N <= {cap}")
        self.cap = cap


class InvalidInput(ValueError):
    pass


@dataclass(frozen=True)
class SturmChain:
    chain: tuple

    def __len__(self):
        return len(self.chain)

    def __getitem__(self, i):
        return self.chain[i]

    def variations_at(self, x) -> int:
        return _variations(laurent_eval(p, x) for p in self.chain)

    def variations_at_infinity(self) -> int:
        return _variations(p.leading for p in self.chain)


@dataclass(frozen=True)
class RootInterval:
    """Positive root witness: a sign change of ``target`` on [lo, hi], or
    the exact root ``lo == hi``."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def is_point(self) -> bool:
        return self.lo == self.hi

    def verify(self, target: LaurentPoly) -> bool:
        if self.lo <= 0:
            return False
        if self.is_point():
            return laurent_eval(target, self.lo) == 0
        if self.lo > self.hi:
            return False
        a, b = laurent_eval(target, self.lo), laurent_eval(target, self.hi)
        return a * b < 0


@dataclass(frozen=True)
class PositivityCertificate:
    multiplier: LaurentPoly
    product: LaurentPoly
    polya_exponent: Optional[int] = None

    def verify(self, p: LaurentPoly) -> bool:
        return self.product == self.multiplier * p and _all_positive(self.product)


def _variations(values) -> int:
    count, prev = 0, 0
    for v in values:
        if v == 0:
            continue
        if prev and (v > 0) != (prev > 0):
            count += 1
        prev = v
    return count


def _all_positive(p: LaurentPoly) -> bool:
    return bool(p.coeffs) and p.coeffs[0] > 0 and all(c >= 0 for c in p.coeffs)


def sturm_chain(p: LaurentPoly) -> SturmChain:
    if p.is_zero():
        raise ValueError("Sturm chain of the zero polynomial")
    f = squarefree_part(p, canonical=False)
    chain = [f, f.derivative()]
    while chain[-1].degree > 0:
        r = poly_divrem(chain[-2], chain[-1])[1]
        if r.is_zero():
            break
        chain.append(-r)
    if chain[-1].is_zero():
        # f constant
        chain.pop()
    return SturmChain(tuple(chain))


def count_positive_roots(p: LaurentPoly) -> int:
    """Number of distinct real roots in (0, oo)."""
    chain = sturm_chain(normalize_canonical(p))
    return chain.variations_at(0) - chain.variations_at_infinity()


def _count_in(chain: SturmChain, lo, hi) -> int:
    """Distinct roots in (lo, hi]; ``chain[0](lo)`` must be nonzero."""
    return chain.variations_at(lo) - chain.variations_at(hi)


def descartes_bound(p: LaurentPoly) -> tuple[int, str]:
    v = _variations(p.coeffs)
    return v, "even" if v % 2 == 0 else "odd"


def cauchy_bound(p: LaurentPoly) -> Fraction:
    lead = abs(p.leading)
    return 1 + max(abs(c) for c in p.coeffs[:-1]) / lead if len(p.coeffs) > 1 else Fraction(1)


def isolate_positive_root(p: LaurentPoly, width) -> RootInterval:
    """Bisect down to an interval holding one positive root.

    Starts from (0, 2^k] with 2^k the first power of two at or above the
    Cauchy bound, so dyadic roots are met exactly as midpoints.  The
    returned interval carries a sign change of ``squarefree_part(p)`` (or is
    an exact rational root).
    """
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    p = normalize_canonical(p)
    chain = sturm_chain(p)
    f = chain[0]
    bound = cauchy_bound(f)
    hi = Fraction(1)
    while hi < bound:
        hi *= 2
    lo = Fraction(0)
    if _count_in(chain, lo, hi) == 0:
        raise InvalidInput("polynomial has no positive real root")
    if laurent_eval(f, hi) == 0:
        raise AssertionError("root on the Cauchy bound")
    while lo == 0 or hi - lo > width:
        mid = (lo + hi) / 2
        fm = laurent_eval(f, mid)
        if fm == 0:
            return RootInterval(mid, mid)
        if _count_in(chain, lo, mid) > 0:
            hi = mid
        else:
            lo = mid
    return RootInterval(lo, hi)


def polya_certificate(p: LaurentPoly, cap: int = DEFAULT_CAP) -> PositivityCertificate:
    """Smallest N <= cap with (1+t)^N * p having nonnegative coefficients."""
    p = normalize_canonical(p)
    if count_positive_roots(p) > 0:
        raise InvalidInput("polynomial has a positive real root; no certificate exists")
    coeffs = [int(c) for c in p.coeffs]
    for n in range(cap + 1):
        if all(c >= 0 for c in coeffs):
            multiplier = LaurentPoly(_binomial_row(n))
            product = LaurentPoly(coeffs)
            return PositivityCertificate(multiplier, product, n)
        coeffs = [a + b for a, b in zip(coeffs + [0], [0] + coeffs)]
    raise CapExceeded(cap)


def _binomial_row(n: int) -> list[int]:
    row = [1]
    for k in range(n):
        row.append(row[-1] * (n - k) // (k + 1))
    return row


def verify_positive_combination(p: LaurentPoly, g: LaurentPoly) -> bool:
    if g.is_zero():
        raise ValueError("multiplier must be nonzero")
    prod = g * p
    if prod.is_zero():
        return False
    return _all_positive(normalize_canonical(prod))
