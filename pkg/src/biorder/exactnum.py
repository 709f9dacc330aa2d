"""Exact Laurent polynomials in one variable ``t`` over the rationals.

Coefficients are :class:`fractions.Fraction` values, which are always kept
reduced with a positive denominator.  A :class:`LaurentPoly` is immutable;
every operation returns a new, trimmed value.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Rational = Fraction
Number = Union[int, Fraction]


class LaurentPoly:
    """``sum(coeffs[i] * t**(min_degree + i))`` with exact rational coefficients.

    The zero polynomial has no coefficients and ``min_degree == 0``.
    Otherwise the first and last stored coefficients are nonzero.
    """

    __slots__ = ("min_degree", "coeffs")

    def __init__(self, coeffs: Iterable[Number] = (), min_degree: int = 0):
        cs = [Fraction(c) for c in coeffs]
        lo, hi = 0, len(cs)
        while lo < hi and cs[lo] == 0:
            lo += 1
        while hi > lo and cs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            object.__setattr__(self, "coeffs", ())
            object.__setattr__(self, "min_degree", 0)
        else:
            object.__setattr__(self, "coeffs", tuple(cs[lo:hi]))
            object.__setattr__(self, "min_degree", int(min_degree) + lo)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    def __reduce__(self):
        return (LaurentPoly, (self.coeffs, self.min_degree))

    # -- constructors --------------------------------------------------

    @classmethod
    def constant(cls, c: Number) -> "LaurentPoly":
        return cls([c])

    @classmethod
    def monomial(cls, c: Number, k: int) -> "LaurentPoly":
        return cls([c], k)

    @classmethod
    def from_dict(cls, terms: dict) -> "LaurentPoly":
        terms = {k: v for k, v in terms.items() if v != 0}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls([terms.get(k, 0) for k in range(lo, hi + 1)], lo)

    # -- shape ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        """Highest exponent; -1 by convention for zero."""
        if not self.coeffs:
            return -1
        return self.min_degree + len(self.coeffs) - 1

    @property
    def span(self) -> int:
        if not self.coeffs:
            return -1
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    @property
    def trailing(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1 and (not self.coeffs or self.min_degree == 0)

    def coeff(self, k: int) -> Fraction:
        i = k - self.min_degree
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def to_dict(self) -> dict:
        return {self.min_degree + i: c for i, c in enumerate(self.coeffs) if c}

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t**k``."""
        if not self.coeffs:
            return self
        return LaurentPoly(self.coeffs, self.min_degree + k)

    def ordinary(self) -> "LaurentPoly":
        """Shift so the lowest exponent is 0."""
        return self.shift(-self.min_degree)

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.min_degree, other.min_degree)
        hi = max(self.degree, other.degree)
        out = [Fraction(0)] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.min_degree - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.min_degree - lo + i] += c
        return LaurentPoly(out, lo)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly([-c for c in self.coeffs], self.min_degree)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return LaurentPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LaurentPoly(out, self.min_degree + other.min_degree)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.coeffs) != 1:
                raise ValueError("only monomials have Laurent inverses")
            return LaurentPoly([1 / self.coeffs[0] ** -n], self.min_degree * n)
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Number) -> "LaurentPoly":
        c = Fraction(c)
        return LaurentPoly([c * a for a in self.coeffs], self.min_degree)

    def __divmod__(self, other):
        return laurent_divrem(self, self._coerce(other))

    def __floordiv__(self, other):
        return laurent_divrem(self, self._coerce(other))[0]

    def __mod__(self, other):
        return laurent_divrem(self, self._coerce(other))[1]

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient in the Laurent ring; raises ArithmeticError if not exact."""
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.coeffs:
            return self
        q, r = laurent_divrem(self.ordinary(), other.ordinary())
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q.shift(self.min_degree - other.min_degree)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.min_degree == other.min_degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.min_degree, self.coeffs))

    def __call__(self, x: Number) -> Fraction:
        return laurent_eval(self, x)

    def derivative(self) -> "LaurentPoly":
        return laurent_derivative(self)

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


T = LaurentPoly([1], 1)
ONE = LaurentPoly([1])
ZERO = LaurentPoly()


def laurent_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def laurent_divrem(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Euclidean division of the ordinary parts: ``a = q*b + r``, ``deg r < deg b``.

    Both arguments are shifted to ordinary polynomials first, so any
    power of ``t`` in either is discarded.
    """
    return poly_divrem(a.ordinary(), b.ordinary())


def poly_divrem(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Division in Q[t]; both arguments must have min_degree >= 0."""
    if not b.coeffs:
        raise ZeroDivisionError("division by the zero polynomial")
    if a.min_degree < 0 or b.min_degree < 0:
        raise ValueError("poly_divrem needs ordinary polynomials")
    if a.degree < b.degree:
        return ZERO, a
    r = [Fraction(0)] * a.min_degree + list(a.coeffs)
    bc = [Fraction(0)] * b.min_degree + list(b.coeffs)
    db = len(bc) - 1
    lead = bc[-1]
    q = [Fraction(0)] * (len(r) - db)
    for k in range(len(q) - 1, -1, -1):
        c = r[k + db] / lead
        q[k] = c
        if c:
            for j in range(db + 1):
                r[k + j] -= c * bc[j]
    return LaurentPoly(q), LaurentPoly(r[:db])


def content(p: LaurentPoly) -> Fraction:
    """Positive rational c such that p/c has coprime integer coefficients."""
    if not p.coeffs:
        return Fraction(0)
    den = reduce(lcm, (c.denominator for c in p.coeffs), 1)
    num = reduce(gcd, (c.numerator * (den // c.denominator) for c in p.coeffs), 0)
    return Fraction(num, den)


def normalize_canonical(p: LaurentPoly) -> LaurentPoly:
    """Unit-normalize: lowest exponent 0, primitive integer coefficients,
    positive constant term."""
    if not p.coeffs:
        raise ValueError("the zero polynomial has no canonical form")
    c = content(p)
    if p.coeffs[0] < 0:
        c = -c
    return LaurentPoly([a / c for a in p.coeffs], 0)


def canonical_or_zero(p: LaurentPoly) -> LaurentPoly:
    return normalize_canonical(p) if p.coeffs else ZERO


def laurent_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Canonical gcd in Q[t, 1/t]; ``gcd(0, 0) = 0``."""
    a, b = a.ordinary(), b.ordinary()
    while b.coeffs:
        a, b = b, laurent_divrem(a, b)[1]
    return canonical_or_zero(a)


def gcd_many(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    g = ZERO
    for p in polys:
        g = laurent_gcd(g, p)
        if g == ONE:
            break
    return g


def laurent_derivative(p: LaurentPoly) -> LaurentPoly:
    return LaurentPoly(
        [(p.min_degree + i) * c for i, c in enumerate(p.coeffs)], p.min_degree - 1
    )


def laurent_eval(p: LaurentPoly, x: Number) -> Fraction:
    x = Fraction(x)
    if not p.coeffs:
        return Fraction(0)
    if x == 0:
        if p.min_degree < 0:
            raise ZeroDivisionError("negative exponent evaluated at 0")
        return p.coeffs[0] if p.min_degree == 0 else Fraction(0)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc * x**p.min_degree


def squarefree_part(p: LaurentPoly, canonical: bool = True) -> LaurentPoly:
    """``p / gcd(p, p')`` on the ordinary part.

    Canonicalized by default; otherwise the leading coefficient of p is kept.
    """
    q = p.ordinary()
    g = laurent_gcd(q, q.derivative())
    f = q.exact_div(g.scale(1 / g.leading))
    return normalize_canonical(f) if canonical else f


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: LaurentPoly) -> str:
    """Human form accepted back by the polynomial parser, lowest term first."""
    if not p.coeffs:
        return "0"
    parts = []
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        k = p.min_degree + i
        mag = abs(c)
        if k == 0:
            body = _fmt_coeff(mag)
        else:
            power = "t" if k == 1 else f"t^{k}"
            body = power if mag == 1 else f"{_fmt_coeff(mag)}*{power}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def poly_to_json(p: LaurentPoly) -> dict:
    """``{"min_degree": k, "coeffs": [...]}``; integers stay ints, others are "a/b"."""
    return {
        "min_degree": p.min_degree,
        "coeffs": [
            c.numerator if c.denominator == 1 else _fmt_coeff(c) for c in p.coeffs
        ],
    }


def poly_from_coeffs(coeffs: Sequence, min_degree: int = 0) -> LaurentPoly:
    return LaurentPoly([Fraction(c) for c in coeffs], min_degree)
