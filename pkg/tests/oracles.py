"""Independent reference computations used only by the test-suite.

Nothing here imports the package's arithmetic; polynomials are plain lists
of ints/Fractions (lowest degree first) or sympy objects.
"""

from fractions import Fraction
from itertools import permutations

import sympy

t = sympy.Symbol("t")


def sym(coeffs, min_degree=0):
    return sum(sympy.Rational(str(c)) * t ** (min_degree + i) for i, c in enumerate(coeffs))


def _variations(seq):
    signs = [s > 0 for s in seq if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _eval(f, x):
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def _interval_variations(f, a, b):
    """Sign variations of (1+y)^d f((a + b y)/(1+y)): Descartes on (a, b)."""
    d = len(f) - 1
    total = [Fraction(0)] * (d + 1)
    lin_num = [Fraction(a), Fraction(b)]  # a + b*y
    one_y = [Fraction(1), Fraction(1)]
    for i, c in enumerate(f):
        if not c:
            continue
        term = [Fraction(c)]
        for _ in range(i):
            term = _mul(term, lin_num)
        for _ in range(d - i):
            term = _mul(term, one_y)
        for k, v in enumerate(term):
            total[k] += v
    return _variations(total)


def squarefree_int(coeffs):
    p = sympy.Poly(list(reversed([sympy.Integer(c) for c in coeffs])), t)
    q = sympy.Poly(sympy.sqf_part(p.as_expr()), t)
    return [Fraction(int(c)) for c in reversed(q.all_coeffs())]


def bisection_positive_roots(coeffs, min_width=Fraction(1, 2**30)):
    """Distinct roots in (0, oo) by exhaustive bisection of (0, B].

    Works on the squarefree part; each interval is split until Descartes'
    rule on the interval certifies 0 or 1 roots, never below ``min_width``.
    """
    f = squarefree_int(coeffs)
    if len(f) == 1:
        return 0
    bound = 1 + max(abs(c) for c in f[:-1]) / abs(f[-1])
    count = 0
    stack = [(Fraction(0), bound)]
    while stack:
        a, b = stack.pop()
        v = _interval_variations(f, a, b)
        if v == 0:
            continue
        if v == 1:
            count += 1
            continue
        if b - a < min_width:
            raise RuntimeError("oracle could not separate roots")
        m = (a + b) / 2
        if _eval(f, m) == 0:
            count += 1
        stack.append((a, m))
        stack.append((m, b))
    return count


def polya_exponent_bruteforce(coeffs, cap):
    """Smallest N with all coefficients of (1+t)^N * p nonnegative, via sympy."""
    p = sym(coeffs)
    for n in range(cap + 1):
        prod = sympy.Poly(sympy.expand((1 + t) ** n * p), t)
        if all(c >= 0 for c in prod.all_coeffs()):
            return n
    return None


def det_leibniz(rows):
    """Permutation-sum determinant over sympy expressions."""
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = (-1) ** inv
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return sympy.expand(total)


def random_int_poly(rng, max_degree=12, max_coeff=50):
    """Integer coefficients, degree 1..max_degree, nonzero constant and leading terms."""
    d = rng.randint(1, max_degree)
    cs = [rng.randint(-max_coeff, max_coeff) for _ in range(d + 1)]
    while cs[0] == 0:
        cs[0] = rng.randint(-max_coeff, max_coeff)
    while cs[-1] == 0:
        cs[-1] = rng.randint(-max_coeff, max_coeff)
    return cs


def polya_exponent_intlist(coeffs, cap):
    """Same search as the sympy version, on plain integer lists (fast for large N)."""
    cur = [int(c) for c in coeffs]
    if cur[0] < 0:
        cur = [-c for c in cur]
    for n in range(cap + 1):
        if all(c >= 0 for c in cur):
            return n
        cur = [a + b for a, b in zip(cur + [0], [0] + cur)]
    return None
