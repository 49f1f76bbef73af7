"""Univariate polynomials over Q (coefficient lists, constant term first) and their rational roots."""
import math
from fractions import Fraction
from typing import List, Sequence

Coefficients = List[Fraction]


def trim(coeffs: Sequence) -> Coefficients:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return out


def add(p: Sequence, q: Sequence) -> Coefficients:
    size = max(len(p), len(q))
    return trim([(p[k] if k < len(p) else 0) + (q[k] if k < len(q) else 0) for k in range(size)])


def scale(p: Sequence, factor) -> Coefficients:
    return trim([Fraction(c) * factor for c in p])


def mul(p: Sequence, q: Sequence) -> Coefficients:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += Fraction(a) * b
    return trim(out)


def evaluate(p: Sequence, x):
    total = Fraction(0)
    for c in reversed(p):
        total = total * x + c
    return total


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small = [k for k in range(1, math.isqrt(n) + 1) if n % k == 0]
    return sorted(set(small + [n // k for k in small]))


def rational_roots(coeffs: Sequence) -> List[Fraction]:
    """Distinct rational roots, ascending."""
    p = trim(coeffs)
    if not p:
        raise ValueError("the zero polynomial has every number as a root")
    common = math.lcm(*(c.denominator for c in p))
    ints = [int(c * common) for c in p]
    roots = set()
    while ints and ints[0] == 0:
        roots.add(Fraction(0))
        ints.pop(0)
    if len(ints) > 1:
        for num in _divisors(ints[0]):
            for den in _divisors(ints[-1]):
                for candidate in (Fraction(num, den), Fraction(-num, den)):
                    if evaluate(ints, candidate) == 0:
                        roots.add(candidate)
    return sorted(roots)


def quadratic_discriminant(coeffs: Sequence) -> Fraction:
    c, b, a = (list(trim(coeffs)) + [Fraction(0)] * 3)[:3]
    return b * b - 4 * a * c
