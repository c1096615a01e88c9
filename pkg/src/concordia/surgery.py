"""Correction terms of surgeries on knots in the universe.

All values are exact :class:`fractions.Fraction` instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cfk import expr_v_k
from .knotexpr import KnotExpr

__all__ = [
    "SpinCIndex",
    "f_p",
    "d_unknot_rational",
    "surgery_v_index",
    "d_surgery",
    "parity_classes",
    "parity_classes_closed_form",
    "fsq_odd_product",
    "fsq_odd_expanded",
    "fsq_even_product",
    "fsq_even_expanded",
]


@dataclass(frozen=True)
class SpinCIndex:
    """Label ``i`` of a Spin^c structure on p/q-surgery, 0 <= i < p."""

    p: int
    q: int
    i: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError(f"surgery coefficient must be positive, got {self.p}/{self.q}")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"p and q must be coprime, got {self.p}/{self.q}")
        if not 0 <= self.i < self.p:
            raise ValueError(f"Spin^c index {self.i} out of range [0, {self.p})")


def f_p(p: int, i: int) -> Fraction:
    """d(S^3_p(O), i) = (-p + (p - 2i)^2) / (4p)."""
    if p < 1:
        raise ValueError(f"p must be positive, got {p}")
    if not 0 <= i < p:
        raise ValueError(f"index {i} out of range [0, {p})")
    return Fraction(-p + (p - 2 * i) ** 2, 4 * p)


def d_unknot_rational(p: int, q: int, i: int) -> Fraction:
    """d(S^3_{p/q}(O), i) by the lens-space recursion

    d(p, q, i) = ((2i + 1 - p - q)^2 - pq) / (4pq) - d(q, p mod q, i mod q),
    terminating at d(1, 0, 0) = 0.
    """
    SpinCIndex(p, q, i)
    total = Fraction(0)
    sign = 1
    while p != 1 or q != 0:
        total += sign * Fraction((2 * i + 1 - p - q) ** 2 - p * q, 4 * p * q)
        p, q, i = q, p % q, i % q
        sign = -sign
    return total


def surgery_v_index(p: int, q: int, i: int) -> int:
    """The index min(floor(i/q), floor((p + q - 1 - i)/q)) of V in the surgery formula."""
    return min(i // q, (p + q - 1 - i) // q)


def d_surgery(expr: KnotExpr, p: int, q: int, i: int) -> Fraction:
    """d(S^3_{p/q}(K), i) = d(S^3_{p/q}(O), i) - 2 V_m(K)."""
    return d_unknot_rational(p, q, i) - 2 * expr_v_k(expr, surgery_v_index(p, q, i))


def parity_classes(n: int) -> frozenset[int]:
    """{i in [0, n^2) : f_{n^2}(i) is an even integer}, by direct evaluation."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    p = n * n
    out = set()
    for i in range(p):
        v = f_p(p, i)
        if v.denominator == 1 and v.numerator % 2 == 0:
            out.add(i)
    return frozenset(out)


def parity_classes_closed_form(n: int) -> frozenset[int]:
    """n Z for odd n, n/2 + n Z for even n, intersected with [0, n^2)."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    start = 0 if n % 2 else n // 2
    return frozenset(range(start, n * n, n))


def fsq_odd_product(n: int, i: int) -> Fraction:
    a = Fraction(n - 1, 2) - Fraction(i, n)
    return a * (a + 1)


def fsq_odd_expanded(n: int, i: int) -> Fraction:
    return Fraction((n + 1) * (n - 1), 4) - i + Fraction(i, n) ** 2


def fsq_even_product(n: int, i: int) -> Fraction:
    x = (i - Fraction(n, 2)) / n
    return (Fraction(n, 2) - x) * (Fraction(n, 2) - x - 1)


def fsq_even_expanded(n: int, i: int) -> Fraction:
    x = (i - Fraction(n, 2)) / n
    return Fraction(n, 2) ** 2 - i + x + x * x
