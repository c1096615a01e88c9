"""Obstructions to positive full-twists with n-linking.

If K is deformed into J by such a twist, J # (-K) bounds a disk in a
punctured CP^2-bar representing n times a generator; that pins down several
V_k of J # (-K) exactly and brackets its nu+.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cfk import VSequence, expr_v_sequence
from .knotexpr import KnotExpr

__all__ = [
    "DiskClassConstraints",
    "DiskVerdict",
    "NuInterval",
    "FullTwistReport",
    "cp2_constraints",
    "check_disk_class",
    "thm1_interval",
    "thm2_interval",
    "obstruct_full_twist",
]


@dataclass(frozen=True)
class DiskClassConstraints:
    n: int
    required: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class DiskVerdict:
    consistent: bool
    witness: Optional[int] = None

    def __str__(self) -> str:
        return "consistent" if self.consistent else f"obstructed at k={self.witness}"


@dataclass(frozen=True)
class NuInterval:
    lo: int
    hi: Optional[int]

    def __post_init__(self):
        if self.hi is not None and self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    def __contains__(self, value: int) -> bool:
        return self.lo <= value and (self.hi is None or value <= self.hi)

    def as_list(self) -> list:
        return [self.lo, self.hi]


def _half_product(a: Fraction, b: Fraction) -> int:
    value = a * b / 2
    assert value.denominator == 1, value
    return int(value)


def cp2_constraints(n: int) -> DiskClassConstraints:
    """Values of V_k forced on a knot bounding a disk of class n*gamma.

    n = 0: V_0 = 0.  Odd n: V_{nj} = (1/2)((n-1)/2 - j)((n-1)/2 - j + 1) for
    0 <= j <= (n-1)/2.  Even n > 0: V_{n/2 + nj} = (1/2)(n/2 - j)(n/2 - j - 1)
    for 0 <= j <= n/2 - 1.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if n == 0:
        return DiskClassConstraints(0, ((0, 0),))
    req = []
    if n % 2:
        for j in range((n - 1) // 2 + 1):
            a = Fraction(n - 1, 2) - j
            req.append((n * j, _half_product(a, a + 1)))
    else:
        for j in range(n // 2):
            a = Fraction(n, 2) - j
            req.append((n // 2 + n * j, _half_product(a, a - 1)))
    return DiskClassConstraints(n, tuple(req))


def check_disk_class(v: VSequence, n: int) -> DiskVerdict:
    """Compare a V-sequence against :func:`cp2_constraints`; report the first
    violated index."""
    for k, value in cp2_constraints(n).required:
        if v[k] != value:
            return DiskVerdict(False, k)
    return DiskVerdict(True)


def thm1_interval(n: int) -> NuInterval:
    """Range of nu+(J # -K) after a positive full-twist with n-linking."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if n == 0:
        return NuInterval(0, 0)
    return NuInterval((n - 1) * (n - 2) // 2, n * (n - 1) // 2)


def thm2_interval(n: int, nu_k: int, nu_mirror_k: int) -> NuInterval:
    """Range of nu+(J) given nu+(K) and nu+(-K); the lower end is clamped at 0."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if n == 0:
        return NuInterval(0, nu_k)
    return NuInterval(max(0, (n - 1) * (n - 2) // 2 - nu_mirror_k), n * (n - 1) // 2 + nu_k)


@dataclass(frozen=True)
class FullTwistReport:
    source: KnotExpr
    target: KnotExpr
    n: int
    nu_diff: int
    interval: NuInterval
    cp2: DiskVerdict

    @property
    def in_interval(self) -> bool:
        return self.nu_diff in self.interval

    @property
    def verdict(self) -> str:
        return "consistent" if self.in_interval and self.cp2.consistent else "obstructed"

    def as_dict(self) -> dict:
        return {
            "from": str(self.source),
            "to": str(self.target),
            "n": self.n,
            "verdict": self.verdict,
            "nu_diff": self.nu_diff,
            "interval": self.interval.as_list(),
            "in_interval": self.in_interval,
            "cp2": "consistent" if self.cp2.consistent else "obstructed",
            "cp2_witness": self.cp2.witness,
        }


def obstruct_full_twist(source: KnotExpr, target: KnotExpr, n: int) -> FullTwistReport:
    """Test whether ``source`` can become ``target`` by a positive full-twist
    with n-linking, using both the nu+ interval and the exact V_k constraints
    on target # (-source)."""
    vs = expr_v_sequence(target - source)
    return FullTwistReport(source, target, n, vs.nu_plus, thm1_interval(n), check_disk_class(vs, n))
