"""nu+ and 4-genus of cables: the general lower bound, the regime where it is
sharp, and the exact 4-genus of positive cables of nu+-sharp knots."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .alexander import certify
from .cfk import nu_plus
from .errors import KnotExprError, UncertifiedAtomError
from .knotexpr import KnotExpr, Unknot, cable

__all__ = [
    "CableQuery",
    "CableNu",
    "cable_nu_lower",
    "wu_regime",
    "g4_cable",
    "genus_upper",
    "cable_nu",
    "cable_table",
]


def _check(p: int, q: int, *, positive_q: bool = False) -> None:
    if p < 1:
        raise ValueError(f"cable parameter p must be positive, got {p}")
    if positive_q and q < 1:
        raise ValueError(f"cable parameter q must be positive, got {q}")
    if math.gcd(p, q) != 1:
        raise ValueError(f"cable parameters must be coprime, got ({p},{q})")


def _torus_term(p: int, q: int) -> int:
    return (p - 1) * (q - 1) // 2


@dataclass(frozen=True)
class CableQuery:
    companion: KnotExpr
    p: int
    q: int

    def __post_init__(self):
        _check(self.p, self.q)


def cable_nu_lower(p: int, q: int, nu_k: int) -> int:
    """max(0, p * nu+(K) + (p-1)(q-1)/2), a lower bound for nu+(K_{p,q})."""
    _check(p, q)
    if nu_k < 0:
        raise ValueError(f"nu+ is non-negative, got {nu_k}")
    return max(0, p * nu_k + _torus_term(p, q))


def wu_regime(p: int, q: int, nu_k: int) -> bool:
    """True when q >= (2 nu+(K) - 1) p - 1, where the lower bound is exact."""
    return q >= (2 * nu_k - 1) * p - 1


def g4_cable(p: int, q: int, g4_k: int) -> int:
    """4-genus of K_{p,q} for q > 0 when nu+(K) = g_4(K) (caller's certificate)."""
    _check(p, q, positive_q=True)
    return p * g4_k + _torus_term(p, q)


def genus_upper(p: int, q: int, g4_k: int) -> int:
    """Slice-surface bound g_4(K_{p,q}) <= p g_4(K) + (p-1)(q-1)/2."""
    _check(p, q, positive_q=True)
    return p * g4_k + _torus_term(p, q)


@dataclass(frozen=True)
class CableNu:
    """Either an exact value (``lower == upper``) or bounds; ``upper`` is None
    when only a lower bound is known."""

    lower: int
    upper: Optional[int]
    source: str

    @property
    def exact(self) -> Optional[int]:
        return self.lower if self.lower == self.upper else None

    def as_dict(self) -> dict:
        return {"exact": self.exact, "lower": self.lower, "upper": self.upper, "source": self.source}


def cable_nu(companion: KnotExpr, p: int, q: int) -> CableNu:
    """nu+ of the (p,q)-cable of a single certified atom.

    The engine value is used when the cable is itself certified; otherwise the
    closed form in the sharp regime; otherwise an interval.  Negative q gives a
    lower bound only.
    """
    _check(p, q)
    terms = companion.terms
    if len(terms) > 1 or (terms and terms[0][0] != 1):
        raise KnotExprError(f"cable companion must be a single positive atom, got {companion}")
    atom = terms[0][1] if terms else Unknot()
    g = certify(atom).genus
    nu_k = nu_plus(companion)
    lower = cable_nu_lower(p, q, nu_k)
    if q < 0:
        return CableNu(lower, None, "lower-bound")
    sign, cab = cable(p, q, 1, atom)
    try:
        certify(cab)
    except UncertifiedAtomError:
        pass
    else:
        value = nu_plus(KnotExpr.atom(cab, sign))
        return CableNu(value, value, "engine")
    if wu_regime(p, q, nu_k):
        return CableNu(lower, lower, "wu")
    return CableNu(lower, genus_upper(p, q, g), "bounds")


def cable_table(companion: KnotExpr, ps: range, qs: range) -> list[dict]:
    """Rows of :func:`cable_nu` over coprime (p, q) pairs."""
    rows = []
    for p in ps:
        for q in qs:
            if q == 0 or math.gcd(p, q) != 1:
                continue
            rows.append({"p": p, "q": q, **cable_nu(companion, p, q).as_dict()})
    return rows
