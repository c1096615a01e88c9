"""Alexander polynomials of torus knots and cables, torsion coefficients and
L-space certificates."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

import math

from .errors import NotLSpaceError, UncertifiedAtomError
from .knotexpr import Atom, Cable, Torus, Unknot

__all__ = [
    "LaurentPoly",
    "LSpaceCertificate",
    "torus_alexander",
    "cable_alexander",
    "torsion_coeff",
    "certify",
    "genus",
    "alternating_exponents",
    "certified_atoms",
]


@dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial in ``t``; ``coeffs`` holds (exponent, coefficient)
    pairs sorted by exponent with no zero coefficients."""

    coeffs: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> "LaurentPoly":
        return cls(tuple(sorted((e, c) for e, c in d.items() if c != 0)))

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls(((0, 1),))

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def coeff(self, e: int) -> int:
        return self.as_dict().get(e, 0)

    @property
    def degree(self) -> int:
        """Largest exponent (0 for the zero polynomial)."""
        return self.coeffs[-1][0] if self.coeffs else 0

    @property
    def min_exponent(self) -> int:
        return self.coeffs[0][0] if self.coeffs else 0

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.from_dict(out)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = self.as_dict()
        for e, c in other.coeffs:
            out[e] = out.get(e, 0) + c
        return LaurentPoly.from_dict(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.coeffs))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def substitute_power(self, p: int) -> "LaurentPoly":
        """Return f(t^p)."""
        return LaurentPoly.from_dict({e * p: c for e, c in self.coeffs})

    def shift(self, k: int) -> "LaurentPoly":
        """Return t^k f(t)."""
        return LaurentPoly(tuple((e + k, c) for e, c in self.coeffs))

    def value_at_one(self) -> int:
        return sum(c for _, c in self.coeffs)

    def is_symmetric(self) -> bool:
        d = self.as_dict()
        return all(d.get(-e, 0) == c for e, c in d.items())

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        out = ""
        for e, c in reversed(self.coeffs):
            mag = abs(c)
            if e == 0:
                mono = str(mag)
            else:
                base = "t" if e == 1 else f"t^{e}"
                mono = base if mag == 1 else f"{mag}*{base}"
            if not out:
                out = ("-" if c < 0 else "") + mono
            else:
                out += (" - " if c < 0 else " + ") + mono
        return out


def _semigroup_gaps(p: int, q: int) -> list[int]:
    """Non-negative integers not of the form a*p + b*q with a, b >= 0."""
    frob = p * q - p - q
    if frob < 0:
        return []
    reachable = [False] * (frob + 1)
    reachable[0] = True
    for s in range(1, frob + 1):
        reachable[s] = (s >= p and reachable[s - p]) or (s >= q and reachable[s - q])
    return [s for s in range(frob + 1) if not reachable[s]]


@lru_cache(maxsize=None)
def torus_alexander(p: int, q: int) -> LaurentPoly:
    """Symmetrized Alexander polynomial of T(p,q), p, q >= 1 coprime.

    Built from the gaps of the semigroup <p, q>:
    Delta(t) = t^{-g} (1 + (t - 1) sum_{s in gaps} t^s).
    """
    if p < 1 or q < 1:
        raise ValueError(f"torus_alexander needs p, q >= 1, got ({p},{q})")
    if math.gcd(p, q) != 1:
        raise ValueError(f"torus_alexander needs coprime parameters, got ({p},{q})")
    out = {0: 1}
    for s in _semigroup_gaps(p, q):
        out[s + 1] = out.get(s + 1, 0) + 1
        out[s] = out.get(s, 0) - 1
    g = (p - 1) * (q - 1) // 2
    return LaurentPoly.from_dict(out).shift(-g)


def cable_alexander(companion: LaurentPoly, p: int, q: int) -> LaurentPoly:
    """Delta_{K_{p,q}}(t) = Delta_K(t^p) * Delta_{T(p,q)}(t)."""
    if p < 1 or math.gcd(p, q) != 1:
        raise ValueError(f"cable parameters must satisfy p >= 1, gcd(p,q) = 1; got ({p},{q})")
    if p == 1:
        return companion
    return companion.substitute_power(p) * torus_alexander(p, abs(q))


def torsion_coeff(poly: LaurentPoly, k: int) -> int:
    """t_k = sum_{j >= 1} j * a_{k+j}."""
    return sum((e - k) * c for e, c in poly.coeffs if e > k)


def alternating_exponents(poly: LaurentPoly) -> list[int]:
    """Exponents n_0 > n_1 > ... of an L-space-shaped polynomial.

    Raises :class:`NotLSpaceError` unless the nonzero coefficients are +-1,
    alternate in sign starting with +1 at the top degree, and sum to 1.
    """
    terms = list(reversed(poly.coeffs))
    if not terms or poly.value_at_one() != 1:
        raise NotLSpaceError(f"{poly} does not evaluate to 1 at t = 1")
    for idx, (e, c) in enumerate(terms):
        if c != (1 if idx % 2 == 0 else -1):
            raise NotLSpaceError(f"{poly} is not of alternating +-1 form (exponent {e})")
    return [e for e, _ in terms]


@dataclass(frozen=True)
class LSpaceCertificate:
    atom: Atom
    genus: int
    alexander: LaurentPoly

    def __post_init__(self):
        exps = alternating_exponents(self.alexander)
        if exps[0] != self.genus or exps[-1] != -self.genus:
            raise NotLSpaceError(f"genus {self.genus} does not match {self.alexander}")


@lru_cache(maxsize=None)
def certify(atom: Atom) -> LSpaceCertificate:
    """Certify that ``atom`` is an L-space knot and attach its Alexander data.

    Positive torus knots are always certified; a cable C(p,q;K) is certified
    when K is and q >= p(2g(K) - 1).
    """
    if isinstance(atom, Unknot):
        return LSpaceCertificate(atom, 0, LaurentPoly.one())
    if isinstance(atom, Torus):
        return LSpaceCertificate(atom, (atom.p - 1) * (atom.q - 1) // 2, torus_alexander(atom.p, atom.q))
    if isinstance(atom, Cable):
        try:
            comp = certify(atom.companion)
        except UncertifiedAtomError as exc:
            raise UncertifiedAtomError(f"{atom}: companion not certified ({exc})") from None
        threshold = atom.p * (2 * comp.genus - 1)
        if atom.q < threshold:
            raise UncertifiedAtomError(
                f"{atom} is not a certified L-space knot (needs q >= {threshold})"
            )
        g = atom.p * comp.genus + (atom.p - 1) * (atom.q - 1) // 2
        return LSpaceCertificate(atom, g, cable_alexander(comp.alexander, atom.p, atom.q))
    raise TypeError(f"not an atom: {atom!r}")


def genus(cert: LSpaceCertificate | Atom) -> int:
    """Seifert genus (= 4-genus = nu+) of a certified atom."""
    if not isinstance(cert, LSpaceCertificate):
        cert = certify(cert)
    return cert.genus


def certified_atoms(max_genus: int) -> list[Atom]:
    """Every certified torus knot and (iterated) cable of genus <= ``max_genus``."""
    out: list[Atom] = []
    for p in range(2, 2 * max_genus + 2):
        for q in range(p + 1, 2 * max_genus + 2):
            if math.gcd(p, q) == 1 and (p - 1) * (q - 1) // 2 <= max_genus:
                out.append(Torus(p, q))
    frontier = list(out)
    while frontier:
        new = []
        for comp in frontier:
            gk = certify(comp).genus
            for p in range(2, max_genus // gk + 1):
                q = p * (2 * gk - 1)
                while p * gk + (p - 1) * (q - 1) // 2 <= max_genus:
                    if math.gcd(p, q) == 1:
                        new.append(Cable(p, q, comp))
                    q += 1
        out.extend(new)
        frontier = new
    return out
