"""Knot expressions: formal integer combinations of torus knots and cables.

The expression language::

    expr := term (("+" | "-") term)*
    term := [INT "*"] atom
    atom := "U" | "T(" INT "," INT ")" | "C(" INT "," INT ";" atom ")"
          | "-" atom | "(" expr ")"

Whitespace is ignored between tokens.  Expressions are normalized on
construction so that equal concordance-group elements (as formal sums) have
equal representations: mirrors become negative coefficients, torus parameters
are ordered, trivial cables and torus knots collapse, and the unknot vanishes.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .errors import KnotExprError, ParseError

__all__ = [
    "Unknot",
    "Torus",
    "Cable",
    "Atom",
    "KnotExpr",
    "UNKNOT",
    "parse",
    "torus",
    "cable",
]


@dataclass(frozen=True)
class Unknot:
    def __str__(self) -> str:
        return "U"


@dataclass(frozen=True)
class Torus:
    """Positive torus knot T(p,q) with 1 < p < q, gcd(p,q) = 1."""

    p: int
    q: int

    def __str__(self) -> str:
        return f"T({self.p},{self.q})"


@dataclass(frozen=True)
class Cable:
    """(p,q)-cable of a non-trivial, positively oriented companion atom.

    ``q`` may be negative (negative cables); ``p >= 2``.
    """

    p: int
    q: int
    companion: "Atom"

    def __str__(self) -> str:
        return f"C({self.p},{self.q};{self.companion})"


Atom = Union[Unknot, Torus, Cable]
UNKNOT = Unknot()


def _atom_key(atom: Atom) -> tuple[int, str]:
    return (1 if isinstance(atom, Cable) else 0, str(atom))


def torus(p: int, q: int) -> tuple[int, Atom]:
    """Normalize T(p,q) to ``(sign, atom)``.

    T(p,-q) is the mirror of T(p,q); T(1,q) is the unknot.
    """
    if p < 1:
        raise KnotExprError(f"torus parameter p must be >= 1, got {p}")
    if math.gcd(p, q) != 1:
        raise KnotExprError(f"torus parameters not coprime: gcd({p},{q}) = {math.gcd(p, q)}")
    sign = 1 if q > 0 else -1
    a, b = sorted((p, abs(q)))
    if a == 1:
        return 1, UNKNOT
    return sign, Torus(a, b)


def cable(p: int, q: int, companion_sign: int, companion: Atom) -> tuple[int, Atom]:
    """Normalize the (p,q)-cable of ``companion_sign * companion``.

    Uses -(K_{p,q}) = (-K)_{p,-q} so the stored companion is always positive.
    """
    if p < 1:
        raise KnotExprError(f"cable parameter p must be >= 1, got {p}")
    if math.gcd(p, q) != 1:
        raise KnotExprError(f"cable parameters not coprime: gcd({p},{q}) = {math.gcd(p, q)}")
    if isinstance(companion, Unknot):
        return torus(p, q)
    if p == 1:
        return companion_sign, companion
    return companion_sign, Cable(p, companion_sign * q, companion)


@dataclass(frozen=True)
class KnotExpr:
    """Normalized formal sum ``sum(c * atom)``; the empty sum is the unknot.

    ``terms`` is sorted by the atoms' canonical strings and never contains a
    zero coefficient or the unknot.  Build instances with :meth:`from_terms`
    or :func:`parse` rather than directly.
    """

    terms: tuple[tuple[int, Atom], ...] = ()

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, Atom]]) -> "KnotExpr":
        acc: dict[Atom, int] = {}
        for coeff, atom in terms:
            if isinstance(atom, Unknot) or coeff == 0:
                continue
            acc[atom] = acc.get(atom, 0) + coeff
        items = sorted(((c, a) for a, c in acc.items() if c != 0), key=lambda t: _atom_key(t[1]))
        return cls(tuple(items))

    @classmethod
    def atom(cls, atom: Atom, coeff: int = 1) -> "KnotExpr":
        return cls.from_terms([(coeff, atom)])

    def __add__(self, other: "KnotExpr") -> "KnotExpr":
        return KnotExpr.from_terms(self.terms + other.terms)

    def __neg__(self) -> "KnotExpr":
        return KnotExpr(tuple((-c, a) for c, a in self.terms))

    def __sub__(self, other: "KnotExpr") -> "KnotExpr":
        return self + (-other)

    def __mul__(self, n: int) -> "KnotExpr":
        return KnotExpr.from_terms((n * c, a) for c, a in self.terms)

    __rmul__ = __mul__

    def __iter__(self) -> Iterator[tuple[int, Atom]]:
        return iter(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "U"
        parts = []
        for idx, (c, a) in enumerate(self.terms):
            mag = abs(c)
            body = str(a) if mag == 1 else f"{mag}*{a}"
            if idx == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"KnotExpr({str(self)!r})"

    @property
    def atoms(self) -> tuple[Atom, ...]:
        return tuple(a for _, a in self.terms)


# -- parser ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(1) is not None:
            tokens.append(("INT", m.group(1), m.start(1)))
        else:
            ch = m.group(2)
            if ch not in "UTC(),;+-*":
                raise ParseError(f"unexpected character {ch!r}", m.start(2), text)
            tokens.append((ch, ch, m.start(2)))
        pos = m.end()
    tokens.append(("EOF", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self, kind: str) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        if tok[0] != kind:
            expected = "integer" if kind == "INT" else repr(kind)
            found = "end of input" if tok[0] == "EOF" else repr(tok[1])
            raise ParseError(f"expected {expected}, found {found}", tok[2], self.text)
        self.i += 1
        return tok

    def integer(self) -> int:
        sign = 1
        if self.peek()[0] == "-":
            self.take("-")
            sign = -1
        return sign * int(self.take("INT")[1])

    def expr(self) -> KnotExpr:
        total = self.term()
        while self.peek()[0] in "+-":
            op = self.take(self.peek()[0])[0]
            rhs = self.term()
            total = total + rhs if op == "+" else total - rhs
        return total

    def term(self) -> KnotExpr:
        coeff = 1
        # "-2*T(2,3)" is accepted so that printed output always re-parses
        if self.peek()[0] == "-" and self.tokens[self.i + 1][0] == "INT":
            self.take("-")
            coeff = -1
        if self.peek()[0] == "INT":
            coeff *= int(self.take("INT")[1])
            self.take("*")
        return coeff * self.atom()

    def atom(self) -> KnotExpr:
        kind, _, pos = self.peek()
        if kind == "U":
            self.take("U")
            return KnotExpr()
        if kind == "-":
            self.take("-")
            return -self.atom()
        if kind == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "T":
            self.take("T")
            self.take("(")
            p = self.integer()
            self.take(",")
            q = self.integer()
            self.take(")")
            try:
                sign, a = torus(p, q)
            except KnotExprError as exc:
                raise ParseError(str(exc), pos, self.text) from None
            return KnotExpr.atom(a, sign)
        if kind == "C":
            self.take("C")
            self.take("(")
            p = self.integer()
            self.take(",")
            q = self.integer()
            self.take(";")
            comp_pos = self.peek()[2]
            companion = self.atom()
            self.take(")")
            if not companion.terms:
                comp_sign, comp_atom = 1, UNKNOT
            elif len(companion.terms) == 1 and abs(companion.terms[0][0]) == 1:
                comp_sign, comp_atom = companion.terms[0]
            else:
                raise ParseError("cable companion must be a single knot", comp_pos, self.text)
            try:
                sign, a = cable(p, q, comp_sign, comp_atom)
            except KnotExprError as exc:
                raise ParseError(str(exc), pos, self.text) from None
            return KnotExpr.atom(a, sign)
        found = "end of input" if kind == "EOF" else repr(self.peek()[1])
        raise ParseError(f"expected a knot, found {found}", pos, self.text)


def parse(text: str) -> KnotExpr:
    """Parse and normalize an expression.

    >>> str(parse("T(2,3) - C(2,5;T(2,3))"))
    'T(2,3) - C(2,5;T(2,3))'
    >>> parse("T(3,2) + -T(2,3)")
    KnotExpr('U')
    """
    p = _Parser(text)
    result = p.expr()
    p.take("EOF")
    return result
