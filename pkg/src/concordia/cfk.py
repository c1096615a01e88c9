"""Knot Floer complexes of L-space knots, their duals and tensor products,
and extraction of the V_k sequence and nu+.

A :class:`BifilteredComplex` stores one representative per F2[U,U^-1]
generator, placed at a point ``(i, j)`` of the plane with a Maslov grading.
The action of ``U`` moves a generator to ``(i-1, j-1)`` and lowers the grading
by two.  A differential entry ``(h, u)`` on ``g`` means ``dg`` contains
``U^u h``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from . import gf2
from .alexander import LSpaceCertificate, alternating_exponents, certify, genus
from .errors import NonStabilizingError
from .knotexpr import KnotExpr

__all__ = [
    "Generator",
    "BifilteredComplex",
    "VSequence",
    "staircase",
    "unknot_complex",
    "dual",
    "tensor",
    "v_k",
    "v_sequence",
    "complex_for",
    "expr_v_k",
    "expr_v_sequence",
    "nu_plus",
    "tau_additive",
]


@dataclass(frozen=True)
class Generator:
    i: int
    j: int
    maslov: int
    label: str = ""


@dataclass(frozen=True)
class BifilteredComplex:
    """Finite free bifiltered complex over F2[U,U^-1].

    ``tower`` optionally lists generators whose sum (each translated to
    grading 0) is a cycle generating the homology of the localized complex.
    When absent it is computed on demand.
    """

    generators: tuple[Generator, ...]
    differential: tuple[tuple[tuple[int, int], ...], ...]
    tower: tuple[int, ...] | None = None

    def __len__(self) -> int:
        return len(self.generators)

    @cached_property
    def genus_bound(self) -> int:
        """G = max |j - i| over generators."""
        return max((abs(g.j - g.i) for g in self.generators), default=0)

    @cached_property
    def tower_cycle(self) -> tuple[int, ...]:
        if self.tower is not None:
            return self.tower
        return _find_tower_cycle(self)

    def d_squared_is_zero(self) -> bool:
        for src in range(len(self)):
            acc: dict[tuple[int, int], int] = {}
            for mid, u1 in self.differential[src]:
                for dst, u2 in self.differential[mid]:
                    key = (dst, u1 + u2)
                    acc[key] = acc.get(key, 0) ^ 1
            if any(acc.values()):
                return False
        return True

    def check(self) -> None:
        """Raise ``ValueError`` unless d^2 = 0 and every differential entry
        lowers the filtration and drops the grading by one."""
        if self.tower is not None and any(self.generators[g].maslov % 2 for g in self.tower):
            raise ValueError("tower cycle contains odd-graded generators")
        for src, g in enumerate(self.generators):
            for dst, u in self.differential[src]:
                h = self.generators[dst]
                if u < 0:
                    raise ValueError(f"negative U power on {src} -> {dst}")
                di, dj = h.i - u, h.j - u
                if di > g.i or dj > g.j or (di, dj) == (g.i, g.j):
                    raise ValueError(f"differential {src} -> {dst} does not lower the filtration")
                if h.maslov - 2 * u != g.maslov - 1:
                    raise ValueError(f"differential {src} -> {dst} does not drop the grading by 1")
        if not self.d_squared_is_zero():
            raise ValueError("d^2 != 0")


def _find_tower_cycle(c: BifilteredComplex) -> tuple[int, ...]:
    # With U set to 1 the even part of the complex is the grading-0 slice of the
    # localized complex; its homology must be one-dimensional.
    gens = c.generators
    even = [g for g in range(len(c)) if gens[g].maslov % 2 == 0]
    odd = [g for g in range(len(c)) if gens[g].maslov % 2]
    even_pos = {g: b for b, g in enumerate(even)}
    odd_pos = {g: b for b, g in enumerate(odd)}
    out_of_even = []
    for g in even:
        vec = 0
        for h, _ in c.differential[g]:
            vec ^= 1 << odd_pos[h]
        out_of_even.append(vec)
    into_even = []
    for g in odd:
        vec = 0
        for h, _ in c.differential[g]:
            vec ^= 1 << even_pos[h]
        into_even.append(vec)
    reps = gf2.homology_basis(out_of_even, into_even)
    if len(reps) != 1:
        raise ValueError(f"localized homology has rank {len(reps)} in even degree, expected 1")
    z = reps[0]
    return tuple(even[b] for b in range(len(even)) if z >> b & 1)


@dataclass(frozen=True)
class VSequence:
    """V_0, V_1, ... stored up to and including the first zero."""

    values: tuple[int, ...]

    def __post_init__(self):
        if not self.values or self.values[-1] != 0:
            raise ValueError(f"V-sequence must end in 0: {self.values}")
        if any(v < 0 for v in self.values):
            raise ValueError(f"V-sequence must be non-negative: {self.values}")

    def __getitem__(self, k: int) -> int:
        return self.values[k] if k < len(self.values) else 0

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    @property
    def nu_plus(self) -> int:
        return self.values.index(0)

    def is_non_increasing(self) -> bool:
        return all(a >= b for a, b in zip(self.values, self.values[1:]))

    def as_list(self) -> list[int]:
        return list(self.values)


# -- constructions ---------------------------------------------------------


def unknot_complex() -> BifilteredComplex:
    return BifilteredComplex((Generator(0, 0, 0, "x0"),), ((),), (0,))


def staircase(cert: LSpaceCertificate) -> BifilteredComplex:
    """Staircase complex of an L-space knot.

    With Alexander exponents n_0 > n_1 > ... > n_{2m}, the generator x_0 sits
    at (0, n_0) in grading 0; odd-indexed generators are the outer corners,
    reached from the previous generator by a step right of length
    n_{s-1} - n_s, and each even generator lies below the preceding corner by
    n_{s-1} - n_s.  d(x_odd) = x_{s-1} + x_{s+1}.
    """
    exps = alternating_exponents(cert.alexander)
    gens = [Generator(0, exps[0], 0, "x0")]
    for s in range(1, len(exps)):
        prev = gens[-1]
        step = exps[s - 1] - exps[s]
        if s % 2:
            gens.append(Generator(prev.i + step, prev.j, prev.maslov + 1, f"x{s}"))
        else:
            gens.append(Generator(prev.i, prev.j - step, prev.maslov - 1, f"x{s}"))
    diff = tuple(((s - 1, 0), (s + 1, 0)) if s % 2 else () for s in range(len(gens)))
    return BifilteredComplex(tuple(gens), diff, (0,))


def dual(c: BifilteredComplex) -> BifilteredComplex:
    """Dual complex, modelling the mirror: positions and gradings negated,
    differential transposed."""
    gens = tuple(Generator(-g.i, -g.j, -g.maslov, g.label + "'") for g in c.generators)
    incoming: list[list[tuple[int, int]]] = [[] for _ in gens]
    for src, targets in enumerate(c.differential):
        for dst, u in targets:
            incoming[dst].append((src, u))
    return BifilteredComplex(gens, tuple(tuple(t) for t in incoming))


def tensor(a: BifilteredComplex, b: BifilteredComplex) -> BifilteredComplex:
    """Tensor product over F2[U,U^-1] (connected sum)."""
    nb = len(b)
    gens = []
    diff = []
    for x, ga in enumerate(a.generators):
        da = a.differential[x]
        for y, gb in enumerate(b.generators):
            gens.append(Generator(ga.i + gb.i, ga.j + gb.j, ga.maslov + gb.maslov, f"{ga.label}.{gb.label}"))
            diff.append(tuple((t * nb + y, u) for t, u in da) + tuple((x * nb + t, u) for t, u in b.differential[y]))
    tower = tuple(x * nb + y for x in a.tower_cycle for y in b.tower_cycle)
    return BifilteredComplex(tuple(gens), tuple(diff), tower)


# -- V_k -------------------------------------------------------------------


def _tower_survives(c: BifilteredComplex, cap: Sequence[int], m: int, depth: int) -> tuple[bool, bool]:
    """Is the tower class of grading ``m`` nonzero in the truncated model?

    The truncated model of A_k^+ keeps U^n g for cap(g) - depth <= n <= cap(g);
    it is a subcomplex, so only the grading m and m+1 slices are needed.
    Returns ``(survives, floor_reached)``; the second flag reports whether the
    truncation floor removed any element the test looked at.
    """
    gens = c.generators
    floor_reached = False
    index: dict[int, int] = {}
    for g, gen in enumerate(gens):
        if (gen.maslov - m) % 2:
            continue
        n = (gen.maslov - m) // 2
        if n > cap[g]:
            continue
        if n < cap[g] - depth:
            floor_reached = True
            continue
        index[g] = len(index)
    w = 0
    for g in c.tower_cycle:
        b = index.get(g)
        if b is not None:
            w |= 1 << b
    if not w:
        return False, floor_reached
    span = gf2.Echelon()
    for g, gen in enumerate(gens):
        if (gen.maslov - m - 1) % 2:
            continue
        n = (gen.maslov - m - 1) // 2
        if n > cap[g]:
            continue
        if n < cap[g] - depth:
            floor_reached = True
            continue
        vec = 0
        for h, u in c.differential[g]:
            if n + u <= cap[h]:
                vec ^= 1 << index[h]
        if vec:
            span.add(vec)
    return span.reduce(w) != 0, floor_reached


def _v_k_at_depth(c: BifilteredComplex, k: int, depth: int) -> tuple[int, bool]:
    cap = [max(g.i, g.j - k) for g in c.generators]
    lowest = min(g.maslov - 2 * cap[x] for x, g in enumerate(c.generators) if g.maslov % 2 == 0)
    # below `lowest` the even slice is empty, so the tower is certainly dead there
    v = max(0, -lowest // 2)
    floor_reached = False
    while v > 0:
        alive, hit = _tower_survives(c, cap, -2 * v, depth)
        floor_reached |= hit
        if alive:
            break
        v -= 1
    return v, floor_reached


def v_k(c: BifilteredComplex, k: int, *, depth: int | None = None) -> int:
    """V_k: minus half the bottom grading of the tower in H_*(A_k^+).

    The truncation depth defaults to D = 2(G + k + 4).  Whenever the floor of
    the truncated model was reached, the computation is repeated at D + 4 and
    must agree.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    D = 2 * (c.genus_bound + k + 4) if depth is None else depth
    value, floor_reached = _v_k_at_depth(c, k, D)
    if floor_reached:
        again, _ = _v_k_at_depth(c, k, D + 4)
        if again != value:
            raise NonStabilizingError(f"V_{k} changed from {value} to {again} between depths {D} and {D + 4}")
    return value


def v_sequence(c: BifilteredComplex) -> VSequence:
    limit = c.genus_bound + 2
    values = []
    for k in range(limit + 1):
        values.append(v_k(c, k))
        if values[-1] == 0:
            return VSequence(tuple(values))
    raise NonStabilizingError(f"V_k did not reach 0 by k = {limit}")


# -- expressions -----------------------------------------------------------


@lru_cache(maxsize=None)
def _atom_complex(atom, mirrored: bool) -> BifilteredComplex:
    c = staircase(certify(atom))
    if mirrored:
        c = dual(c)
        # materialize the tower cycle once; the complex is cached
        c = BifilteredComplex(c.generators, c.differential, c.tower_cycle)
    return c


def _factors(expr: KnotExpr) -> Iterable[BifilteredComplex]:
    for coeff, atom in expr:
        for _ in range(abs(coeff)):
            yield _atom_complex(atom, coeff < 0)


@lru_cache(maxsize=256)
def complex_for(expr: KnotExpr) -> BifilteredComplex:
    """Tensor product of (dual) staircases for every atom in ``expr``.

    Raises :class:`UncertifiedAtomError` if an atom is outside the universe.
    """
    result = None
    for f in _factors(expr):
        result = f if result is None else tensor(result, f)
    return unknot_complex() if result is None else result


@lru_cache(maxsize=None)
def expr_v_k(expr: KnotExpr, k: int) -> int:
    return v_k(complex_for(expr), k)


@lru_cache(maxsize=None)
def expr_v_sequence(expr: KnotExpr) -> VSequence:
    c = complex_for(expr)
    limit = c.genus_bound + 2
    values = []
    for k in range(limit + 1):
        values.append(expr_v_k(expr, k))
        if values[-1] == 0:
            return VSequence(tuple(values))
    raise NonStabilizingError(f"V_k({expr}) did not reach 0 by k = {limit}")


def nu_plus(expr: KnotExpr) -> int:
    """nu+ = min{k : V_k = 0}."""
    return expr_v_sequence(expr).nu_plus


def tau_additive(expr: KnotExpr) -> int:
    """tau as a homomorphism: sum of coefficient * genus over L-space atoms."""
    return sum(c * genus(a) for c, a in expr)


def default_workers() -> int:
    """Parallel width from ``CONCORDIA_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("CONCORDIA_THREADS", "1")))
    except ValueError:
        return 1
