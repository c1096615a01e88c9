"""Built-in verification suites.

Each suite returns a :class:`SuiteResult`; ``run`` stops a suite at its first
counterexample, which is reported verbatim.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from . import alexander, cabling, fulltwist, poset, surgery
from .cfk import expr_v_sequence, nu_plus, staircase, v_k
from .knotexpr import parse

__all__ = ["SuiteResult", "SUITES", "run", "run_all", "UNIVERSE_GENERATORS"]

UNIVERSE_GENERATORS = ("T(2,3)", "T(2,5)", "T(3,4)")
SEED = 20240901


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failure: Optional[str] = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failure is None

    def as_dict(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "checks": self.checks,
            "failure": self.failure,
            **self.details,
        }


# Each check generator yields None on success or a counterexample string.
Checks = Iterator[Optional[str]]


def _parity() -> Checks:
    for n in range(1, 61):
        brute = surgery.parity_classes(n)
        closed = surgery.parity_classes_closed_form(n)
        yield None if brute == closed else f"n={n}: brute {sorted(brute)} != closed {sorted(closed)}"
        yield None if len(brute) == n else f"n={n}: {len(brute)} classes"


def _identities() -> Checks:
    for n in range(1, 100):
        for i in sorted(surgery.parity_classes_closed_form(n)):
            f = surgery.f_p(n * n, i)
            if n % 2:
                forms = (surgery.fsq_odd_product(n, i), surgery.fsq_odd_expanded(n, i))
            else:
                forms = (surgery.fsq_even_product(n, i), surgery.fsq_even_expanded(n, i))
            yield None if forms == (f, f) else f"n={n}, i={i}: f={f}, forms={forms}"
    for p in range(1, 201):
        for i in range(p):
            d = surgery.d_unknot_rational(p, 1, i)
            yield None if d == surgery.f_p(p, i) else f"p={p}, i={i}: recursion {d} != f_p {surgery.f_p(p, i)}"


def _torus() -> Checks:
    for p in range(2, 9):
        for q in range(p + 1, 9):
            if math.gcd(p, q) != 1:
                continue
            got = nu_plus(parse(f"T({p},{q})"))
            want = (p - 1) * (q - 1) // 2
            yield None if got == want else f"nu+(T({p},{q})) = {got}, expected {want}"
    for atom in alexander.certified_atoms(12):
        cert = alexander.certify(atom)
        c = staircase(cert)
        for k in range(cert.genus + 1):
            got, want = v_k(c, k), alexander.torsion_coeff(cert.alexander, k)
            yield None if got == want else f"V_{k}({atom}) = {got}, torsion {want}"


def _cp2() -> Checks:
    for n in range(2, 9):
        for q, want in ((n + 1, n * (n - 1) // 2), (n - 1, (n - 1) * (n - 2) // 2)):
            expr = parse(f"T({n},{q})")
            vs = expr_v_sequence(expr)
            verdict = fulltwist.check_disk_class(vs, n)
            yield None if verdict.consistent else f"T({n},{q}), n={n}: {verdict}"
            yield None if vs.nu_plus == want else f"nu+(T({n},{q})) = {vs.nu_plus}, expected {want}"
            yield None if vs.nu_plus in fulltwist.thm1_interval(n) else f"T({n},{q}) outside interval"


def _wu() -> Checks:
    t23 = parse("T(2,3)")
    for q in (3, 5, 7, 9, 11):
        res = cabling.cable_nu(t23, 2, q)
        want = 2 + (q - 1) // 2
        yield None if res.source == "engine" else f"C(2,{q};T(2,3)) not computed by the engine"
        yield None if res.exact == want else f"nu+(C(2,{q};T(2,3))) = {res.exact}, expected {want}"
        low = cabling.cable_nu_lower(2, q, 1)
        yield None if low == want else f"lower bound {low} != {want} at q={q}"
    for comp in ("T(2,3)", "T(2,5)"):
        companion = parse(comp)
        g = nu_plus(companion)
        for p in (2, 3):
            for q in range(p * (2 * g - 1), 14):
                if q < 1 or math.gcd(p, q) != 1:
                    continue
                exact = cabling.cable_nu(companion, p, q).exact
                low = cabling.cable_nu_lower(p, q, g)
                yield None if exact is not None and exact >= low else f"({p},{q})-cable of {comp}: {exact} < {low}"
                if cabling.wu_regime(p, q, g):
                    yield None if exact == low else f"({p},{q})-cable of {comp}: {exact} != {low}"


def universe() -> poset.OrderUniverse:
    return poset.build_universe([parse(g) for g in UNIVERSE_GENERATORS], 1)


def _poset() -> Checks:
    u = universe()
    yield None if len(u) == 27 else f"universe has {len(u)} elements"
    yield None if u.is_reflexive() else "relation is not reflexive"
    bad = u.transitivity_violations()
    yield None if not bad else f"transitivity fails on {[str(u.elements[i]) for i in bad[0]]}"
    yield None if u.is_antisymmetric_on_classes() else "relation is not antisymmetric on classes"

    rng = random.Random(SEED)
    els = u.elements
    pairs = sorted(u.relation)
    for _ in range(200):
        a, b = rng.choice(pairs)
        z = rng.choice(els)
        x, y = els[a], els[b]
        yield None if poset.leq(x + z, y + z) else f"translation: {x} <= {y} but not after adding {z}"
        yield None if poset.leq(-y, -x) else f"negation: {x} <= {y} but not -{y} <= -{x}"

    invariants = [poset.tau_invariant(), poset.nu_invariant()]
    invariants += [poset.v_invariant(k) for k in range(4)]
    invariants += [poset.neg_d_invariant(p, 1, i) for p in (1, 5) for i in range(p)]
    for inv in invariants:
        rep = poset.monotone_check(inv, u)
        yield None if rep.ok else f"{rep.name} not monotone on {rep.violations[0]}"

    for _ in range(100):
        x, y = rng.choice(els), rng.choice(els)
        vx, vy, vs = expr_v_sequence(x), expr_v_sequence(y), expr_v_sequence(x + y)
        yield None if vs.nu_plus <= vx.nu_plus + vy.nu_plus else f"nu+ not subadditive on {x}, {y}"
        for m in range(6):
            for n in range(6):
                ok = vs[m + n] <= vx[m] + vy[n]
                yield None if ok else f"V_{m + n}({x} + {y}) > V_{m}({x}) + V_{n}({y})"


SUITES: dict[str, Callable[[], Checks]] = {
    "parity": _parity,
    "identities": _identities,
    "torus": _torus,
    "cp2": _cp2,
    "wu": _wu,
    "poset": _poset,
}


def run(name: str) -> SuiteResult:
    result = SuiteResult(name)
    for outcome in SUITES[name]():
        result.checks += 1
        if outcome is not None:
            result.failure = outcome
            break
    return result


def run_all(names: Optional[list[str]] = None) -> list[SuiteResult]:
    return [run(n) for n in (names or list(SUITES))]
