"""The partial order x <= y iff nu+(x - y) = 0 on finite universes of formal
sums, rule-derived edges from full-twists and satellites, and DOT/JSON export.
"""

from __future__ import annotations

import enum
import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

import networkx as nx

from .cfk import default_workers, expr_v_k, nu_plus, tau_additive
from .errors import BudgetExceededError, ConcordiaError
from .knotexpr import Atom, KnotExpr, cable
from .surgery import d_surgery

__all__ = [
    "Decision",
    "RuleEdge",
    "SatelliteRule",
    "OrderUniverse",
    "MonotoneReport",
    "leq",
    "build_universe",
    "fulltwist_rule_edge",
    "satellite_rule_edges",
    "cable_pattern_edges",
    "monotone_check",
    "tau_invariant",
    "nu_invariant",
    "v_invariant",
    "neg_d_invariant",
    "hasse_dot",
    "universe_json",
]

DEFAULT_BUDGET = 250_000

_LEQ_CACHE: dict[KnotExpr, bool] = {}


def _v0_is_zero(diff: KnotExpr) -> bool:
    return expr_v_k(diff, 0) == 0


def leq(x: KnotExpr, y: KnotExpr) -> bool:
    """x <= y iff V_0(x - y) = 0."""
    diff = x - y
    hit = _LEQ_CACHE.get(diff)
    if hit is None:
        hit = _LEQ_CACHE[diff] = _v0_is_zero(diff)
    return hit


class Decision(enum.Enum):
    LEQ = "leq"
    NOT_LEQ = "not_leq"
    GREATER = "greater"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class RuleEdge:
    """A relation between ``j`` and ``k`` implied by an order rule under a
    caller-asserted geometric hypothesis."""

    j: KnotExpr
    k: KnotExpr
    decision: Decision
    provenance: str

    def agrees_with_leq(self) -> bool:
        """Compare with direct computation; raises if an endpoint is not computable."""
        if self.decision is Decision.LEQ:
            return leq(self.j, self.k)
        if self.decision is Decision.NOT_LEQ:
            return not leq(self.j, self.k)
        if self.decision is Decision.GREATER:
            return leq(self.k, self.j) and not leq(self.j, self.k)
        return True

    def as_dict(self) -> dict:
        return {
            "from": str(self.j),
            "to": str(self.k),
            "decision": self.decision.value,
            "provenance": self.provenance,
        }


def fulltwist_rule_edge(j: KnotExpr, k: KnotExpr, n: int, geometric_equals_n: bool) -> RuleEdge:
    """Edge between J and K when K becomes J under a positive full-twist with
    n-linking (the twist itself is the caller's hypothesis)."""
    if n < 0:
        raise ValueError(f"linking number must be non-negative, got {n}")
    prov = f"rule-fulltwist({n})"
    if n in (0, 1):
        return RuleEdge(j, k, Decision.LEQ, prov)
    if n == 2:
        return RuleEdge(j, k, Decision.UNDETERMINED, prov)
    return RuleEdge(j, k, Decision.GREATER if geometric_equals_n else Decision.NOT_LEQ, prov)


@dataclass(frozen=True)
class SatelliteRule:
    winding: int
    geometric_winding_equals_w: bool
    m: int
    n: int

    def __post_init__(self):
        if self.winding < 0:
            raise ValueError(f"winding number must be non-negative, got {self.winding}")
        if self.m >= self.n:
            raise ValueError(f"need m < n, got m={self.m}, n={self.n}")


def satellite_rule_edges(rule: SatelliteRule, pm: KnotExpr, pn: KnotExpr) -> RuleEdge:
    """Edge between P_n(x) and P_m(x), where P_k adds k positive full-twists.

    w in {0,1} gives P_n(x) <= P_m(x); w >= 3 with geometric winding w gives
    P_n(x) > P_m(x); anything else is undetermined.
    """
    prov = f"rule-satellite({rule.winding},{rule.n},{rule.m})"
    w = rule.winding
    if w in (0, 1):
        decision = Decision.LEQ
    elif w >= 3 and rule.geometric_winding_equals_w:
        decision = Decision.GREATER
    else:
        decision = Decision.UNDETERMINED
    return RuleEdge(pn, pm, decision, prov)


def _cable_expr(p: int, q: int, companion: Atom) -> KnotExpr:
    sign, atom = cable(p, q, 1, companion)
    return KnotExpr.atom(atom, sign)


def cable_pattern_edges(p: int, q: int, companion: Atom, m: int, n: int) -> RuleEdge:
    """Instantiate the satellite rule for the (p,q)-cable pattern, whose n-th
    twist is the (p, q + np)-cable; winding and geometric winding are both p."""
    rule = SatelliteRule(p, True, m, n)
    return satellite_rule_edges(
        rule, _cable_expr(p, q + m * p, companion), _cable_expr(p, q + n * p, companion)
    )


# -- universes -------------------------------------------------------------


@dataclass
class OrderUniverse:
    """Elements with the computed relation collapsed into nu+-classes.

    ``relation`` holds index pairs (a, b) with elements[a] <= elements[b];
    ``classes`` are index tuples, each led by its canonical representative and
    ordered by that representative's string.
    """

    elements: tuple[KnotExpr, ...]
    relation: frozenset[tuple[int, int]]
    classes: tuple[tuple[int, ...], ...]
    rule_edges: list[RuleEdge] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.elements)

    def class_of(self, idx: int) -> int:
        for c, members in enumerate(self.classes):
            if idx in members:
                return c
        raise KeyError(idx)

    def representative(self, c: int) -> KnotExpr:
        return self.elements[self.classes[c][0]]

    def related(self, a: int, b: int) -> bool:
        return (a, b) in self.relation

    def is_reflexive(self) -> bool:
        return all((a, a) in self.relation for a in range(len(self.elements)))

    def transitivity_violations(self) -> list[tuple[int, int, int]]:
        succ: dict[int, set[int]] = {a: set() for a in range(len(self.elements))}
        for a, b in self.relation:
            succ[a].add(b)
        bad = []
        for a in sorted(succ):
            for b in sorted(succ[a]):
                for c in sorted(succ[b]):
                    if c not in succ[a]:
                        bad.append((a, b, c))
        return bad

    def is_antisymmetric_on_classes(self) -> bool:
        """Mutually related elements share a class and every class is a clique
        of mutual relations."""
        owner = {i: c for c, members in enumerate(self.classes) for i in members}
        for a, b in self.relation:
            if (b, a) in self.relation and owner[a] != owner[b]:
                return False
        for members in self.classes:
            for a in members:
                for b in members:
                    if (a, b) not in self.relation:
                        return False
        return True

    def class_order(self) -> set[tuple[int, int]]:
        """Strict order on class indices, read off canonical representatives."""
        out = set()
        for c1, c2 in itertools.permutations(range(len(self.classes)), 2):
            if self.related(self.classes[c1][0], self.classes[c2][0]):
                out.add((c1, c2))
        return out

    def add_rule_edge(self, edge: RuleEdge) -> None:
        self.rule_edges.append(edge)


def _enumerate(generators: Sequence[KnotExpr], max_coeff: int) -> tuple[KnotExpr, ...]:
    seen = set()
    for coeffs in itertools.product(range(-max_coeff, max_coeff + 1), repeat=len(generators)):
        e = KnotExpr()
        for c, g in zip(coeffs, generators):
            e = e + g * c
        seen.add(e)
    return tuple(sorted(seen, key=str))


def _classes(n: int, relation: frozenset[tuple[int, int]], elements: Sequence[KnotExpr]):
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in relation:
        if a < b and (b, a) in relation:
            parent[find(a)] = find(b)
    groups: dict[int, list[int]] = {}
    for a in range(n):
        groups.setdefault(find(a), []).append(a)
    out = [tuple(sorted(g, key=lambda i: str(elements[i]))) for g in groups.values()]
    return tuple(sorted(out, key=lambda g: str(elements[g[0]])))


def build_universe(
    generators: Iterable[KnotExpr | Atom],
    max_coeff: int,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: Optional[int] = None,
) -> OrderUniverse:
    """All sums with coefficients in [-max_coeff, max_coeff], related by :func:`leq`.

    Raises :class:`BudgetExceededError` when the number of ordered pairs
    exceeds ``budget``.
    """
    if max_coeff < 1:
        raise ValueError(f"max_coeff must be positive, got {max_coeff}")
    gens = [g if isinstance(g, KnotExpr) else KnotExpr.atom(g) for g in generators]
    elements = _enumerate(gens, max_coeff)
    n = len(elements)
    if n * n > budget:
        raise BudgetExceededError(f"{n} elements need {n * n} pair comparisons (budget {budget})")

    pending = sorted({a - b for a in elements for b in elements} - _LEQ_CACHE.keys(), key=str)
    workers = default_workers() if workers is None else workers
    if workers > 1 and len(pending) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_v0_is_zero, pending, chunksize=4))
    else:
        results = [_v0_is_zero(d) for d in pending]
    _LEQ_CACHE.update(zip(pending, results))

    relation = frozenset(
        (a, b) for a in range(n) for b in range(n) if _LEQ_CACHE[elements[a] - elements[b]]
    )
    return OrderUniverse(elements, relation, _classes(n, relation, elements))


# -- monotonicity ------------------------------------------------------------

Invariant = Callable[[KnotExpr], "int | Fraction"]


@dataclass(frozen=True)
class MonotoneReport:
    name: str
    pairs_checked: int
    violations: tuple[tuple[str, str], ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def tau_invariant() -> tuple[str, Invariant]:
    return "tau", tau_additive


def nu_invariant() -> tuple[str, Invariant]:
    return "nu+", nu_plus


def v_invariant(k: int) -> tuple[str, Invariant]:
    return f"V_{k}", lambda e: expr_v_k(e, k)


def neg_d_invariant(p: int, q: int, i: int) -> tuple[str, Invariant]:
    return f"-d(S^3_{p}/{q}, {i})", lambda e: -d_surgery(e, p, q, i)


def monotone_check(invariant: tuple[str, Invariant], u: OrderUniverse) -> MonotoneReport:
    """Check f(x) <= f(y) for every computed pair x <= y."""
    name, f = invariant
    values = [f(e) for e in u.elements]
    bad = tuple(
        (str(u.elements[a]), str(u.elements[b]))
        for a, b in sorted(u.relation)
        if values[a] > values[b]
    )
    return MonotoneReport(name, len(u.relation), bad)


# -- export --------------------------------------------------------------------


def _hasse_edges(u: OrderUniverse) -> list[tuple[int, int]]:
    g = nx.DiGraph()
    g.add_nodes_from(range(len(u.classes)))
    g.add_edges_from(u.class_order())
    if not nx.is_directed_acyclic_graph(g):
        raise ConcordiaError("computed relation is not antisymmetric on classes")
    return sorted(nx.transitive_reduction(g).edges())


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_dot(u: OrderUniverse) -> str:
    """DOT digraph of the Hasse diagram; an edge a -> b means [a] < [b].

    Rule edges are dashed and labelled with their provenance.
    """
    lines = ["digraph poset {"]
    if u.classes:
        lines.append("  rankdir=BT;")
    names = [str(u.representative(c)) for c in range(len(u.classes))]
    for c, name in enumerate(names):
        members = [str(u.elements[i]) for i in u.classes[c]]
        label = name if len(members) == 1 else name + "\\n(" + ", ".join(members[1:]) + ")"
        lines.append(f"  {_quote(name)} [label={_quote(label)}];")
    for a, b in _hasse_edges(u):
        lines.append(f"  {_quote(names[a])} -> {_quote(names[b])};")
    for e in u.rule_edges:
        if e.decision is Decision.UNDETERMINED:
            attrs = "style=dotted, dir=none"
            lo, hi = e.j, e.k
        elif e.decision is Decision.LEQ:
            attrs, lo, hi = "style=dashed", e.j, e.k
        elif e.decision is Decision.GREATER:
            attrs, lo, hi = "style=dashed", e.k, e.j
        else:
            attrs, lo, hi = "style=dashed, color=red", e.j, e.k
        attrs += f", label={_quote(e.provenance)}"
        lines.append(f"  {_quote(str(lo))} -> {_quote(str(hi))} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def universe_json(u: OrderUniverse) -> str:
    names = [str(u.representative(c)) for c in range(len(u.classes))]
    data = {
        "elements": [str(e) for e in u.elements],
        "classes": [
            {"representative": names[c], "members": [str(u.elements[i]) for i in members]}
            for c, members in enumerate(u.classes)
        ],
        "edges": [
            {"from": names[a], "to": names[b], "provenance": "computed"} for a, b in _hasse_edges(u)
        ],
        "rule_edges": [e.as_dict() for e in u.rule_edges],
    }
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
