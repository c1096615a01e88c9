from __future__ import annotations

import itertools
import random

import pytest

from concordia.cfk import complex_for, dual, tensor, v_k
from concordia.errors import BudgetExceededError
from concordia.knotexpr import UNKNOT, parse
from concordia.poset import (
    Decision,
    OrderUniverse,
    SatelliteRule,
    build_universe,
    cable_pattern_edges,
    fulltwist_rule_edge,
    hasse_dot,
    leq,
    monotone_check,
    neg_d_invariant,
    nu_invariant,
    satellite_rule_edges,
    tau_invariant,
    universe_json,
    v_invariant,
)

T23, T25, T34, U = parse("T(2,3)"), parse("T(2,5)"), parse("T(3,4)"), parse("U")


@pytest.fixture(scope="module")
def big():
    return build_universe([T23, T25, T34], 1)


def test_leq_examples():
    assert leq(T23, T23)
    assert leq(U, T23)
    assert not leq(T23, U)


def test_single_generator_chain():
    u = build_universe([T23], 1)
    names = [str(u.representative(c)) for c in range(len(u.classes))]
    assert names == ["-T(2,3)", "T(2,3)", "U"]
    dot = hasse_dot(u)
    assert dot.count("->") == 2
    assert '"-T(2,3)" -> "U"' in dot and '"U" -> "T(2,3)"' in dot


def test_empty_generators_single_class():
    u = build_universe([], 4)
    assert len(u) == 1 and len(u.classes) == 1
    assert "->" not in hasse_dot(u)


def test_empty_universe_dot():
    assert hasse_dot(OrderUniverse((), frozenset(), ())) == "digraph poset {\n}\n"


def test_two_generator_normalization():
    u = build_universe([T23, T25], 1)
    assert len(u) == 9
    assert len(set(u.elements)) == 9


def test_duplicate_generators_collapse():
    assert len(build_universe([T23, T23], 1)) == 5


def test_budget():
    with pytest.raises(BudgetExceededError):
        build_universe([T23, T25, T34], 1, budget=100)


def test_axioms(big):
    assert len(big) == 27
    assert big.is_reflexive()
    assert big.transitivity_violations() == []
    assert big.is_antisymmetric_on_classes()


def test_classes_are_mutual_equivalence(big):
    for a, b in itertools.product(range(len(big)), repeat=2):
        same = big.class_of(a) == big.class_of(b)
        assert same == (leq(big.elements[a], big.elements[b]) and leq(big.elements[b], big.elements[a]))


def test_trefoil_pair_equivalence(big):
    # nu+ cannot tell T(2,3) from T(2,5) - T(2,3)
    a = big.elements.index(T23)
    b = big.elements.index(T25 - T23)
    assert big.class_of(a) == big.class_of(b)


def test_parallel_build_matches_serial():
    from concordia import poset

    poset._LEQ_CACHE.clear()
    par = build_universe([T23, T25], 1, workers=2)
    poset._LEQ_CACHE.clear()
    ser = build_universe([T23, T25], 1, workers=1)
    assert par.relation == ser.relation and par.classes == ser.classes


def test_translation_invariance_without_cancellation():
    # x <= y should survive adding z even when the tensor product keeps z and -z
    rng = random.Random(7)
    atoms = [T23, T25, -T23, -T25]
    for _ in range(12):
        x, y, z = rng.choice(atoms), rng.choice(atoms), rng.choice(atoms)
        raw = tensor(complex_for(x), tensor(complex_for(z), dual(tensor(complex_for(y), complex_for(z)))))
        assert (v_k(raw, 0) == 0) == leq(x, y)


def test_monotone_checks(big):
    invs = [tau_invariant(), nu_invariant()] + [v_invariant(k) for k in range(4)]
    invs += [neg_d_invariant(5, 1, i) for i in range(5)] + [neg_d_invariant(7, 2, i) for i in range(7)]
    for inv in invs:
        rep = monotone_check(inv, big)
        assert rep.ok, (rep.name, rep.violations[:3])
        assert rep.pairs_checked == len(big.relation)


def test_monotone_chain_values():
    u = build_universe([T23], 1)
    for inv in (tau_invariant(), nu_invariant(), v_invariant(0)):
        assert monotone_check(inv, u).ok


def test_fulltwist_rules():
    assert fulltwist_rule_edge(T23, U, 2, True).decision is Decision.UNDETERMINED
    e = fulltwist_rule_edge(T34, U, 3, True)
    assert e.decision is Decision.GREATER and e.agrees_with_leq()
    assert fulltwist_rule_edge(T34, U, 3, False).decision is Decision.NOT_LEQ
    assert fulltwist_rule_edge(U, T23, 0, False).decision is Decision.LEQ
    # n = 2 is undetermined by the rule, but computation settles it
    assert leq(U, T23) and not leq(T23, U)


def test_satellite_rules():
    assert satellite_rule_edges(SatelliteRule(0, False, 0, 1), T23, U).decision is Decision.LEQ
    assert satellite_rule_edges(SatelliteRule(2, True, 0, 1), T23, U).decision is Decision.UNDETERMINED
    with pytest.raises(ValueError):
        SatelliteRule(1, True, 2, 1)
    e = cable_pattern_edges(3, 1, UNKNOT, 0, 1)
    assert (str(e.j), str(e.k), e.decision) == ("T(3,4)", "U", Decision.GREATER)
    assert e.agrees_with_leq()


@pytest.mark.parametrize("p, q", [(3, 4), (3, 5), (4, 5), (5, 6)])
def test_cable_pattern_rules_agree_with_computation(p, q):
    for comp in (UNKNOT, T23.atoms[0]):
        for m, n in [(0, 1), (1, 2), (0, 2)]:
            e = cable_pattern_edges(p, q, comp, m, n)
            assert e.decision is Decision.GREATER
            assert e.agrees_with_leq(), e


def test_rule_edges_render_dashed():
    u = build_universe([T23], 1)
    u.add_rule_edge(fulltwist_rule_edge(T23, U, 2, True))
    u.add_rule_edge(fulltwist_rule_edge(T34, U, 3, True))
    dot = hasse_dot(u)
    assert 'style=dotted' in dot and '"U" -> "T(3,4)" [style=dashed' in dot
    assert '"rule-fulltwist(3)"' in universe_json(u)


def test_output_is_deterministic():
    a = build_universe([T34, T23], 1)
    b = build_universe([T23, T34], 1)
    assert hasse_dot(a) == hasse_dot(b)
    assert universe_json(a) == universe_json(b)
