from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from concordia.knotexpr import parse
from concordia.surgery import (
    SpinCIndex,
    d_surgery,
    d_unknot_rational,
    f_p,
    fsq_even_expanded,
    fsq_even_product,
    fsq_odd_expanded,
    fsq_odd_product,
    parity_classes,
    parity_classes_closed_form,
    surgery_v_index,
)

import oracles


def test_f_p_values():
    assert f_p(1, 0) == 0
    assert f_p(9, 3) == 0
    assert f_p(3, 1) == Fraction(-1, 6)


def test_recursion_values():
    assert d_unknot_rational(2, 1, 0) == Fraction(1, 4)
    assert d_unknot_rational(3, 2, 0) == Fraction(1, 6)


@pytest.mark.parametrize("p", range(1, 60))
def test_recursion_anchor(p):
    for i in range(p):
        assert d_unknot_rational(p, 1, i) == oracles.f_p(p, i)


def test_lens_space_symmetry_and_denominator():
    # d(L, s) is invariant under conjugation i -> p + q - 2 - i (mod p) for the unknot
    for p in range(2, 25):
        for q in range(1, p):
            if __import__("math").gcd(p, q) != 1:
                continue
            values = [d_unknot_rational(p, q, i) for i in range(p)]
            assert all((4 * p * q) % v.denominator == 0 for v in values)
            assert sorted(values) == sorted(values[(p + q - 2 - i) % p] for i in range(p))


def test_d_surgery_examples():
    t = parse("T(2,3)")
    assert d_surgery(t, 1, 1, 0) == -2
    assert d_surgery(t, 3, 1, 1) == Fraction(-1, 6)
    assert d_surgery(parse("U"), 7, 2, 3) == d_unknot_rational(7, 2, 3)


def test_v_index_reduces_for_integer_surgery():
    for p in range(1, 30):
        for i in range(p):
            assert surgery_v_index(p, 1, i) == min(i, p - i)


def test_spinc_validation():
    with pytest.raises(ValueError):
        SpinCIndex(4, 2, 0)
    with pytest.raises(ValueError):
        SpinCIndex(3, 1, 3)
    with pytest.raises(ValueError):
        f_p(3, -1)


def test_parity_examples():
    assert parity_classes(1) == {0}
    assert parity_classes(2) == {1, 3}
    assert parity_classes(3) == {0, 3, 6}


@pytest.mark.parametrize("n", range(1, 40))
def test_parity_closed_form(n):
    assert parity_classes(n) == parity_classes_closed_form(n)
    assert len(parity_classes(n)) == n


@given(st.integers(1, 99), st.data())
def test_square_identities_hold_for_every_i(n, data):
    i = data.draw(st.integers(0, n * n - 1))
    f = f_p(n * n, i)
    if n % 2:
        assert fsq_odd_product(n, i) == f == fsq_odd_expanded(n, i)
    else:
        assert fsq_even_product(n, i) == f == fsq_even_expanded(n, i)
