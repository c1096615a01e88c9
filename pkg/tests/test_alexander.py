from __future__ import annotations

import math

import pytest

from concordia.alexander import (
    LaurentPoly,
    alternating_exponents,
    cable_alexander,
    certified_atoms,
    certify,
    genus,
    torsion_coeff,
    torus_alexander,
)
from concordia.errors import NotLSpaceError, UncertifiedAtomError
from concordia.knotexpr import Cable, Torus, UNKNOT

from oracles import poly_div_torus_alexander, torsion_sequence

COPRIME = [(p, q) for p in range(2, 12) for q in range(p + 1, 16) if math.gcd(p, q) == 1]


@pytest.mark.parametrize("p, q", COPRIME)
def test_torus_alexander_matches_long_division(p, q):
    assert torus_alexander(p, q).as_dict() == poly_div_torus_alexander(p, q)


def test_known_polynomials():
    assert str(torus_alexander(2, 3)) == "t - 1 + t^-1"
    assert str(torus_alexander(3, 4)) == "t^3 - t^2 + 1 - t^-2 + t^-3"
    assert torus_alexander(1, 7) == LaurentPoly.one()


def test_cable_alexander():
    d = cable_alexander(torus_alexander(2, 3), 2, 5)
    assert str(d) == "t^4 - t^3 + 1 - t^-3 + t^-4"
    assert d.is_symmetric() and d.value_at_one() == 1


def test_torsion_coefficients():
    d = torus_alexander(3, 4)
    assert [torsion_coeff(d, k) for k in range(5)] == [1, 1, 1, 0, 0]
    assert torsion_coeff(torus_alexander(2, 3), 0) == 1


@pytest.mark.parametrize("p, q", COPRIME[:20])
def test_torsion_against_oracle(p, q):
    d = torus_alexander(p, q)
    g = (p - 1) * (q - 1) // 2
    assert [torsion_coeff(d, k) for k in range(g + 1)] == torsion_sequence(poly_div_torus_alexander(p, q), g)


def test_certificates():
    assert genus(Torus(2, 3)) == 1
    assert genus(UNKNOT) == 0
    assert certify(Cable(2, 5, Torus(2, 3))).genus == 4
    assert certify(Cable(2, 3, Torus(2, 3))).genus == 3
    with pytest.raises(UncertifiedAtomError):
        certify(Cable(2, 1, Torus(2, 3)))
    with pytest.raises(UncertifiedAtomError):
        certify(Cable(3, -2, Torus(2, 3)))


def test_non_lspace_polynomials_rejected():
    with pytest.raises(NotLSpaceError):
        alternating_exponents(LaurentPoly.from_dict({1: 1, 0: 1, -1: -1}))
    with pytest.raises(NotLSpaceError):
        # figure-eight: -t + 3 - t^-1
        alternating_exponents(LaurentPoly.from_dict({1: -1, 0: 3, -1: -1}))


def test_certified_atoms_are_lspace():
    atoms = certified_atoms(8)
    assert Torus(2, 17) in atoms and Cable(2, 5, Torus(2, 3)) in atoms
    for a in atoms:
        cert = certify(a)
        assert cert.genus <= 8
        assert alternating_exponents(cert.alexander)[0] == cert.genus


@pytest.mark.parametrize("p, q", [(p, q) for p in range(1, 13) for q in range(1, 13) if math.gcd(p, q) == 1])
def test_torus_polynomial_shape(p, q):
    d = torus_alexander(p, q)
    g = (p - 1) * (q - 1) // 2
    assert d.is_symmetric() and d.value_at_one() == 1 and d.degree == g
    assert alternating_exponents(d)[0] == g
    assert all(torsion_coeff(d, k) == 0 for k in range(g, g + 3))


def test_torsion_non_negative_on_family():
    for a in certified_atoms(10):
        cert = certify(a)
        assert all(torsion_coeff(cert.alexander, k) >= 0 for k in range(cert.genus + 2))


def test_non_lspace_value_at_one():
    with pytest.raises(NotLSpaceError):
        alternating_exponents(LaurentPoly.from_dict({1: 1, 0: 1, -1: 1}))


def test_cable_trivial_cases():
    d = torus_alexander(2, 3)
    assert cable_alexander(d, 1, 0) == d
    assert cable_alexander(LaurentPoly.one(), 3, 5) == torus_alexander(3, 5)
