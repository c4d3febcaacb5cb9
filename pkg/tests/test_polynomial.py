from fractions import Fraction

import pytest

from arith.cyclo import CycloNumber
from arith.intlat import IntMatrix
from dynamics.polynomial import Polynomial, PolyMap, lift_point
from utils.errors import DimensionMismatchError, ToridynError

X = Polynomial.variable(0, 2)
Y = Polynomial.variable(1, 2)
Z = Polynomial.variable(0, 1)


def test_arithmetic_and_degree():
    p = X * X - Y * Y
    assert p.degree == 2
    assert (p - p).is_zero()
    assert (X + 1) * (X - 1) == X * X - 1
    assert Polynomial(2, ()).degree == -1


def test_zero_coefficients_dropped():
    p = Polynomial.from_dict({(1, 0): 1, (0, 1): 0}, 2)
    assert len(p.terms) == 1


def test_dimension_checks():
    with pytest.raises(DimensionMismatchError):
        X + Z
    with pytest.raises(DimensionMismatchError):
        Polynomial.from_dict({(1,): 1}, 2)
    with pytest.raises(DimensionMismatchError):
        PolyMap((X, Z))


def test_evaluate_at_cyclotomic_point():
    zeta = CycloNumber.root(1, 5)
    assert (Z * Z).evaluate([zeta]) == zeta ** 2
    assert (X * Y + 1).evaluate([Fraction(1, 2), Fraction(4)]) == 3


def test_laurent_powers():
    u = Z ** -1
    assert u.is_laurent()
    assert (Z * u) == 1
    with pytest.raises(ToridynError):
        (Z + 1) ** -1


def test_compose_and_iterate():
    f = PolyMap((Z * Z - 2,))
    f2 = f.iterate(2)
    assert f2.components[0] == (Z * Z - 2) ** 2 - 2
    assert f.iterate(0) == PolyMap.identity(1)
    assert f2((Fraction(3),)) == (Fraction(47),)


def test_top_part():
    f = PolyMap((X * X + Y, Y * Y))
    high, low = f.top_part()
    assert high == PolyMap((X * X, Y * Y))
    assert low == PolyMap((Y, Polynomial(2, ())))
    f = PolyMap((X * X - Y * Y, X * Y + 1))
    high, low = f.top_part()
    assert high == PolyMap((X * X - Y * Y, X * Y))
    assert low.components[1] == 1


def test_monomial_substitute():
    # u ↦ u² 代入 u + u⁻¹
    p = Polynomial.from_dict({(1,): 1, (-1,): 1}, 1)
    assert p.monomial_substitute(IntMatrix.from_rows([[2]])) == Polynomial.from_dict({(2,): 1, (-2,): 1}, 1)


def test_lift_point_common_conductor():
    n, point = lift_point((CycloNumber.root(1, 3), Fraction(1, 2)))
    assert n == 3
    assert all(c.conductor == 3 for c in point)


def test_numeric_evaluation_matches_exact():
    zeta = CycloNumber.root(1, 8)
    p = Z * Z * CycloNumber.root(1, 4) + 3
    exact = p.evaluate([zeta])
    value = p.evaluate_numeric([zeta.embed(1)[0]])
    assert abs(value - exact.embed(1)[0]) < 1e-12
