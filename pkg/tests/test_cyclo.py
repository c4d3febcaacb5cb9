import math
from fractions import Fraction

import pytest

from arith.cyclo import (
    CertifiedReal,
    CycloNumber,
    RootOfUnity,
    check_point_set_conditions,
    estimate_integral_elements,
    euler_phi,
    house,
    house_at_most,
    integral_elements,
    is_scaled_integral,
    kth_root,
    loxton_decompose,
    place_norm_bounds,
    root_of_unity_sums,
    sqrt_rational,
)
from utils.errors import DimensionMismatchError, NonIntegralError, ToridynError

Z3 = CycloNumber.root(1, 3)
Z4 = CycloNumber.root(1, 4)
Z5 = CycloNumber.root(1, 5)


def random_element(rng, n: int, bound: int = 3) -> CycloNumber:
    return CycloNumber(n, tuple(int(c) for c in rng.integers(-bound, bound + 1, size=euler_phi(n))))


class TestArithmetic:
    def test_reduction_modulo_cyclotomic_polynomial(self):
        assert (Z3 * Z3).coeffs == (-1, -1)
        assert Z3 ** 3 == 1
        assert Z5 ** 5 == 1
        assert Z4 * Z4 == -1

    def test_coefficient_count_checked(self):
        with pytest.raises(DimensionMismatchError):
            CycloNumber(5, (1, 2))

    def test_mixed_conductors_lift_to_lcm(self):
        s = Z3 + Z4
        assert s.conductor == 12
        assert s - Z4 == Z3
        assert Z3 == CycloNumber.root(4, 12)

    def test_inverse(self):
        alpha = 1 + Z5 + 2 * Z5 ** 3
        assert alpha * alpha.inverse() == 1
        assert (alpha / alpha) == 1
        with pytest.raises(ZeroDivisionError):
            CycloNumber.zero(5).inverse()

    def test_rational_operands(self):
        assert (Z5 + Fraction(1, 2)) - Fraction(1, 2) == Z5
        assert (Z5 / 2) * 2 == Z5

    def test_trace_and_norm(self):
        assert Z5.trace() == -1
        assert (1 - Z5).norm() == 5
        assert (1 + Z5).norm() == 1

    def test_normalize_finds_true_conductor(self):
        z = CycloNumber.root(2, 6)
        assert z.normalize().conductor == 3
        assert z.normalize() == Z3
        assert (Z3 + Z3 ** 2).normalize().conductor == 1
        assert CycloNumber.root(1, 12).normalize().conductor == 12

    def test_hash_is_conductor_independent(self):
        assert hash(CycloNumber.root(2, 6)) == hash(Z3)
        assert len({Z3, CycloNumber.root(4, 12), Z4}) == 2


class TestRandomArithmetic:
    def test_sum_and_product_round_trip(self, rng):
        for _ in range(30):
            n = int(rng.integers(1, 61))
            alpha, beta = random_element(rng, n), random_element(rng, n)
            assert (alpha + beta) - beta == alpha
            if not beta.is_zero():
                assert (alpha * beta) / beta == alpha

    def test_house_invariant_under_roots_of_unity(self, rng):
        for _ in range(20):
            n = int(rng.integers(1, 61))
            alpha = random_element(rng, n)
            xi = CycloNumber.root(int(rng.integers(0, 2 * n)), 2 * n)
            assert math.isclose(house(xi * alpha).value, house(alpha).value, rel_tol=1e-9, abs_tol=1e-12)

    def test_scaled_integral_sum(self, rng):
        for _ in range(20):
            n = int(rng.integers(1, 61))
            m1, m2 = (int(x) for x in rng.integers(1, 7, size=2))
            alpha, beta = random_element(rng, n) / m1, random_element(rng, n) / m2
            assert is_scaled_integral(alpha, m1) and is_scaled_integral(beta, m2)
            assert is_scaled_integral(alpha + beta, m1 * m2)


class TestEmbedding:
    def test_galois_embeddings(self):
        value, err = Z4.embed(1)
        assert abs(value - 1j) <= err + 1e-15
        value, err = Z4.embed(3)
        assert abs(value + 1j) <= err + 1e-15
        assert err <= 1e-14

    def test_non_unit_rejected(self):
        with pytest.raises(ToridynError):
            Z4.embed(2)


class TestHouse:
    def test_values(self):
        assert math.isclose(house(Z5).value, 1.0, abs_tol=1e-12)
        assert math.isclose(house(1 + Z5).value, 2 * math.cos(math.pi / 5), rel_tol=1e-12)
        assert math.isclose(house(1 + Z4).value, math.sqrt(2), rel_tol=1e-12)

    def test_certified_interval_contains_value(self):
        h = house(1 + Z5)
        assert h.lower <= 2 * math.cos(math.pi / 5) <= h.upper

    def test_exact_tie_resolved(self):
        assert house_at_most(Z5, 1) == "pass"
        assert house_at_most(2 * Z3, 2) == "pass"
        assert house_at_most(1 + Z5, 1) == "fail"
        assert house_at_most(1 + Z5, 2) == "pass"

    def test_compare_at_most(self):
        r = CertifiedReal(1.0, 0.1)
        assert r.compare_at_most(1.2) == "pass"
        assert r.compare_at_most(0.8) == "fail"
        assert r.compare_at_most(1.0) == "indeterminate"


@pytest.mark.parametrize("alpha, m, expected", [
    (Z3 / 2, 2, True),
    (CycloNumber.rational(Fraction(1, 3)), 2, False),
    ((1 + Z5) / 6, 6, True),
    ((1 + Z5) / 6, 3, False),
])
def test_is_scaled_integral(alpha, m, expected):
    assert is_scaled_integral(alpha, m) is expected


class TestLoxton:
    def test_one_plus_zeta5(self):
        roots = loxton_decompose(1 + Z5, 3, 10)
        assert len(roots) == 2
        assert sum((r.to_cyclo() for r in roots), CycloNumber.zero()) == 1 + Z5

    def test_zero(self):
        assert loxton_decompose(CycloNumber.zero(5), 3, 10) == []

    def test_minus_one(self):
        roots = loxton_decompose(Z3 + Z3 ** 2, 3, 6)
        assert [str(r) for r in roots] == ["1/2"]

    def test_not_found(self):
        # 3 不是兩個單位根之和
        assert loxton_decompose(CycloNumber.rational(3), 2, 12) is None

    def test_errors(self):
        with pytest.raises(NonIntegralError):
            loxton_decompose(Z5 / 2, 3, 10)
        with pytest.raises(ToridynError):
            loxton_decompose(Z5, 9, 10)


def test_root_of_unity_normalized():
    r = RootOfUnity(Fraction(5, 4))
    assert r.exponent == Fraction(1, 4)
    assert r.order == 4
    assert str(r) == "1/4"
    assert r.to_cyclo() == Z4


class TestEnumeration:
    def test_integral_elements_gaussian(self):
        elems = integral_elements(4, 1)
        assert len(elems) == 5
        assert elems[0].is_zero()

    def test_integral_elements_eisenstein(self):
        assert len(integral_elements(3, 1)) == 7

    def test_integral_elements_respect_bound(self):
        for alpha in integral_elements(5, 2):
            assert alpha.is_integral()
            assert house(alpha).lower <= 2

    def test_root_of_unity_sums(self):
        assert len(root_of_unity_sums(4, 1)) == 5
        sums = root_of_unity_sums(3, 2)
        assert CycloNumber.rational(-1, 3) in sums
        assert CycloNumber.rational(2, 3) in sums

    def test_estimate_integral_elements(self):
        assert estimate_integral_elements(4, 1) == 4
        assert estimate_integral_elements(5, 3) > estimate_integral_elements(5, 2) >= 1


class TestPlaces:
    def test_unramified(self):
        b = place_norm_bounds(CycloNumber.rational(Fraction(1, 2)), 2)
        assert b.exact and b.upper == 1

    def test_ramified_lower_bound(self):
        b = place_norm_bounds(Z4 / 2, 2)
        assert b.lower == Fraction(1, 2)
        assert b.upper == 1
        assert not b.exact

    def test_zero(self):
        assert place_norm_bounds(CycloNumber.zero(4), 2) is None


class TestRoots:
    @pytest.mark.parametrize("q", [2, 3, 5, Fraction(-3, 4), 12, Fraction(1, 2)])
    def test_sqrt_rational(self, q):
        assert sqrt_rational(q) ** 2 == Fraction(q)

    def test_kth_root_of_scaled_root_of_unity(self):
        value = 8 * Z3
        root = kth_root(value, 3)
        assert root ** 3 == value

    def test_kth_root_square(self):
        assert kth_root(4, 2) == 2
        assert kth_root(-1, 2) ** 2 == -1

    def test_kth_root_unavailable(self):
        assert kth_root(2, 3) is None


class TestPointSetConditions:
    def test_pass(self):
        out = check_point_set_conditions([(Z3 / 2,)], 2, 1)
        assert out["dci"] and out["bh"] == "pass"
        assert out["ai"] == "not evaluated"

    def test_house_failure(self):
        out = check_point_set_conditions([(CycloNumber.rational(3),), (Z5,)], 1, 2)
        assert out["bh"] == "fail"
        assert [p["bh"] for p in out["points"]] == ["fail", "pass"]

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            check_point_set_conditions([(Z3,), (Z3, Z3)], 1, 1)
