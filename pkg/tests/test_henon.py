import itertools
import json
from fractions import Fraction

import pytest

from arith.intlat import IntMatrix
from dynamics.henon import (
    ElementaryFactor,
    HenonMap,
    compose_elementary,
    cyclo_periodic_scan,
    filtration_radius,
    is_periodic,
    scan_radius,
    unit_obstruction,
)
from dynamics.polynomial import Polynomial, PolyMap
from utils.errors import InconsistentDataError, ScanBudgetError, ToridynError, UsageError
from utils.helpers import encode_polymap, parse_henon

X = Polynomial.variable(0, 2)
Y = Polynomial.variable(1, 2)


def factor(coeffs, a=1, b=1):
    return ElementaryFactor(Polynomial.univariate({k: Fraction(v) for k, v in coeffs.items()}), Fraction(a), Fraction(b))


@pytest.fixture
def basic():
    return parse_henon("henon_basic")


class TestConstruction:
    def test_single_factor(self, basic):
        assert basic.forward == PolyMap((X * X + 1 - Y, X))
        assert basic.d == basic.d_minus == 2
        assert (basic.p, basic.q) == (1, 1)

    def test_mutually_inverse(self, basic):
        assert basic.forward.compose(basic.backward) == PolyMap.identity(2)
        assert basic.backward.compose(basic.forward) == PolyMap.identity(2)

    def test_two_quadratic_factors(self):
        h = compose_elementary([factor({2: 1, 0: 1}), factor({2: 1}, a=2, b=3)])
        assert h.d == 4
        assert h.degree_profile().exact == (1, 4, 1)
        point = (Fraction(2), Fraction(-1, 3))
        assert h.apply_factorwise(point) == h.forward(point)
        assert h.inverse().apply_factorwise(h.forward(point)) == point

    def test_factor_validation(self):
        with pytest.raises(ToridynError):
            factor({1: 1})
        with pytest.raises(ToridynError):
            factor({2: 1}, a=0)

    def test_from_pair_rejects_bad_data(self, basic):
        with pytest.raises(InconsistentDataError):
            HenonMap.from_pair(basic.forward, basic.backward, 2, 1)
        with pytest.raises(InconsistentDataError):
            HenonMap.from_pair(basic.forward, basic.forward, 1, 1)

    def test_pair_degrees_must_be_integers(self, basic):
        obj = {"forward": encode_polymap(basic.forward), "backward": encode_polymap(basic.backward), "p": "x", "q": 1}
        with pytest.raises(UsageError):
            parse_henon(obj)
        with pytest.raises(UsageError):
            parse_henon(dict(obj, p=1.5))

    def test_three_dimensional_pair(self):
        x, y, z = (Polynomial.variable(i, 3) for i in range(3))
        forward = PolyMap((z, x + z * z, y + x * x))
        u = y - x * x
        backward = PolyMap((u, z - u * u, x))
        h = HenonMap.from_pair(forward, backward, 1, 2)
        assert (h.d, h.d_minus) == (2, 4)
        prof = h.degree_profile()
        assert prof.exact == (1, 2, 4, 1)
        assert prof.exact[1] == h.d and prof.exact[-1] == 1
        inv = h.inverse()
        assert (inv.d, inv.p, inv.q) == (4, 2, 1)


class TestPeriodic:
    def test_fixed_point(self, basic):
        assert is_periodic(basic, (1, 1), 5) == 1

    def test_origin_fixed_by_pure_map(self):
        assert is_periodic(parse_henon("henon_pure"), (0, 0), 5) == 1

    def test_escaping_orbit(self, basic):
        assert is_periodic(basic, (3, 0), 5) is None
        assert is_periodic(basic, (3, 0), 5, radius=filtration_radius(basic)) is None

    def test_inversion_invariant(self, basic):
        for point in [(1, 1), (0, 0), (2, -1)]:
            assert is_periodic(basic, point, 4) == is_periodic(basic.inverse(), point, 4)


class TestFiltration:
    def test_pure_quadratic(self):
        assert filtration_radius(parse_henon("henon_pure")) <= 3

    def test_large_constant(self):
        r = filtration_radius(compose_elementary([factor({2: 1, 0: 10})]))
        assert r >= 11

    def test_at_least_one(self):
        assert filtration_radius(compose_elementary([factor({2: 5}, a=Fraction(1, 2), b=Fraction(1, 3))])) >= 1

    def test_orbits_outside_escape(self, basic):
        r = filtration_radius(basic)
        point = (Fraction(4), Fraction(1))
        for _ in range(4):
            nxt = basic.forward(point)
            assert abs(nxt[0]) > abs(point[0]) > r
            point = nxt

    def test_requires_factors(self, basic):
        with pytest.raises(ToridynError):
            filtration_radius(HenonMap.from_pair(basic.forward, basic.backward, 1, 1))


class TestScan:
    def test_rational_fixed_point(self, basic):
        hits = cyclo_periodic_scan(basic, 1, 2, 1, 6)
        assert len(hits) == 1
        assert hits[0].period == 1
        assert all(c == 1 for c in hits[0].point)

    def test_no_rational_fixed_point(self):
        h = compose_elementary([factor({2: 1, 0: 2})])
        assert cyclo_periodic_scan(h, 1, 2, 1, 6) == []

    def test_zero_house_bound(self):
        hits = cyclo_periodic_scan(parse_henon("henon_pure"), 1, 0, 1, 3)
        assert [(tuple(c == 0 for c in hit.point), hit.period) for hit in hits] == [((True, True), 1)]

    def test_stable_under_larger_bounds(self, basic):
        small = cyclo_periodic_scan(basic, 1, 2, 1, 2)
        longer = cyclo_periodic_scan(basic, 1, 2, 1, 6)
        wider = cyclo_periodic_scan(basic, 4, 2, 1, 3)
        assert [h.to_dict() for h in small] == [h.to_dict() for h in longer]
        assert all(h.to_dict() in [w.to_dict() for w in wider] for h in small)

    def test_hits_replay(self, basic):
        for hit in cyclo_periodic_scan(basic, 4, 2, 1, 3):
            point = hit.point
            for _ in range(hit.period):
                point = basic.forward(point)
            assert all(a == b for a, b in zip(point, hit.point))

    def test_checkpoint_resume(self, basic, tmp_path):
        path = tmp_path / "scan.json"
        first = cyclo_periodic_scan(basic, 4, 2, 1, 3, checkpoint=path)
        state = json.loads(path.read_text(encoding="utf-8"))
        assert state["completed"] == [1, 3, 4]
        again = cyclo_periodic_scan(basic, 4, 2, 1, 3, checkpoint=path)
        assert [h.to_dict() for h in again] == [h.to_dict() for h in first]

    def test_budget_guard(self, basic):
        with pytest.raises(ScanBudgetError):
            cyclo_periodic_scan(basic, 25, 2, 1, 3)

    def test_pair_scan_matches_factor_scan(self, basic):
        pair = HenonMap.from_pair(basic.forward, basic.backward, 1, 1)
        hits = cyclo_periodic_scan(pair, 1, 2, 1, 6)
        assert [h.to_dict() for h in hits] == [h.to_dict() for h in cyclo_periodic_scan(basic, 1, 2, 1, 6)]
        assert hits[0].period == 1

    def test_scan_radius(self, basic):
        assert scan_radius(basic) == filtration_radius(basic)
        assert scan_radius(HenonMap.from_pair(basic.forward, basic.backward, 1, 1)) is None

    def test_three_dimensional_pair_scan(self):
        x, y, z = (Polynomial.variable(i, 3) for i in range(3))
        u = y - x * x
        h = HenonMap.from_pair(PolyMap((z, x + z * z, y + x * x)), PolyMap((u, z - u * u, x)), 1, 2)
        hits = cyclo_periodic_scan(h, 1, 1, 1, 4)
        origin = [hit for hit in hits if all(c == 0 for c in hit.point)]
        assert len(origin) == 1 and origin[0].period == 1
        for hit in hits:
            assert len(hit.point) == 3
            point = hit.point
            for _ in range(hit.period):
                point = h.forward(point)
            assert all(a == b for a, b in zip(point, hit.point))


class TestUnitObstruction:
    def test_cat_map(self):
        assert not unit_obstruction(IntMatrix.from_rows([[2, 1], [1, 1]]), 2)

    def test_not_applicable(self):
        assert not unit_obstruction(IntMatrix.diagonal([2, 2]), 2)

    def test_small_unimodular_matrices(self):
        for entries in itertools.product(range(-2, 3), repeat=4):
            a = IntMatrix.from_rows([entries[:2], entries[2:]])
            if abs(a.det()) == 1:
                assert not unit_obstruction(a, 2)
