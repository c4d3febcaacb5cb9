from fractions import Fraction

import pytest

from arith.intlat import IntMatrix, Lattice
from arith.torus import (
    SubgroupCoset,
    TorsionCoset,
    TorsionPoint,
    all_torsion_points,
    apply_monomial,
    coset_image,
    coset_intersect,
    coset_preimage,
    correspondence_compose,
    fixed_points,
    graph_coset,
    membership,
    quotient_map,
    stabilizer,
)
from evaluation.algebra_checks import FixedPointCountsCheck
from utils.errors import (
    DimensionMismatchError,
    NonIsolatedFixedLocusError,
    NotPrimitiveError,
    SingularMatrixError,
)


def lat(rows, n):
    return Lattice.from_rows(rows, n)


def same(c1, c2):
    return c1.epsilon == c2.epsilon and c1.lattice == c2.lattice


# G_m × {1}：第二座標為 1
HORIZONTAL = SubgroupCoset.subgroup(lat([[0, 1]], 2))
VERTICAL = SubgroupCoset.subgroup(lat([[1, 0]], 2))
ANTIDIAGONAL = SubgroupCoset.subgroup(lat([[1, 1]], 2))


def test_torsion_point_reduces_mod_one():
    x = TorsionPoint.of("5/4", "-1/3")
    assert x.exponents == (Fraction(1, 4), Fraction(2, 3))
    assert x.order == 12
    assert (x - x).is_identity()


class TestMembership:
    def test_full_torus(self):
        assert membership(TorsionPoint.of("1/2", 0), SubgroupCoset.full_torus(2))

    def test_subgroup(self):
        assert membership(TorsionPoint.of("1/3", "2/3"), ANTIDIAGONAL)
        assert not membership(TorsionPoint.of("1/3", "1/3"), ANTIDIAGONAL)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            membership(TorsionPoint.of(0), ANTIDIAGONAL)


class TestImage:
    def test_swap(self):
        assert coset_image(HORIZONTAL, IntMatrix.from_rows([[0, 1], [1, 0]])) == VERTICAL

    def test_squaring_kills_sign(self):
        coset = SubgroupCoset(TorsionPoint.of(0, "1/2"), lat([[0, 1]], 2))
        assert coset.epsilon == TorsionPoint.of(0, "1/2")
        assert coset_image(coset, IntMatrix.diagonal([2, 2])) == HORIZONTAL

    def test_full_torus(self):
        a = IntMatrix.from_rows([[2, 1], [1, 1]])
        assert coset_image(SubgroupCoset.full_torus(2), a) == SubgroupCoset.full_torus(2)

    def test_singular_rejected(self):
        with pytest.raises(SingularMatrixError):
            coset_image(HORIZONTAL, IntMatrix.from_rows([[1, 1], [1, 1]]))


class TestPreimage:
    def test_square_roots_of_one(self):
        pre = coset_preimage(SubgroupCoset.point(TorsionPoint.identity(1)), IntMatrix.from_rows([[2]]))
        assert pre.lattice == lat([[2]], 1)
        assert [c.epsilon for c in pre.components()] == [TorsionPoint.of(0), TorsionPoint.of("1/2")]

    def test_square_roots_of_minus_one(self):
        pre = coset_preimage(SubgroupCoset.point(TorsionPoint.of("1/2")), IntMatrix.from_rows([[2]]))
        assert [c.epsilon for c in pre.components()] == [TorsionPoint.of("1/4"), TorsionPoint.of("3/4")]

    def test_full_torus(self):
        pre = coset_preimage(SubgroupCoset.full_torus(2), IntMatrix.diagonal([2, 3]))
        assert pre == SubgroupCoset.full_torus(2)

    def test_image_of_preimage_round_trip(self):
        matrices = [
            IntMatrix.diagonal([2, 3]),
            IntMatrix.from_rows([[2, 1], [1, 1]]),
            IntMatrix.from_rows([[1, 2], [0, 3]]),
            IntMatrix.from_rows([[0, -1], [1, 0]]),
        ]
        cosets = [
            HORIZONTAL,
            SubgroupCoset(TorsionPoint.of("1/3", "1/4"), lat([[1, 1]], 2)),
            SubgroupCoset(TorsionPoint.of("1/6", 0), lat([[2, 0], [0, 3]], 2)),
            SubgroupCoset.point(TorsionPoint.of("5/12", "1/2")),
        ]
        for a in matrices:
            for c in cosets:
                assert coset_preimage(coset_image(c, a), a).contains_coset(c)


class TestIntersect:
    def test_with_full_torus(self):
        c = SubgroupCoset(TorsionPoint.of("1/2", 0), lat([[2, 0]], 2))
        assert coset_intersect(SubgroupCoset.full_torus(2), c) == c.components()

    def test_transverse_subtori(self):
        meet = coset_intersect(HORIZONTAL, VERTICAL)
        assert len(meet) == 1
        assert meet[0].epsilon.is_identity()
        assert meet[0].lattice == Lattice.full(2)

    def test_disjoint(self):
        shifted = SubgroupCoset(TorsionPoint.of(0, "1/2"), lat([[0, 1]], 2))
        assert coset_intersect(shifted, HORIZONTAL) == []

    def test_finite_intersection(self):
        # u·v = 1 與 u = v 交於 {(1, 1), (−1, −1)}
        diagonal = SubgroupCoset.subgroup(lat([[1, -1]], 2))
        meet = coset_intersect(ANTIDIAGONAL, diagonal)
        assert sorted(c.epsilon.exponents for c in meet) == [(0, 0), (Fraction(1, 2), Fraction(1, 2))]


class TestStabilizer:
    def test_translation_invariance(self):
        c = SubgroupCoset(TorsionPoint.of("1/3", "1/5"), lat([[1, 1]], 2))
        assert stabilizer(c) == ANTIDIAGONAL

    def test_point(self):
        assert stabilizer(SubgroupCoset.point(TorsionPoint.of("1/2", "1/3"))).lattice == Lattice.full(2)

    def test_commutes_with_image(self):
        a = IntMatrix.from_rows([[1, 2], [0, 3]])
        c = SubgroupCoset(TorsionPoint.of("1/4", 0), lat([[1, 1]], 2))
        assert stabilizer(coset_image(c, a)) == coset_image(stabilizer(c), a)


class TestQuotientMap:
    def test_diagonal(self):
        assert quotient_map(lat([[1, -1]], 2)) == IntMatrix.from_rows([[1, -1]])

    def test_trivial_subtorus(self):
        assert quotient_map(Lattice.full(3)) == IntMatrix.identity(3)

    def test_coordinate_subtorus(self):
        assert quotient_map(lat([[0, 1]], 2)) == IntMatrix.from_rows([[0, 1]])

    def test_non_primitive_rejected(self):
        with pytest.raises(NotPrimitiveError):
            quotient_map(lat([[2, 2]], 2))

    @pytest.mark.parametrize("rows", [[[1, -1]], [[1, 2]], [[0, 1]], [[1, 1, 0], [0, 1, 1]]])
    def test_kernel_is_subtorus(self, rows):
        n = len(rows[0])
        lattice = lat(rows, n)
        q = quotient_map(lattice)
        subgroup = SubgroupCoset.subgroup(lattice)
        for order in (2, 3, 4) if n == 3 else range(2, 13):
            for x in all_torsion_points(n, order):
                assert apply_monomial(q, x).is_identity() == membership(x, subgroup)


class TestFixedPoints:
    def test_doubling_map(self):
        count, points = fixed_points(IntMatrix.from_rows([[2]]), 2)
        assert count == 3
        assert points == [TorsionPoint.of(0), TorsionPoint.of("1/3"), TorsionPoint.of("2/3")]

    def test_cat_map(self):
        count, points = fixed_points(IntMatrix.from_rows([[2, 1], [1, 1]]), 1)
        assert count == 1
        assert points == [TorsionPoint.identity(2)]

    def test_identity_rejected(self):
        with pytest.raises(NonIsolatedFixedLocusError):
            fixed_points(IntMatrix.identity(2), 1)

    @pytest.mark.parametrize("rows, period", [
        ([[2, 1], [1, 1]], 2),
        ([[2, 1], [1, 1]], 3),
        ([[3, 0], [0, 2]], 1),
        ([[2, 1, 0], [1, 1, 0], [0, 0, 3]], 2),
    ])
    def test_matches_brute_force(self, rows, period):
        a = IntMatrix.from_rows(rows)
        count, points = fixed_points(a, period)
        m = a.power(period) - IntMatrix.identity(a.nrows)
        assert count == len(points) == FixedPointCountsCheck._brute_force(m, count)
        ap = a.power(period)
        assert all(apply_monomial(ap, x) == x for x in points)


class TestCorrespondences:
    def test_graph_of_composite(self):
        out = correspondence_compose(graph_coset(IntMatrix.from_rows([[2]])), graph_coset(IntMatrix.from_rows([[3]])), 1, 1, 1)
        assert len(out) == 1
        assert same(out[0], graph_coset(IntMatrix.from_rows([[6]])))

    def test_identity_is_neutral(self):
        g2 = graph_coset(IntMatrix.from_rows([[2, 1], [1, 1]]))
        out = correspondence_compose(graph_coset(IntMatrix.identity(2)), g2, 2, 2, 2)
        assert len(out) == 1 and same(out[0], g2)

    def test_constant_correspondence(self):
        out = correspondence_compose(HORIZONTAL, graph_coset(IntMatrix.from_rows([[2]])), 1, 1, 1)
        assert len(out) == 1 and same(out[0], HORIZONTAL)

    def test_associative_on_graphs(self):
        a, b, c = (IntMatrix.from_rows([[k]]) for k in (2, 3, -1))
        ga, gb, gc = graph_coset(a), graph_coset(b), graph_coset(c)
        left = correspondence_compose(correspondence_compose(ga, gb, 1, 1, 1)[0], gc, 1, 1, 1)
        right = correspondence_compose(ga, correspondence_compose(gb, gc, 1, 1, 1)[0], 1, 1, 1)
        assert len(left) == len(right) == 1
        assert same(left[0], right[0])
        assert same(left[0], graph_coset(IntMatrix.from_rows([[-6]])))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            correspondence_compose(HORIZONTAL, HORIZONTAL, 1, 2, 1)


def test_torsion_coset_requires_primitive():
    with pytest.raises(NotPrimitiveError):
        TorsionCoset(TorsionPoint.identity(1), lat([[2]], 1))
