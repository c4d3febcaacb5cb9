import numpy as np
import pytest

from arith.intlat import (
    IntMatrix,
    IntPoly,
    Lattice,
    charpoly,
    cyclotomic_split,
    decompose,
    exterior_power,
    hnf,
    is_positive,
    lattice_intersection,
    lattice_sum,
    left_kernel,
    saturate,
    smith_diagonal,
    snf,
    xgcd,
)
from evaluation.algebra_checks import random_nonsingular, random_unimodular
from utils.errors import DimensionMismatchError, SingularMatrixError, ToridynError


def M(*rows):
    return IntMatrix.from_rows(rows)


def moduli(m: IntMatrix) -> list[float]:
    return sorted(abs(x) for x in np.linalg.eigvals(m.to_numpy())) if m.nrows else []


CAT = M([2, 1], [1, 1])


def test_xgcd():
    x, y, g = xgcd(240, 46)
    assert g == 2
    assert 240 * x + 46 * y == 2


def test_matrix_rejects_non_integers():
    with pytest.raises(ToridynError):
        IntMatrix(((1, 2.5),), 2)
    with pytest.raises(DimensionMismatchError):
        IntMatrix(((1, 2), (3,)), 2)


def test_matrix_arithmetic():
    assert CAT @ IntMatrix.identity(2) == CAT
    assert CAT.power(2) == M([5, 3], [3, 2])
    assert CAT.power(0) == IntMatrix.identity(2)
    assert (CAT - IntMatrix.identity(2)).det() == -1
    assert M([0, -1], [1, 0]).det() == 1
    assert IntMatrix.block_diag(M([1]), M([2])) == IntMatrix.diagonal([1, 2])


class TestHnf:
    def test_diagonal_is_already_reduced(self):
        h, u = hnf(IntMatrix.diagonal([2, 3]))
        assert h == IntMatrix.diagonal([2, 3])
        assert u == IntMatrix.identity(2)

    def test_zero_matrix(self):
        h, u = hnf(IntMatrix.zeros(2, 3))
        assert h == IntMatrix.zeros(2, 3)
        assert abs(u.det()) == 1

    def test_shape_and_reduction(self, rng):
        for _ in range(20):
            m = IntMatrix.from_rows(rng.integers(-6, 7, size=(3, 4)).tolist(), 4)
            h, u = hnf(m)
            assert u @ m == h
            assert abs(u.det()) == 1
            last_pivot = -1
            for i, row in enumerate(h.rows):
                nonzero = [j for j, v in enumerate(row) if v]
                if not nonzero:
                    assert all(not any(r) for r in h.rows[i:])
                    break
                j = nonzero[0]
                assert j > last_pivot
                assert row[j] > 0
                for above in h.rows[:i]:
                    assert 0 <= above[j] < row[j]
                last_pivot = j


class TestSnf:
    def test_diagonal_entries_divide(self):
        u, d, v = snf(IntMatrix.diagonal([2, 3]))
        assert smith_diagonal(d) == [1, 6]
        assert u @ IntMatrix.diagonal([2, 3]) @ v == d

    def test_unimodular_input(self):
        _, d, _ = snf(CAT)
        assert d == IntMatrix.identity(2)

    def test_random_matrices(self, rng):
        for _ in range(20):
            m = IntMatrix.from_rows(rng.integers(-5, 6, size=(3, 3)).tolist(), 3)
            u, d, v = snf(m)
            assert u @ m @ v == d
            diag = smith_diagonal(d)
            assert all(x >= 0 for x in diag)
            for a, b in zip(diag, diag[1:]):
                assert (b == 0) if a == 0 else (b % a == 0)
            prod = 1
            for x in diag:
                prod *= x
            assert prod == abs(m.det())


class TestLattice:
    def test_saturate(self):
        assert saturate(Lattice.from_rows([[2, 0]], 2)) == Lattice.from_rows([[1, 0]], 2)
        assert saturate(Lattice.from_rows([[2, 2]], 2)) == Lattice.from_rows([[1, 1]], 2)
        assert saturate(Lattice.zero(3)) == Lattice.zero(3)

    def test_index_and_primitive(self):
        lat = Lattice.from_rows([[2, 0], [0, 3]], 2)
        assert lat.index() == 6
        assert not lat.is_primitive()
        assert Lattice.from_rows([[1, -1]], 2).is_primitive()

    def test_contains(self):
        lat = Lattice.from_rows([[2, 2]], 2)
        assert lat.contains((4, 4))
        assert not lat.contains((1, 1))

    def test_sum_and_intersection(self):
        a = Lattice.from_rows([[2, 0]], 2)
        b = Lattice.from_rows([[0, 3]], 2)
        assert lattice_sum(a, b) == Lattice.from_rows([[2, 0], [0, 3]], 2)
        assert lattice_intersection(Lattice.from_rows([[2, 0], [0, 1]], 2),
                                    Lattice.from_rows([[3, 0], [0, 2]], 2)) == Lattice.from_rows([[6, 0], [0, 2]], 2)
        with pytest.raises(DimensionMismatchError):
            lattice_sum(a, Lattice.zero(3))

    def test_left_kernel(self):
        k = left_kernel(M([1, 1], [2, 2]))
        assert k.nrows == 1
        assert M([1, 1], [2, 2]).left_apply(k.rows[0]) == (0, 0)


class TestCharpoly:
    def test_examples(self):
        assert charpoly(CAT).coeffs == (1, -3, 1)
        assert charpoly(M([0, -1], [1, 0])).coeffs == (1, 0, 1)

    def test_cyclotomic_split(self):
        cyc, rest = cyclotomic_split(IntPoly.from_coeffs([2, -3, 1]))
        assert cyc.coeffs == (-1, 1)
        assert rest.coeffs == (-2, 1)

    def test_cyclotomic_split_multiplicity(self):
        # (x + 1)^2 (x^2 - 3x + 1)
        p = IntPoly.from_coeffs([1, 2, 1]) * IntPoly.from_coeffs([1, -3, 1])
        cyc, rest = cyclotomic_split(p)
        assert cyc.coeffs == (1, 2, 1)
        assert rest.coeffs == (1, -3, 1)

    def test_cayley_hamilton(self, rng):
        for _ in range(10):
            a = random_nonsingular(rng, 4, 4)
            assert charpoly(a).evaluate_matrix(a) == IntMatrix.zeros(a.nrows, a.nrows)


class TestPositive:
    @pytest.mark.parametrize("matrix, expected", [
        (CAT, True),
        (IntMatrix.identity(2), False),
        (M([2, 0], [0, 0]), False),
        (M([2, 0], [0, -1]), False),
        (IntMatrix.diagonal([2, 3]), True),
    ])
    def test_examples(self, matrix, expected):
        assert is_positive(matrix) is expected


class TestDecompose:
    def test_upper_triangular_example(self):
        a = M([1, 1], [0, 2])
        p, a1, a2 = decompose(a)
        assert a1 == M([1])
        assert a2 == M([2])
        assert a @ p == p @ IntMatrix.block_diag(a1, a2)

    def test_positive_matrix_has_empty_cyclotomic_block(self):
        p, a1, a2 = decompose(CAT)
        assert a1.nrows == 0
        assert a2.nrows == 2
        assert abs(p.det()) == 1

    def test_finite_order_matrix(self):
        rot = M([0, -1], [1, 0])
        p, a1, a2 = decompose(rot)
        assert a2.nrows == 0
        assert a1.power(4) == IntMatrix.identity(2)

    def test_conjugated_block_diagonal(self, rng):
        base = IntMatrix.block_diag(M([0, -1], [1, -1]), CAT)
        u, u_inv = random_unimodular(rng, 4)
        a = u @ base @ u_inv
        p, a1, a2 = decompose(a)
        assert a1.nrows == 2 and a2.nrows == 2
        assert is_positive(a2)
        assert a1.power(3) == IntMatrix.identity(2)
        assert a @ p == p @ IntMatrix.block_diag(a1, a2)

    def test_singular_rejected(self):
        with pytest.raises(SingularMatrixError):
            decompose(M([1, 1], [1, 1]))

    def test_random_matrices_keep_eigenvalue_moduli(self, rng):
        for _ in range(25):
            a = random_nonsingular(rng, 5, 2)
            p, a1, a2 = decompose(a)
            assert a1.nrows + a2.nrows == a.nrows
            # 重根的數值特徵值誤差約為 eps^(1/重數)
            assert np.allclose(sorted(moduli(a1) + moduli(a2)), moduli(a), atol=1e-2)
            assert np.allclose(moduli(a1), 1.0, atol=1e-2)
            assert a @ p == p @ IntMatrix.block_diag(a1, a2)


def test_exterior_power():
    a = M([1, 2, 0], [0, 3, 1], [1, 0, 2])
    assert exterior_power(a, 3) == M([a.det()])
    assert exterior_power(a, 1) == a
    assert exterior_power(a, 2).nrows == 3
