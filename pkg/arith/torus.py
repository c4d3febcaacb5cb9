"""
G_m^n 的代數子群、撓點與撓陪集。

撓點一律以指數座標 (Q/Z)^n 表示：分數 a/b 代表單位根 e^{2πi·a/b}，
因此環面上的乘法在此成為加法。
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, lcm

from arith.intlat import (
    IntMatrix,
    Lattice,
    hnf,
    left_kernel,
    lattice_sum,
    saturate,
    smith_with_inverse,
    smith_diagonal,
)
from utils.errors import (
    DimensionMismatchError,
    NonIsolatedFixedLocusError,
    NotPrimitiveError,
    SingularMatrixError,
)

logger = logging.getLogger(__name__)


def _mod1(q: Fraction) -> Fraction:
    return q - (q.numerator // q.denominator)


@dataclass(frozen=True)
class TorsionPoint:
    """ (Q/Z)^n 中的點，每個分量化簡到 [0, 1)。 """

    exponents: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(_mod1(Fraction(e)) for e in self.exponents))

    @classmethod
    def identity(cls, n: int) -> "TorsionPoint":
        return cls((Fraction(0),) * n)

    @classmethod
    def of(cls, *values) -> "TorsionPoint":
        return cls(tuple(Fraction(v) for v in values))

    @property
    def ambient_dim(self) -> int:
        return len(self.exponents)

    @property
    def order(self) -> int:
        return lcm(1, *(e.denominator for e in self.exponents))

    def __add__(self, other: "TorsionPoint") -> "TorsionPoint":
        _check_dims(self.ambient_dim, other.ambient_dim)
        return TorsionPoint(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __neg__(self) -> "TorsionPoint":
        return TorsionPoint(tuple(-a for a in self.exponents))

    def __sub__(self, other: "TorsionPoint") -> "TorsionPoint":
        return self + (-other)

    def is_identity(self) -> bool:
        return not any(self.exponents)

    def __str__(self) -> str:
        return "(" + ", ".join(str(e) for e in self.exponents) + ")"


def _check_dims(a: int, b: int):
    if a != b:
        raise DimensionMismatchError(f"ambient dimensions differ: {a} vs {b}")


def apply_monomial(a: IntMatrix, x: TorsionPoint) -> TorsionPoint:
    """ φ_A(x)：指數座標下即為 A·x。 """
    _check_dims(a.ncols, x.ambient_dim)
    return TorsionPoint(a.apply(x.exponents))


def _canonical_epsilon(epsilon: TorsionPoint, lattice: Lattice) -> TorsionPoint:
    """
    ε 模 H_Λ 撓部分的標準代表元。

    先在 Smith 座標 y = V^{-1}x 中把受限座標化簡到 [0, 1/d_i)、自由座標設為 0，
    得到 x0 (階為 o)；再於 x0 + {t ∈ H_Λ 撓部分 : o·t = 0} 中取字典序最小的指數向量。
    """
    n = lattice.ambient_dim
    r = lattice.rank
    if r == 0:
        return TorsionPoint.identity(n)
    _, d, v, v_inv = smith_with_inverse(lattice.basis)
    divisors = smith_diagonal(d)
    y = list(v_inv.apply(epsilon.exponents))
    for i in range(n):
        if i < r:
            step = Fraction(1, divisors[i])
            y[i] = y[i] - step * (y[i] // step)
        else:
            y[i] = Fraction(0)
    x0 = TorsionPoint(v.apply(y))
    o = x0.order
    if o == 1:
        return x0
    generators = []
    for i in range(n):
        scale = o // gcd(o, divisors[i]) if i < r else 1
        generators.append(tuple(scale * v.rows[k][i] for k in range(n)))
    generators.extend(tuple(o if k == i else 0 for k in range(n)) for i in range(n))
    h, _ = hnf(IntMatrix.from_rows(generators, n))
    target = [int(e * o) for e in x0.exponents]
    for row in h.rows:
        pivot_col = next((j for j, val in enumerate(row) if val), None)
        if pivot_col is None:
            continue
        q = target[pivot_col] // row[pivot_col]
        if q:
            target = [t - q * val for t, val in zip(target, row)]
    return TorsionPoint(tuple(Fraction(t, o) for t in target))


@dataclass(frozen=True)
class SubgroupCoset:
    """
    ε·H_Λ，Λ 不必是原始格；分支數為 [saturate(Λ) : Λ]。
    建構時 ε 會被化為標準代表元，因此相等性為語法比較。
    """

    epsilon: TorsionPoint
    lattice: Lattice

    def __post_init__(self):
        _check_dims(self.epsilon.ambient_dim, self.lattice.ambient_dim)
        object.__setattr__(self, "epsilon", _canonical_epsilon(self.epsilon, self.lattice))

    @classmethod
    def subgroup(cls, lattice: Lattice) -> "SubgroupCoset":
        return cls(TorsionPoint.identity(lattice.ambient_dim), lattice)

    @classmethod
    def full_torus(cls, n: int) -> "SubgroupCoset":
        return cls.subgroup(Lattice.zero(n))

    @classmethod
    def point(cls, epsilon: TorsionPoint) -> "SubgroupCoset":
        return cls(epsilon, Lattice.full(epsilon.ambient_dim))

    @property
    def ambient_dim(self) -> int:
        return self.lattice.ambient_dim

    @property
    def dim(self) -> int:
        return self.ambient_dim - self.lattice.rank

    def component_count(self) -> int:
        return self.lattice.index()

    def components(self) -> list["TorsionCoset"]:
        """ 展開為不可約撓陪集 (飽和格)，依標準順序排列。 """
        n, r = self.ambient_dim, self.lattice.rank
        sat = saturate(self.lattice)
        if r == 0:
            return [TorsionCoset(self.epsilon, sat)]
        _, d, v, _ = smith_with_inverse(self.lattice.basis)
        divisors = smith_diagonal(d)
        out = set()
        for ks in product(*(range(di) for di in divisors)):
            y = [Fraction(k, di) for k, di in zip(ks, divisors)] + [Fraction(0)] * (n - r)
            shift = TorsionPoint(v.apply(y))
            out.add(TorsionCoset(self.epsilon + shift, sat))
        return sorted(out, key=_coset_sort_key)

    def contains_coset(self, other: "SubgroupCoset") -> bool:
        if not lattice_contains(other.lattice, self.lattice):
            return False
        return membership(other.epsilon, self)


class TorsionCoset(SubgroupCoset):
    """ 不可約撓陪集 ε·H，H 由原始格定義。 """

    def __post_init__(self):
        if not self.lattice.is_primitive():
            raise NotPrimitiveError("torsion coset requires a primitive lattice")
        super().__post_init__()


def _coset_sort_key(c: SubgroupCoset):
    return (c.lattice.basis.rows, c.epsilon.exponents)


def lattice_contains(big: Lattice, small: Lattice) -> bool:
    return all(big.contains(row) for row in small.basis.rows)


def membership(x: TorsionPoint, coset: SubgroupCoset) -> bool:
    """ 對 Λ 的每個基底向量 a，⟨a, x − ε⟩ ≡ 0 (mod Z)。 """
    _check_dims(x.ambient_dim, coset.ambient_dim)
    diff = (x - coset.epsilon).exponents
    return all(sum(a * e for a, e in zip(row, diff)).denominator == 1 for row in coset.lattice.basis.rows)


def _require_nonsingular(a: IntMatrix):
    a.require_square()
    if a.det() == 0:
        raise SingularMatrixError("monomial map requires det(A) != 0")


def coset_image(coset: SubgroupCoset, a: IntMatrix) -> SubgroupCoset:
    """
    φ_A(ε·H_Λ) = φ_A(ε)·H_{Λ'}，Λ' = {b : b·A ∈ Λ}。
    """
    _require_nonsingular(a)
    _check_dims(a.ncols, coset.ambient_dim)
    n = coset.ambient_dim
    eps = apply_monomial(a, coset.epsilon)
    if coset.lattice.rank == 0:
        return SubgroupCoset(eps, Lattice.zero(n))
    kernel = left_kernel(IntMatrix.vstack(a, -coset.lattice.basis))
    rows = [k[:n] for k in kernel.rows]
    return SubgroupCoset(eps, Lattice.from_rows(rows, n))


def solve_torsion(a: IntMatrix, target: TorsionPoint) -> TorsionPoint:
    """ 求 x 使 A·x ≡ target (mod Z^n)；A 須可逆。 """
    u, d, v, _ = smith_with_inverse(a)
    rhs = u.apply(target.exponents)
    y = [c / di for c, di in zip(rhs, smith_diagonal(d))]
    return TorsionPoint(v.apply(y))


def coset_preimage(coset: SubgroupCoset, a: IntMatrix) -> SubgroupCoset:
    """ φ_A^{-1}(ε·H_Λ) = ε'·H_{Λ·A}，其中 φ_A(ε') = ε。 """
    _require_nonsingular(a)
    _check_dims(a.ncols, coset.ambient_dim)
    n = coset.ambient_dim
    eps = solve_torsion(a, coset.epsilon)
    rows = [a.left_apply(row) for row in coset.lattice.basis.rows]
    return SubgroupCoset(eps, Lattice.from_rows(rows, n))


def _intersect_subgroup_cosets(c1: SubgroupCoset, c2: SubgroupCoset) -> SubgroupCoset | None:
    _check_dims(c1.ambient_dim, c2.ambient_dim)
    n = c1.ambient_dim
    stacked = IntMatrix.vstack(c1.lattice.basis, c2.lattice.basis)
    if stacked.nrows == 0:
        return SubgroupCoset(c1.epsilon, Lattice.zero(n))
    t = c1.lattice.basis.apply(c1.epsilon.exponents) + c2.lattice.basis.apply(c2.epsilon.exponents)
    u, d, v, _ = smith_with_inverse(stacked)
    rhs = u.apply(t)
    divisors = smith_diagonal(d)
    rank = sum(1 for x in divisors if x)
    # D 的零列對應相容條件
    if any(Fraction(rhs[i]).denominator != 1 for i in range(rank, stacked.nrows)):
        return None
    y = [Fraction(rhs[i]) / divisors[i] for i in range(rank)] + [Fraction(0)] * (n - rank)
    x0 = TorsionPoint(v.apply(y))
    return SubgroupCoset(x0, lattice_sum(c1.lattice, c2.lattice))


def coset_intersect(c1: SubgroupCoset, c2: SubgroupCoset) -> list[TorsionCoset]:
    """ 精確交集，表示為撓陪集的有限聯集；不相交時為空串列。 """
    meet = _intersect_subgroup_cosets(c1, c2)
    if meet is None:
        return []
    return meet.components()


def stabilizer(coset: SubgroupCoset) -> SubgroupCoset:
    return SubgroupCoset.subgroup(coset.lattice)


def quotient_map(lattice: Lattice) -> IntMatrix:
    """
    子環面 T = H_Λ 的商映射 φ_Q : G_m^n → G_m^{n−dim T}，ker φ_Q = T。

    取 Q 為 Λ 的 HNF 基底，列空間恰為 Λ。
    """
    if not lattice.is_primitive():
        raise NotPrimitiveError("quotient_map requires an irreducible (primitive) subtorus")
    return lattice.basis


def fixed_points(a: IntMatrix, period: int) -> tuple[int, list[TorsionPoint]]:
    """
    φ_A 週期為 period 的點：(A^p − I)x ≡ 0，經 Smith 形式列舉。
    """
    n = a.require_square()
    if period < 1:
        raise NonIsolatedFixedLocusError("period must be positive")
    m = a.power(period) - IntMatrix.identity(n)
    det = m.det()
    if det == 0:
        raise NonIsolatedFixedLocusError("non-isolated fixed locus")
    _, d, v, _ = smith_with_inverse(m)
    divisors = smith_diagonal(d)
    points = sorted(
        (TorsionPoint(v.apply([Fraction(k, di) for k, di in zip(ks, divisors)]))
         for ks in product(*(range(di) for di in divisors))),
        key=lambda p: p.exponents,
    )
    logger.debug("Enumerated %d periodic points of period %d", len(points), period)
    return abs(det), points


def graph_coset(a: IntMatrix) -> SubgroupCoset:
    """ φ_A 的圖 {(x, φ_A(x))} ⊆ G_m^{2n}，格的列為 [A | −I]。 """
    n = a.require_square()
    rows = IntMatrix.hstack(a, -IntMatrix.identity(n)).rows
    return SubgroupCoset.subgroup(Lattice.from_rows(rows, 2 * n))


def _embed(coset: SubgroupCoset, before: int, after: int) -> SubgroupCoset:
    n = before + coset.ambient_dim + after
    eps = TorsionPoint((Fraction(0),) * before + coset.epsilon.exponents + (Fraction(0),) * after)
    rows = [(0,) * before + row + (0,) * after for row in coset.lattice.basis.rows]
    return SubgroupCoset(eps, Lattice.from_rows(rows, n))


def _project_outer(coset: TorsionCoset, a: int, b: int, c: int) -> TorsionCoset:
    basis = coset.lattice.basis
    eps = coset.epsilon.exponents[:a] + coset.epsilon.exponents[a + b:]
    if basis.nrows == 0:
        return TorsionCoset(TorsionPoint(eps), Lattice.zero(a + c))
    middle = IntMatrix.from_rows([row[a:a + b] for row in basis.rows], b)
    rows = []
    for k in left_kernel(middle).rows:
        v = basis.left_apply(k)
        rows.append(v[:a] + v[a + b:])
    return TorsionCoset(TorsionPoint(eps), Lattice.from_rows(rows, a + c))


def correspondence_compose(
    gamma1: SubgroupCoset, gamma2: SubgroupCoset, a: int, b: int, c: int
) -> list[TorsionCoset]:
    """
    對應的合成：將 (Γ1 × G_m^c) ∩ (G_m^a × Γ2) 投影到外側因子。

    維度 a, b, c 必須明確給定，不做自動廣播。
    """
    if gamma1.ambient_dim != a + b or gamma2.ambient_dim != b + c:
        raise DimensionMismatchError(
            f"correspondence dims ({gamma1.ambient_dim}, {gamma2.ambient_dim}) do not match a={a}, b={b}, c={c}"
        )
    pieces = coset_intersect(_embed(gamma1, 0, c), _embed(gamma2, a, 0))
    projected = {_project_outer(piece, a, b, c) for piece in pieces}
    kept = [p for p in projected if not any(q != p and q.contains_coset(p) for q in projected)]
    return sorted(kept, key=_coset_sort_key)


def all_torsion_points(n: int, order: int) -> list[TorsionPoint]:
    """ 窮舉所有階整除 order 的撓點 (驗證用)。 """
    return [TorsionPoint(tuple(Fraction(k, order) for k in ks)) for ks in product(range(order), repeat=n)]
