"""
精確整數線性代數：Hermite / Smith 標準形、格的飽和、特徵多項式、
分圓因子分解，以及單項映射的「單位根部分 / 正部分」分解。
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from math import lcm

import numpy as np
import sympy as sp

import config
from utils.errors import DimensionMismatchError, SingularMatrixError, ToridynError

logger = logging.getLogger(__name__)

_X = sp.Symbol("x")


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """
    擴展歐幾里得演算法，回傳 (x, y, g) 使 x*a + y*b == g。
    """
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    return x, y, g


def _bareiss_det(rows) -> int:
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class IntMatrix:
    """
    任意精度整數矩陣 (不可變)。

    方陣代表 G_m^n 上的單項自同態 φ_A；長方矩陣用於格基底與轉換矩陣。
    行列式非零的要求於使用處檢查。
    """

    rows: tuple[tuple[int, ...], ...]
    ncols: int

    def __post_init__(self):
        for row in self.rows:
            if len(row) != self.ncols:
                raise DimensionMismatchError("ragged matrix rows")
            for entry in row:
                if not isinstance(entry, int) or isinstance(entry, bool):
                    raise ToridynError(f"matrix entries must be integers, got {entry!r}")

    @classmethod
    def from_rows(cls, rows, ncols: int | None = None) -> "IntMatrix":
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(rows, ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(tuple((0,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def diagonal(cls, entries) -> "IntMatrix":
        entries = list(entries)
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def require_square(self) -> int:
        if not self.is_square:
            raise DimensionMismatchError(f"expected a square matrix, got {self.nrows}x{self.ncols}")
        if self.nrows > config.DIM_CAP:
            logger.warning("Dimension %d exceeds soft cap %d", self.nrows, config.DIM_CAP)
        return self.nrows

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(row[j] for row in self.rows) for j in range(self.ncols)), self.nrows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise DimensionMismatchError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.column(j) for j in range(other.ncols)]
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.rows),
            other.ncols,
        )

    def apply(self, vector) -> tuple:
        """ 以矩陣乘上行向量 (元素可為 Fraction)。 """
        if len(vector) != self.ncols:
            raise DimensionMismatchError("vector length does not match matrix")
        return tuple(sum((a * v for a, v in zip(row, vector)), 0) for row in self.rows)

    def left_apply(self, vector) -> tuple:
        """ 列向量乘以矩陣：v·A。 """
        if len(vector) != self.nrows:
            raise DimensionMismatchError("vector length does not match matrix")
        return tuple(sum((v * self.rows[i][j] for i, v in enumerate(vector)), 0) for j in range(self.ncols))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise DimensionMismatchError("shape mismatch in addition")
        return IntMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(k * a for a in r) for r in self.rows), self.ncols)

    def power(self, k: int) -> "IntMatrix":
        n = self.require_square()
        if k < 0:
            raise ToridynError("negative matrix powers are not integral in general")
        result, base = IntMatrix.identity(n), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def det(self) -> int:
        self.require_square()
        return _bareiss_det(self.rows)

    def rank(self) -> int:
        h, _ = hnf(self)
        return sum(1 for row in h.rows if any(row))

    def to_sympy(self) -> sp.Matrix:
        return sp.Matrix(self.nrows, self.ncols, [a for row in self.rows for a in row])

    def to_numpy(self) -> np.ndarray:
        return np.array(self.rows, dtype=float).reshape(self.nrows, self.ncols)

    def to_list(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    @staticmethod
    def vstack(*blocks: "IntMatrix") -> "IntMatrix":
        ncols = blocks[0].ncols
        if any(b.ncols != ncols for b in blocks):
            raise DimensionMismatchError("column counts differ in vstack")
        return IntMatrix(tuple(r for b in blocks for r in b.rows), ncols)

    @staticmethod
    def hstack(*blocks: "IntMatrix") -> "IntMatrix":
        nrows = blocks[0].nrows
        if any(b.nrows != nrows for b in blocks):
            raise DimensionMismatchError("row counts differ in hstack")
        rows = tuple(tuple(a for b in blocks for a in b.rows[i]) for i in range(nrows))
        return IntMatrix(rows, sum(b.ncols for b in blocks))

    @staticmethod
    def block_diag(*blocks: "IntMatrix") -> "IntMatrix":
        total = sum(b.ncols for b in blocks)
        rows, offset = [], 0
        for b in blocks:
            for r in b.rows:
                rows.append((0,) * offset + r + (0,) * (total - offset - b.ncols))
            offset += b.ncols
        return IntMatrix(tuple(rows), total)


@dataclass(frozen=True)
class IntPoly:
    """ 整數係數多項式，常數項在前；零多項式為空 tuple。 """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.coeffs and self.coeffs[-1] == 0:
            raise ToridynError("leading coefficient of IntPoly must be nonzero")

    @classmethod
    def from_coeffs(cls, coeffs) -> "IntPoly":
        coeffs = [int(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return cls(tuple(coeffs))

    @classmethod
    def from_sympy(cls, expr) -> "IntPoly":
        poly = sp.Poly(expr, _X)
        return cls.from_coeffs(reversed([int(c) for c in poly.all_coeffs()]))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def to_sympy(self) -> sp.Poly:
        if not self.coeffs:
            return sp.Poly(0, _X)
        return sp.Poly(list(reversed(self.coeffs)), _X)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly.from_sympy((self.to_sympy() * other.to_sympy()).as_expr())

    def evaluate_matrix(self, a: IntMatrix) -> IntMatrix:
        """ Horner 法計算 p(A)。 """
        n = a.require_square()
        result = IntMatrix.zeros(n, n)
        for c in reversed(self.coeffs):
            result = (result @ a) + IntMatrix.identity(n).scale(c)
        return result


def _verify_unimodular(u: IntMatrix, name: str):
    if abs(u.det()) != 1:
        raise ToridynError(f"transform {name} is not unimodular")


def hnf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """
    列式 Hermite 標準形：回傳 (H, U) 使 U·m = H。

    H 為上三角 (梯形)，主元為正，主元上方元素化簡到 [0, 主元)。
    """
    r, c = m.shape
    h = [list(row) for row in m.rows]
    u = [list(row) for row in IntMatrix.identity(r).rows]

    def combine(i, k, x, y, s, t):
        # (row_i, row_k) <- (x*row_i + y*row_k, s*row_i + t*row_k)
        for mat in (h, u):
            ri, rk = mat[i], mat[k]
            mat[i] = [x * a + y * b for a, b in zip(ri, rk)]
            mat[k] = [s * a + t * b for a, b in zip(ri, rk)]

    pivot_row = 0
    for col in range(c):
        if pivot_row >= r:
            break
        for i in range(pivot_row + 1, r):
            b = h[i][col]
            if b == 0:
                continue
            a = h[pivot_row][col]
            if a == 0:
                h[pivot_row], h[i] = h[i], h[pivot_row]
                u[pivot_row], u[i] = u[i], u[pivot_row]
                continue
            x, y, g = xgcd(a, b)
            combine(pivot_row, i, x, y, -(b // g), a // g)
        p = h[pivot_row][col]
        if p == 0:
            continue
        if p < 0:
            h[pivot_row] = [-v for v in h[pivot_row]]
            u[pivot_row] = [-v for v in u[pivot_row]]
            p = -p
        for i in range(pivot_row):
            q = h[i][col] // p
            if q:
                h[i] = [a - q * b for a, b in zip(h[i], h[pivot_row])]
                u[i] = [a - q * b for a, b in zip(u[i], u[pivot_row])]
        pivot_row += 1

    H, U = IntMatrix.from_rows(h, c), IntMatrix.from_rows(u, r)
    if config.VERIFY_TRANSFORMS:
        if U @ m != H:
            raise ToridynError("hnf transform check failed")
        _verify_unimodular(U, "U")
    return H, U


def _smith(m: IntMatrix):
    """ 回傳 (U, D, V, V_inv)，U·m·V = D。 """
    r, c = m.shape
    a = [list(row) for row in m.rows]
    u = [list(row) for row in IntMatrix.identity(r).rows]
    v = [list(row) for row in IntMatrix.identity(c).rows]
    vi = [list(row) for row in IntMatrix.identity(c).rows]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vi[i], vi[j] = vi[j], vi[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        # col_dst += q * col_src ；V^{-1} 的對應列運算為 row_src -= q * row_dst
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]
        vi[src] = [x - q * y for x, y in zip(vi[src], vi[dst])]

    t = 0
    while t < min(r, c):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        if best[0] != t:
            swap_rows(t, best[0])
        if best[1] != t:
            swap_cols(t, best[1])

        while True:
            p = a[t][t]
            for i in range(t + 1, r):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, c):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            smaller = [(i, t) for i in range(t + 1, r) if a[i][t]] + [(t, j) for j in range(t + 1, c) if a[t][j]]
            if smaller:
                i, j = min(smaller, key=lambda ij: abs(a[ij[0]][ij[1]]))
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            offender = next(
                ((i, j) for i in range(t + 1, r) for j in range(t + 1, c) if a[i][j] % p),
                None,
            )
            if offender is None:
                break
            add_row(t, offender[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    U, D = IntMatrix.from_rows(u, r), IntMatrix.from_rows(a, c)
    V, V_inv = IntMatrix.from_rows(v, c), IntMatrix.from_rows(vi, c)
    if config.VERIFY_TRANSFORMS:
        if U @ m @ V != D:
            raise ToridynError("snf transform check failed")
        if V @ V_inv != IntMatrix.identity(c):
            raise ToridynError("snf inverse tracking failed")
        _verify_unimodular(U, "U")
        _verify_unimodular(V, "V")
    return U, D, V, V_inv


def snf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """
    Smith 標準形：U·m·V = D，D 為對角且 d_1 | d_2 | ...。
    """
    u, d, v, _ = _smith(m)
    return u, d, v


def smith_with_inverse(m: IntMatrix):
    return _smith(m)


def smith_diagonal(d: IntMatrix) -> list[int]:
    return [d.rows[i][i] for i in range(min(d.shape))]


def left_kernel(m: IntMatrix) -> IntMatrix:
    """ {x ∈ Z^r : x·m = 0} 的整數基底 (列向量)。 """
    h, u = hnf(m)
    rows = [u.rows[i] for i in range(m.nrows) if not any(h.rows[i])]
    return IntMatrix(tuple(rows), m.nrows)


@dataclass(frozen=True)
class Lattice:
    """
    Z^n 的子群 Λ，以列式 HNF 基底存放；兩個格相等當且僅當 HNF 基底相同。
    """

    ambient_dim: int
    basis: IntMatrix

    @classmethod
    def from_rows(cls, rows, ambient_dim: int) -> "Lattice":
        m = IntMatrix.from_rows(rows, ambient_dim)
        if m.nrows == 0:
            return cls(ambient_dim, IntMatrix.zeros(0, ambient_dim))
        h, _ = hnf(m)
        nonzero = tuple(row for row in h.rows if any(row))
        return cls(ambient_dim, IntMatrix(nonzero, ambient_dim))

    @classmethod
    def full(cls, n: int) -> "Lattice":
        return cls(n, IntMatrix.identity(n))

    @classmethod
    def zero(cls, n: int) -> "Lattice":
        return cls(n, IntMatrix.zeros(0, n))

    @property
    def rank(self) -> int:
        return self.basis.nrows

    def contains(self, vector) -> bool:
        return Lattice.from_rows(self.basis.rows + (tuple(vector),), self.ambient_dim) == self

    def index(self) -> int:
        """ [saturate(Λ) : Λ]，即基底矩陣 Smith 對角元的乘積。 """
        if self.rank == 0:
            return 1
        _, d, _ = snf(self.basis)
        out = 1
        for x in smith_diagonal(d):
            out *= x
        return out

    def is_primitive(self) -> bool:
        return self.index() == 1


def saturate(lattice: Lattice) -> Lattice:
    """
    回傳原始閉包 (Λ⊗R)∩Z^n。

    由基底的 Smith 分解 U·B·V = D 可知 Λ 的列空間由 d_i·(V^{-1} 的第 i 列) 生成，
    因此飽和格即為 V^{-1} 的前 r 列。
    """
    if lattice.rank == 0:
        return lattice
    _, _, _, v_inv = _smith(lattice.basis)
    return Lattice.from_rows(v_inv.rows[: lattice.rank], lattice.ambient_dim)


def lattice_sum(a: Lattice, b: Lattice) -> Lattice:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError("lattices live in different ambient dimensions")
    return Lattice.from_rows(a.basis.rows + b.basis.rows, a.ambient_dim)


def lattice_intersection(a: Lattice, b: Lattice) -> Lattice:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError("lattices live in different ambient dimensions")
    if a.rank == 0 or b.rank == 0:
        return Lattice.zero(a.ambient_dim)
    kernel = left_kernel(IntMatrix.vstack(a.basis, -b.basis))
    rows = [a.basis.left_apply(k[: a.rank]) for k in kernel.rows]
    return Lattice.from_rows(rows, a.ambient_dim)


def charpoly(a: IntMatrix) -> IntPoly:
    """ 精確特徵多項式 det(xI − A)。 """
    a.require_square()
    if a.nrows == 0:
        return IntPoly((1,))
    return IntPoly.from_sympy(a.to_sympy().charpoly(_X).as_expr())


def _cyclotomic_indices(degree: int) -> list[int]:
    # φ(k) >= sqrt(k/2)，故 φ(k) <= D 蘊含 k <= 2D²
    bound = 2 * degree * degree + 2
    return [k for k in range(1, bound + 1) if sp.totient(k) <= degree]


def cyclotomic_split(p: IntPoly) -> tuple[IntPoly, IntPoly]:
    """
    p = p_cyc · p_rest，其中 p_cyc 收集所有整除某個 x^k − 1 的因子 (含重數)。
    """
    if not p.coeffs:
        raise ToridynError("cyclotomic_split of the zero polynomial")
    if p.degree > config.DIM_CAP:
        logger.warning("Polynomial degree %d exceeds soft cap %d", p.degree, config.DIM_CAP)
    rest = p.to_sympy()
    cyc = sp.Poly(1, _X)
    for k in _cyclotomic_indices(p.degree):
        phi_k = sp.Poly(sp.cyclotomic_poly(k, _X), _X)
        while rest.degree() >= phi_k.degree():
            q, r = rest.div(phi_k)
            if not r.is_zero:
                break
            rest = sp.Poly(q.as_expr(), _X)
            cyc = cyc * phi_k
    return IntPoly.from_sympy(cyc.as_expr()), IntPoly.from_sympy(rest.as_expr())


def is_positive(a: IntMatrix) -> bool:
    """ 所有特徵值既非 0 也非單位根。 """
    if a.det() == 0:
        return False
    p_cyc, _ = cyclotomic_split(charpoly(a))
    return p_cyc.is_constant()


def _integral_kernel_basis(m: sp.Matrix, n: int) -> list[tuple[int, ...]]:
    vectors = []
    for col in m.nullspace():
        den = lcm(*(int(sp.Rational(x).q) for x in col))
        vectors.append(tuple(int(x * den) for x in col))
    if not vectors:
        return []
    return list(saturate(Lattice.from_rows(vectors, n)).basis.rows)


def decompose(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """
    回傳 (P, A1, A2) 使 A·P = P·diag(A1, A2)。

    P 的行依序為 ker p_cyc(A) 與 ker p_rest(A) 的飽和整數基底，
    A1 的特徵值皆為單位根，A2 為正矩陣。不保證 |det P| 最小。
    """
    n = a.require_square()
    if a.det() == 0:
        raise SingularMatrixError("decompose requires det(A) != 0")
    p_cyc, p_rest = cyclotomic_split(charpoly(a))
    w1 = _integral_kernel_basis(p_cyc.evaluate_matrix(a).to_sympy(), n)
    w2 = _integral_kernel_basis(p_rest.evaluate_matrix(a).to_sympy(), n)
    n1, n2 = len(w1), len(w2)
    if n1 + n2 != n:
        raise ToridynError("invariant subspaces do not span the ambient space")
    p = IntMatrix.from_rows(w1 + w2, n).transpose()
    conj = p.to_sympy().inv() * a.to_sympy() * p.to_sympy()
    if any(conj[i, j] != 0 for i in range(n1) for j in range(n1, n)) or \
            any(conj[i, j] != 0 for i in range(n1, n) for j in range(n1)):
        raise ToridynError("decomposition blocks are not invariant")
    a1 = IntMatrix.from_rows([[int(conj[i, j]) for j in range(n1)] for i in range(n1)], n1)
    a2 = IntMatrix.from_rows([[int(conj[i, j]) for j in range(n1, n)] for i in range(n1, n)], n2)
    if a @ p != p @ IntMatrix.block_diag(a1, a2):
        raise ToridynError("decomposition identity A·P = P·diag(A1, A2) failed")
    logger.debug("Decomposed %dx%d matrix into cyclotomic block %d and positive block %d", n, n, n1, n2)
    return p, a1, a2


def exterior_power(a: IntMatrix, i: int) -> IntMatrix:
    """ 第 i 個外冪 ∧^i A：以字典序排列的 i×i 子式。 """
    n = a.require_square()
    subsets = list(combinations(range(n), i))
    rows = []
    for rs in subsets:
        rows.append(tuple(
            _bareiss_det([[a.rows[r][c] for c in cs] for r in rs]) for cs in subsets
        ))
    return IntMatrix(tuple(rows), len(subsets))
