"""
分圓體 Q(ζ_n) 的精確算術。

元素以冪基底 1, ζ_n, ..., ζ_n^{φ(n)-1} 上的有理係數表示；乘法後以第 n 個
分圓多項式約化。冪基底是整基底，因此整性等價於所有係數皆為整數。
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations_with_replacement
from math import gcd, lcm

import mpmath
import numpy as np
import sympy as sp

import config
from utils.errors import DimensionMismatchError, NonIntegralError, ToridynError

logger = logging.getLogger(__name__)

_X = sp.Symbol("x")


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return int(sp.totient(n))


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """ Φ_n 的整數係數 (常數項在前)。 """
    poly = sp.Poly(sp.cyclotomic_poly(n, _X), _X)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def ramanujan_sum(n: int, m: int) -> int:
    """ Tr(ζ_n^m) = μ(n/g)·φ(n)/φ(n/g)，g = gcd(n, m)。 """
    g = gcd(n, m % n) if m % n else n
    q = n // g
    return int(sp.mobius(q)) * euler_phi(n) // euler_phi(q)


@lru_cache(maxsize=None)
def _units(n: int) -> tuple[int, ...]:
    if n == 1:
        return (1,)
    return tuple(k for k in range(1, n) if gcd(k, n) == 1)


def _reduce(terms, n: int) -> tuple[Fraction, ...]:
    """ 將 {指數: 係數} 摺疊到 ζ^n = 1 後再模 Φ_n 約化。 """
    deg = euler_phi(n)
    poly = [Fraction(0)] * n
    for e, c in terms:
        if c:
            poly[e % n] += c
    phi_c = cyclotomic_coeffs(n)
    for k in range(n - 1, deg - 1, -1):
        c = poly[k]
        if c:
            shift = k - deg
            for j, pc in enumerate(phi_c):
                if pc:
                    poly[shift + j] -= c * pc
    return tuple(poly[:deg])


@dataclass(frozen=True)
class CertifiedReal:
    """ 浮點值與保證誤差界。 """

    value: float
    error: float

    @property
    def lower(self) -> float:
        return self.value - self.error

    @property
    def upper(self) -> float:
        return self.value + self.error

    def compare_at_most(self, threshold: float) -> str:
        if self.upper <= threshold:
            return "pass"
        if self.lower > threshold:
            return "fail"
        return "indeterminate"


@dataclass(frozen=True, eq=False)
class CycloNumber:
    """
    Q(ζ_n) 的元素。conductor 不會被自動縮小；需要時呼叫 normalize()。
    不同 conductor 的運算會先提升到 lcm。
    """

    conductor: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.conductor < 1:
            raise ToridynError("conductor must be positive")
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != euler_phi(self.conductor):
            raise DimensionMismatchError(
                f"conductor {self.conductor} needs {euler_phi(self.conductor)} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    # --- 建構 ---
    @classmethod
    def rational(cls, q, conductor: int = 1) -> "CycloNumber":
        return cls(conductor, (Fraction(q),) + (Fraction(0),) * (euler_phi(conductor) - 1))

    @classmethod
    def zero(cls, conductor: int = 1) -> "CycloNumber":
        return cls.rational(0, conductor)

    @classmethod
    def one(cls, conductor: int = 1) -> "CycloNumber":
        return cls.rational(1, conductor)

    @classmethod
    def root(cls, k: int, n: int) -> "CycloNumber":
        """ ζ_n^k。 """
        return cls(n, _reduce([(k, Fraction(1))], n))

    @classmethod
    def from_terms(cls, terms, n: int) -> "CycloNumber":
        return cls(n, _reduce(terms, n))

    @classmethod
    def coerce(cls, value) -> "CycloNumber":
        if isinstance(value, CycloNumber):
            return value
        return cls.rational(Fraction(value))

    # --- 基本性質 ---
    def terms(self):
        return [(j, c) for j, c in enumerate(self.coeffs) if c]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ToridynError("element is not rational")
        return self.coeffs[0]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def denominator(self) -> int:
        return lcm(1, *(c.denominator for c in self.coeffs))

    def lift(self, m: int) -> "CycloNumber":
        if m % self.conductor:
            raise ToridynError(f"cannot lift conductor {self.conductor} to {m}")
        if m == self.conductor:
            return self
        step = m // self.conductor
        return CycloNumber(m, _reduce([(j * step, c) for j, c in self.terms()], m))

    def _common(self, other) -> tuple["CycloNumber", "CycloNumber"]:
        if not isinstance(other, CycloNumber):
            return self, CycloNumber.rational(Fraction(other), self.conductor)
        if other.conductor == self.conductor:
            return self, other
        m = lcm(self.conductor, other.conductor)
        return self.lift(m), other.lift(m)

    # --- 算術 ---
    def __add__(self, other):
        if not isinstance(other, (CycloNumber, int, Fraction)):
            return NotImplemented
        a, b = self._common(other)
        return CycloNumber(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.conductor, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, (CycloNumber, int, Fraction)):
            return NotImplemented
        return self + (-CycloNumber.coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNumber(self.conductor, tuple(x * other for x in self.coeffs))
        if not isinstance(other, CycloNumber):
            return NotImplemented
        a, b = self._common(other)
        if b.is_rational():
            return a * b.coeffs[0]
        if a.is_rational():
            return b * a.coeffs[0]
        n = a.conductor
        acc = {}
        for i, x in a.terms():
            for j, y in b.terms():
                acc[i + j] = acc.get(i + j, 0) + x * y
        return CycloNumber(n, _reduce(acc.items(), n))

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if self.is_rational():
            return CycloNumber.rational(1 / self.coeffs[0], self.conductor)
        n = self.conductor
        a = sp.Poly([sp.Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)], _X, domain=sp.QQ)
        m = sp.Poly(list(reversed(cyclotomic_coeffs(n))), _X, domain=sp.QQ)
        inv = sp.Poly(sp.invert(a, m), _X, domain=sp.QQ)
        terms = [(j, Fraction(int(c.p), int(c.q))) for j, c in enumerate(reversed(inv.all_coeffs()))]
        return CycloNumber(n, _reduce(terms, n))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / Fraction(other))
        if not isinstance(other, CycloNumber):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CycloNumber.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = CycloNumber.one(self.conductor), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycloNumber):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        reduced = self.normalize()
        return hash((reduced.conductor, reduced.coeffs))

    # --- Galois 作用 ---
    def galois(self, k: int) -> "CycloNumber":
        """ σ_k(ζ_n) = ζ_n^k。 """
        n = self.conductor
        if gcd(k % n if n > 1 else 1, n) != 1:
            raise ToridynError(f"k={k} is not a unit mod {n}")
        return CycloNumber(n, _reduce([(j * k, c) for j, c in self.terms()], n))

    def conjugate(self) -> "CycloNumber":
        return self.galois(-1)

    def trace(self) -> Fraction:
        n = self.conductor
        return sum((c * ramanujan_sum(n, j) for j, c in self.terms()), Fraction(0))

    def norm(self) -> Fraction:
        result = CycloNumber.one(self.conductor)
        for k in _units(self.conductor):
            result = result * self.galois(k)
        return result.rational_value()

    def normalize(self) -> "CycloNumber":
        """ 縮小到真正的 conductor (包含 α 的最小分圓體)。 """
        n = self.conductor
        if self.is_rational():
            return CycloNumber.rational(self.coeffs[0])
        for m in sorted(int(x) for x in sp.divisors(n)):
            if m == n:
                return self
            if m % 4 == 2:
                continue
            if all(self.galois(k) == self for k in _units(n) if k % m == 1 % m):
                return self._express_in(m)
        return self

    def _express_in(self, m: int) -> "CycloNumber":
        basis = [CycloNumber.root(j, m).lift(self.conductor).coeffs for j in range(euler_phi(m))]
        matrix = sp.Matrix([[sp.Rational(b[i].numerator, b[i].denominator) for b in basis]
                            for i in range(len(self.coeffs))])
        rhs = sp.Matrix([sp.Rational(c.numerator, c.denominator) for c in self.coeffs])
        sol, params = matrix.gauss_jordan_solve(rhs)
        if params.shape[0]:
            raise ToridynError("subfield basis is not independent")
        return CycloNumber(m, tuple(Fraction(int(x.p), int(x.q)) for x in sol))

    # --- 複數嵌入 ---
    def embed(self, k: int = 1) -> tuple[complex, float]:
        """ σ_k(α) 的數值與保證誤差界。 """
        n = self.conductor
        if gcd(k, n) != 1:
            raise ToridynError(f"k={k} is not coprime to conductor {n}")
        idx = [j for j, c in self.terms()]
        if not idx:
            return 0j, 0.0
        try:
            c = np.array([float(self.coeffs[j]) for j in idx])
        except OverflowError:
            return _embed_precise(self, k)
        if not np.all(np.isfinite(c)):
            return _embed_precise(self, k)
        angles = 2.0 * np.pi * ((np.array(idx) * k) % n) / n
        value = complex(np.sum(c * np.exp(1j * angles)))
        abs_sum = float(np.sum(np.abs(c)))
        error = (len(self.coeffs) + 4) * config.UNIT_ROUNDOFF * abs_sum * (1 + 1e-12)
        if not math.isfinite(abs(value)):
            return _embed_precise(self, k)
        return value, error

    def __repr__(self) -> str:
        return f"CycloNumber({self.conductor}, [{', '.join(str(c) for c in self.coeffs)}])"


def _embed_precise(alpha: CycloNumber, k: int, dps: int = 40) -> tuple[complex, float]:
    """ 係數過大時以 mpmath 計算；回傳值可能為 inf。 """
    n = alpha.conductor
    with mpmath.workdps(dps):
        total = mpmath.mpc(0)
        abs_sum = mpmath.mpf(0)
        for j, c in alpha.terms():
            cj = mpmath.mpf(c.numerator) / c.denominator
            total += cj * mpmath.expjpi(mpmath.mpf(2 * ((j * k) % n)) / n)
            abs_sum += abs(cj)
        error = abs_sum * mpmath.mpf(10) ** (5 - dps) * (len(alpha.coeffs) + 4)
        if abs(total) > mpmath.mpf("1e300"):
            return complex(math.inf, 0.0), 0.0
        return complex(total), float(error)


def embed(alpha: CycloNumber, k: int = 1) -> tuple[complex, float]:
    return alpha.embed(k)


def house(alpha: CycloNumber) -> CertifiedReal:
    """ 所有嵌入的最大模長，附保證誤差界。 """
    best, best_err = 0.0, 0.0
    for k in _units(alpha.conductor):
        value, err = alpha.embed(k)
        best, best_err = max(best, abs(value)), max(best_err, err)
    return CertifiedReal(best, best_err)


def _house_precise(alpha: CycloNumber, dps: int = 60) -> CertifiedReal:
    best, err = 0.0, 0.0
    for k in _units(alpha.conductor):
        value, e = _embed_precise(alpha, k, dps)
        best, err = max(best, abs(value)), max(err, e)
    return CertifiedReal(best, err)


def house_at_most(alpha: CycloNumber, bound) -> str:
    """
    判定 house(α) ≤ bound：回傳 "pass" / "fail" / "indeterminate"。

    誤差區間跨過門檻時先做精確檢查 (|σ_k α|² = σ_k(α·ᾱ)，等號成立當且僅當
    α·ᾱ = bound²)，再以高精度重算；仍無法分辨才回報 indeterminate。
    """
    status = house(alpha).compare_at_most(float(bound))
    if status != "indeterminate":
        return status
    b = Fraction(bound)
    if alpha * alpha.conjugate() == b * b:
        return "pass"
    return _house_precise(alpha).compare_at_most(float(bound))


def is_scaled_integral(alpha: CycloNumber, m: int) -> bool:
    """ M·α 的所有係數皆為整數。 """
    return (alpha * m).is_integral()


@dataclass(frozen=True)
class RootOfUnity:
    """ e^{2πi·a/b}，指數化簡到 [0, 1)。 """

    exponent: Fraction

    def __post_init__(self):
        e = Fraction(self.exponent)
        object.__setattr__(self, "exponent", e - (e.numerator // e.denominator))

    @property
    def order(self) -> int:
        return self.exponent.denominator

    def to_cyclo(self) -> CycloNumber:
        return CycloNumber.root(self.exponent.numerator, self.exponent.denominator)

    def __str__(self) -> str:
        return f"{self.exponent.numerator}/{self.exponent.denominator}"


def _sum_table(roots: list[tuple[int, ...]], k: int, width: int) -> dict:
    table = {}
    for combo in combinations_with_replacement(range(len(roots)), k):
        key = tuple(sum(roots[i][j] for i in combo) for j in range(width)) if combo else (0,) * width
        table.setdefault(key, combo)
    return table


def loxton_decompose(alpha: CycloNumber, b_max: int, order_bound: int) -> list[RootOfUnity] | None:
    """
    以折半搜尋找出最短的 ξ_1 + ... + ξ_b = α (b ≤ b_max，各 ξ_i 的階整除 order_bound)。
    找不到時回傳 None。
    """
    if not alpha.is_integral():
        raise NonIntegralError("loxton_decompose requires an integral cyclotomic number")
    if b_max > config.LOXTON_MAX_TERMS or order_bound > config.LOXTON_MAX_ORDER:
        raise ToridynError(
            f"Loxton search bounds exceed desk scale (b <= {config.LOXTON_MAX_TERMS}, order <= {config.LOXTON_MAX_ORDER})"
        )
    if alpha.is_zero():
        return []
    big = lcm(alpha.conductor, order_bound)
    step = big // order_bound
    width = euler_phi(big)
    target = tuple(int(c) for c in alpha.lift(big).coeffs)
    roots = [tuple(int(c) for c in CycloNumber.root(j * step, big).coeffs) for j in range(order_bound)]
    tables = {}
    for b in range(1, b_max + 1):
        b1, b2 = (b + 1) // 2, b // 2
        for k in (b1, b2):
            if k not in tables:
                tables[k] = _sum_table(roots, k, width)
        t1 = tables[b1]
        for s2, c2 in tables[b2].items():
            need = tuple(t - s for t, s in zip(target, s2))
            c1 = t1.get(need)
            if c1 is not None:
                found = sorted(c1 + c2)
                logger.debug("Loxton decomposition of length %d found", b)
                return [RootOfUnity(Fraction(j, order_bound)) for j in found]
    return None


def check_point_set_conditions(points, m: int, c) -> dict:
    """
    對有限點集逐點檢查 (DCI) 與 (BH)；(AI) 無法由有限資料判定，回報 "not evaluated"。
    """
    dims = {len(p) for p in points}
    if len(dims) > 1:
        raise DimensionMismatchError("points do not share an ambient dimension")
    rows = []
    for idx, point in enumerate(points):
        dci = all(is_scaled_integral(x, m) for x in point)
        statuses = [house_at_most(x, c) for x in point]
        if "fail" in statuses:
            bh = "fail"
        elif "indeterminate" in statuses:
            bh = "indeterminate"
        else:
            bh = "pass"
        rows.append({
            "index": idx,
            "dci": dci,
            "bh": bh,
            "houses": [house(x).value for x in point],
        })
    bh_all = [r["bh"] for r in rows]
    return {
        "points": rows,
        "dci": all(r["dci"] for r in rows),
        "bh": "fail" if "fail" in bh_all else ("indeterminate" if "indeterminate" in bh_all else "pass"),
        "ai": "not evaluated",
    }


# --- 整數元素列舉 ---

def _fincke_pohst(gram: list[list[int]], bound: Fraction):
    """ 列舉所有整數向量 x 使 xᵀ G x ≤ bound (G 正定)。 """
    n = len(gram)
    q = [[Fraction(gram[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    x = [0] * n

    def recurse(i: int, remaining: Fraction):
        center = -sum((q[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        radius = math.sqrt(max(float(remaining / q[i][i]), 0.0)) + 1e-9
        for xi in range(math.ceil(float(center) - radius), math.floor(float(center) + radius) + 1):
            t = q[i][i] * (xi - center) ** 2
            if t <= remaining:
                x[i] = xi
                if i == 0:
                    yield tuple(x)
                else:
                    yield from recurse(i - 1, remaining - t)
        x[i] = 0

    if n == 0:
        yield ()
        return
    yield from recurse(n - 1, Fraction(bound))


def trace_gram(n: int) -> list[list[int]]:
    """ 冪基底的跡形式 Gram 矩陣：G_jl = Tr(ζ^{j−l})。 """
    d = euler_phi(n)
    return [[ramanujan_sum(n, j - l) for l in range(d)] for j in range(d)]


@lru_cache(maxsize=None)
def _trace_discriminant(n: int) -> int:
    return abs(int(sp.Matrix(trace_gram(n)).det()))


def estimate_integral_elements(n: int, house_bound) -> int:
    """ 以跡形式橢球 Tr(α·ᾱ) ≤ φ(n)·B² 的體積估計 integral_elements(n, B) 的列舉量。 """
    k = euler_phi(n)
    radius_sq = k * float(house_bound) ** 2
    volume = math.pi ** (k / 2) / math.gamma(k / 2 + 1) * radius_sq ** (k / 2)
    return int(volume / math.sqrt(_trace_discriminant(n))) + 1


def integral_elements(n: int, house_bound) -> list[CycloNumber]:
    """
    Z[ζ_n] 中所有 house ≤ house_bound 的元素。

    house ≤ B 蘊含 Tr(α·ᾱ) ≤ φ(n)·B²，先以跡形式橢球列舉，再以保證的 house 判定過濾
    (indeterminate 者保留，讓下游自行精確判定)。
    """
    b = Fraction(house_bound)
    bound = euler_phi(n) * b * b
    out = []
    for vec in _fincke_pohst(trace_gram(n), bound):
        alpha = CycloNumber(n, tuple(Fraction(v) for v in vec))
        if house_at_most(alpha, b) != "fail":
            out.append(alpha)
    out.sort(key=lambda a: (house(a).value, a.coeffs))
    return out


def root_of_unity_sums(n: int, max_terms: int) -> list[CycloNumber]:
    """ 至多 max_terms 個階整除 n 的單位根之和 (含空和 0)，去除重複。 """
    roots = [CycloNumber.root(j, n) for j in range(n)]
    seen = {}
    for k in range(max_terms + 1):
        for combo in combinations_with_replacement(range(n), k):
            value = CycloNumber.zero(n)
            for j in combo:
                value = value + roots[j]
            seen.setdefault(value.coeffs, value)
    return list(seen.values())


# --- p 進範數 ---

@dataclass(frozen=True)
class PlaceNormBounds:
    """ max_w |α|_w 落在 [p^lower, p^upper]；未分歧時上下界相等。 """

    prime: int
    lower: Fraction
    upper: Fraction

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


def _valuation(q: Fraction, p: int) -> int:
    num, den, v = q.numerator, q.denominator, 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def ramification_index(n: int, p: int) -> int:
    a = 0
    while n % p == 0:
        n //= p
        a += 1
    return euler_phi(p ** a) if a else 1


def place_norm_bounds(alpha: CycloNumber, p: int) -> PlaceNormBounds | None:
    """
    p 上方各位 w 的 max_w |α|_w 之界 (以 p 的指數表示)，α = 0 時回傳 None。

    p ∤ n 時 Gauss 範數即為精確值；p | n 時分歧指數 e = φ(p^a)，只能保證
    下界 G·p^{-(e−1)/e}。
    """
    nonzero = [c for c in alpha.coeffs if c]
    if not nonzero:
        return None
    gauss = -min(_valuation(c, p) for c in nonzero)
    e = ramification_index(alpha.conductor, p)
    return PlaceNormBounds(p, Fraction(gauss) - Fraction(e - 1, e), Fraction(gauss))


# --- 開方 ---

def sqrt_prime(p: int) -> CycloNumber:
    """ 以 Gauss 和表示 √p。 """
    if p == 2:
        return CycloNumber.root(1, 8) + CycloNumber.root(7, 8)
    g = CycloNumber.zero(p)
    for a in range(1, p):
        g = g + CycloNumber.root(a, p) * int(sp.legendre_symbol(a, p))
    if p % 4 == 1:
        return g
    return -(CycloNumber.root(1, 4) * g)


def sqrt_rational(q: Fraction) -> CycloNumber:
    q = Fraction(q)
    if q == 0:
        return CycloNumber.zero()
    m = abs(q.numerator) * q.denominator
    square, free = 1, 1
    for prime, mult in sp.factorint(m).items():
        square *= prime ** (mult // 2)
        if mult % 2:
            free *= prime
    root = CycloNumber.rational(Fraction(square, q.denominator))
    for prime in sp.primefactors(free):
        root = root * sqrt_prime(int(prime))
    if q < 0:
        root = root * CycloNumber.root(1, 4)
    return root


def _rational_kth_root(q: Fraction, k: int) -> Fraction | None:
    if q < 0:
        return None
    num, exact_n = sp.integer_nthroot(q.numerator, k)
    den, exact_d = sp.integer_nthroot(q.denominator, k)
    if exact_n and exact_d:
        return Fraction(int(num), int(den))
    return None


def split_root_of_unity(alpha: CycloNumber) -> tuple[Fraction, Fraction] | None:
    """ 若 α = ρ·e^{2πi t}，ρ > 0 為有理數，回傳 (ρ, t)。 """
    if alpha.is_zero():
        return None
    n = alpha.conductor
    order = n if n % 2 == 0 else 2 * n
    lifted = alpha.lift(order) if order != n else alpha
    for j in range(order):
        beta = lifted * CycloNumber.root(-j, order)
        if beta.is_rational() and beta.coeffs[0] > 0:
            return beta.coeffs[0], Fraction(j, order)
    return None


def kth_root(value, k: int) -> CycloNumber | None:
    """
    分圓體中 value 的某個 k 次方根；只處理「有理數 × 單位根」的情形，
    其餘回傳 None (可能需要非阿貝爾擴張)。
    """
    alpha = CycloNumber.coerce(value)
    if k == 1:
        return alpha
    if alpha.is_zero():
        return CycloNumber.zero()
    split = split_root_of_unity(alpha)
    if split is None:
        return None
    rho, t = split
    if k == 2:
        modulus = sqrt_rational(rho)
    else:
        r = _rational_kth_root(rho, k)
        if r is None:
            return None
        modulus = CycloNumber.rational(r)
    t_root = t / k
    return modulus * CycloNumber.root(t_root.numerator, t_root.denominator)
