"""
稀疏多變數 (Laurent) 多項式與多項式映射。

係數可以是 Fraction 或 CycloNumber；所有運算皆為精確運算。
"""
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from arith.cyclo import CycloNumber, _units, house
from arith.intlat import IntMatrix
from utils.errors import DimensionMismatchError, ToridynError


def _normalize_coeff(c):
    if isinstance(c, CycloNumber):
        return c.coeffs[0] if c.is_rational() and c.conductor == 1 else c
    return Fraction(c)


def lift_point(point) -> tuple[int, tuple[CycloNumber, ...]]:
    """ 將點的各座標提升到共同的 conductor。 """
    coords = [CycloNumber.coerce(x) for x in point]
    n = lcm(1, *(c.conductor for c in coords))
    return n, tuple(c.lift(n) for c in coords)


def point_key(point) -> tuple:
    """ 同一 conductor 下的點以係數 tuple 作為精確鍵值。 """
    return tuple(c.coeffs for c in point)


def coeff_abs(c) -> float:
    """ 係數在所有嵌入下的最大模長 (有理數即絕對值)。 """
    if isinstance(c, CycloNumber):
        return house(c).upper
    return abs(float(c))


def coeff_min_abs(c) -> float:
    """ 係數在所有嵌入下的最小模長之下界。 """
    if isinstance(c, CycloNumber):
        low = min(abs(c.embed(k)[0]) - c.embed(k)[1] for k in _units(c.conductor))
        return max(low, 0.0)
    return abs(float(c))


@dataclass(frozen=True, eq=False)
class Polynomial:
    nvars: int
    terms: tuple

    @classmethod
    def from_dict(cls, mapping, nvars: int) -> "Polynomial":
        acc = {}
        for exps, c in mapping.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise DimensionMismatchError(f"monomial {exps} does not have {nvars} exponents")
            acc[exps] = acc[exps] + c if exps in acc else c
        items = tuple(sorted((e, _normalize_coeff(c)) for e, c in acc.items() if c != 0))
        return cls(nvars, items)

    @classmethod
    def constant(cls, c, nvars: int) -> "Polynomial":
        return cls.from_dict({(0,) * nvars: c}, nvars)

    @classmethod
    def variable(cls, i: int, nvars: int) -> "Polynomial":
        return cls.from_dict({tuple(int(j == i) for j in range(nvars)): Fraction(1)}, nvars)

    @classmethod
    def monomial(cls, exps, c=Fraction(1)) -> "Polynomial":
        return cls.from_dict({tuple(exps): c}, len(exps))

    @classmethod
    def univariate(cls, coeffs_by_degree: dict) -> "Polynomial":
        return cls.from_dict({(int(k),): v for k, v in coeffs_by_degree.items()}, 1)

    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """ 總次數；零多項式回傳 -1。 """
        return max((sum(e) for e, _ in self.terms), default=-1)

    def is_laurent(self) -> bool:
        return any(x < 0 for e, _ in self.terms for x in e)

    def homogeneous_part(self, k: int) -> "Polynomial":
        return Polynomial(self.nvars, tuple((e, c) for e, c in self.terms if sum(e) == k))

    def coefficient(self, exps):
        return self.as_dict().get(tuple(exps), Fraction(0))

    def coefficients(self):
        return [c for _, c in self.terms]

    def l1_norm(self) -> float:
        return sum(coeff_abs(c) for _, c in self.terms)

    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise DimensionMismatchError(f"polynomials in {self.nvars} and {other.nvars} variables")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.nvars)
        self._check(other)
        acc = self.as_dict()
        for e, c in other.terms:
            acc[e] = acc[e] + c if e in acc else c
        return Polynomial.from_dict(acc, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other, self.nvars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            if other == 0:
                return Polynomial(self.nvars, ())
            return Polynomial.from_dict({e: c * other for e, c in self.terms}, self.nvars)
        self._check(other)
        acc = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                acc[e] = acc[e] + prod if e in acc else prod
        return Polynomial.from_dict(acc, self.nvars)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, Polynomial):
            raise ToridynError("polynomial division is not supported")
        inv = Fraction(1) / scalar if not isinstance(scalar, CycloNumber) else scalar.inverse()
        return self * inv

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ToridynError("only monomials can be raised to negative powers")
            (e, c), = self.terms
            c_pow = (CycloNumber.coerce(c) ** k) if isinstance(c, CycloNumber) else Fraction(c) ** k
            return Polynomial.from_dict({tuple(x * k for x in e): c_pow}, self.nvars)
        result = Polynomial.constant(Fraction(1), self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if self.is_zero():
                return other == 0
            return len(self.terms) == 1 and not any(self.terms[0][0]) and self.terms[0][1] == other
        return self.nvars == other.nvars and self.as_dict() == other.as_dict()

    __hash__ = None

    def evaluate(self, point):
        """ 在點 (Fraction / CycloNumber 的序列) 上精確求值。 """
        if len(point) != self.nvars:
            raise DimensionMismatchError(f"point has {len(point)} coordinates, expected {self.nvars}")
        cache = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                x = point[i]
                if k < 0:
                    x = (Fraction(1) / x) if not isinstance(x, CycloNumber) else x.inverse()
                    k = -k
                cache[key] = x ** k
            return cache[key]

        total = Fraction(0)
        for e, c in self.terms:
            term = c
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            total = total + term
        return total

    def evaluate_numeric(self, point, k: int = 1) -> complex:
        """ 以浮點複數在 σ_k 嵌入下求值。 """
        total = 0j
        for e, c in self.terms:
            coeff = c.embed(k)[0] if isinstance(c, CycloNumber) else float(c)
            term = complex(coeff)
            for i, d in enumerate(e):
                if d:
                    term *= point[i] ** d
            total += term
        return total

    def compose(self, subs) -> "Polynomial":
        """ 以 subs[i] 取代第 i 個變數 (subs 為同變數數的多項式)。 """
        if len(subs) != self.nvars:
            raise DimensionMismatchError(f"need {self.nvars} substitutions, got {len(subs)}")
        m = subs[0].nvars if subs else 0
        cache = {}

        def power(i, k):
            if (i, k) not in cache:
                cache[(i, k)] = subs[i] ** k
            return cache[(i, k)]

        total = Polynomial(m, ())
        for e, c in self.terms:
            term = Polynomial.constant(c, m)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            total = total + term
        return total

    def monomial_substitute(self, a: IntMatrix) -> "Polynomial":
        """ u ↦ φ_A(u)：單項式 u^e 變為 u^{e·A}。 """
        if a.nrows != self.nvars:
            raise DimensionMismatchError("matrix size does not match number of variables")
        return Polynomial.from_dict({a.left_apply(e): c for e, c in self.terms}, a.ncols)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{e}" for e, c in self.terms)


@dataclass(frozen=True, eq=False)
class PolyMap:
    """ (f_1, ..., f_N)：A^N 的自映射，或 G_m^n → A^N 的 Laurent 映射。 """

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ToridynError("a polynomial map needs at least one component")
        nv = comps[0].nvars
        if any(c.nvars != nv for c in comps):
            raise DimensionMismatchError("components use different numbers of variables")
        object.__setattr__(self, "components", comps)

    @classmethod
    def identity(cls, n: int) -> "PolyMap":
        return cls(tuple(Polynomial.variable(i, n) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.components)

    @property
    def nvars(self) -> int:
        return self.components[0].nvars

    @property
    def degree(self) -> int:
        return max(c.degree for c in self.components)

    def is_endomorphism(self) -> bool:
        return self.dim == self.nvars

    def __call__(self, point):
        return tuple(c.evaluate(point) for c in self.components)

    def evaluate_numeric(self, point, k: int = 1):
        return [c.evaluate_numeric(point, k) for c in self.components]

    def compose(self, inner: "PolyMap") -> "PolyMap":
        """ self ∘ inner。 """
        return PolyMap(tuple(c.compose(inner.components) for c in self.components))

    def iterate(self, times: int) -> "PolyMap":
        if times < 0:
            raise ToridynError("iterate count must be non-negative")
        result = PolyMap.identity(self.nvars)
        for _ in range(times):
            result = self.compose(result)
        return result

    def top_part(self) -> tuple["PolyMap", "PolyMap"]:
        """ f = f_h + h：f_h 為 d 次齊次部分，h 為低次部分。 """
        d = self.degree
        if d < 1:
            raise ToridynError("top_part requires a nonconstant map")
        high = tuple(c.homogeneous_part(d) for c in self.components)
        low = tuple(c - h for c, h in zip(self.components, high))
        return PolyMap(high), PolyMap(low)

    def coefficients(self):
        return [c for comp in self.components for c in comp.coefficients()]

    def is_rational(self) -> bool:
        return all(not isinstance(c, CycloNumber) for c in self.coefficients())

    def __eq__(self, other):
        if not isinstance(other, PolyMap):
            return NotImplemented
        return self.dim == other.dim and all(a == b for a, b in zip(self.components, other.components))

    __hash__ = None
