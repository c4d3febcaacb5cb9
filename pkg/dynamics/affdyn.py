"""
A^N 上的正則自映射 (有理係數)：正則性證書、各位的逃逸半徑、
Green 函數估計，以及分圓點的精確前週期判定。
"""
import logging
import math
import multiprocessing
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from multiprocessing import Pool

import sympy as sp

import config
from arith.cyclo import CycloNumber, house, house_at_most, place_norm_bounds, root_of_unity_sums
from arith.intlat import IntMatrix
from dynamics.polynomial import Polynomial, PolyMap, lift_point, point_key
from utils.errors import (
    DimensionMismatchError,
    InvalidCertificateError,
    NonRegularMapError,
    SingularMatrixError,
    ToridynError,
)

logger = logging.getLogger(__name__)

INF_PLACE = "inf"


def top_part(f: PolyMap) -> tuple[PolyMap, PolyMap]:
    return f.top_part()


def _homogeneous_monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    return sorted(out, reverse=True)


def _require_rational_endomorphism(f: PolyMap):
    if not f.is_endomorphism():
        raise DimensionMismatchError(f"map has {f.dim} components in {f.nvars} variables")
    if not f.is_rational():
        raise ToridynError("regular endomorphisms are handled over Q only")
    if any(c.is_laurent() for c in f.components):
        raise ToridynError("endomorphisms of affine space must be polynomial")


@dataclass(frozen=True, eq=False)
class RegularityCertificate:
    """ z_i^m = Σ_j R_ij · f_j^+，R_ij 為 m−d 次齊次多項式。 """

    m: int
    matrix: tuple

    def to_dict(self) -> dict:
        from utils.helpers import encode_polynomial
        return {"m": self.m, "R": [[encode_polynomial(p) for p in row] for row in self.matrix]}


def verify_certificate(f: PolyMap, cert: RegularityCertificate):
    f_h, _ = f.top_part()
    n = f.dim
    if len(cert.matrix) != n or any(len(row) != n for row in cert.matrix):
        raise InvalidCertificateError("certificate matrix has the wrong shape")
    for i, row in enumerate(cert.matrix):
        total = Polynomial(n, ())
        for r, fj in zip(row, f_h.components):
            total = total + r * fj
        target = Polynomial.monomial(tuple(cert.m if j == i else 0 for j in range(n)))
        if total != target:
            raise InvalidCertificateError(f"certificate identity fails for coordinate {i}")


def regularity_certificate(f: PolyMap) -> RegularityCertificate | None:
    """
    依 m = d, d+1, ..., N(d−1)+1 (Macaulay 界) 求解 z_i^m ∈ (f_1^+, ..., f_N^+)_m。
    回傳第一個解；全部無解代表 f_h 在原點以外有共同零點。
    """
    _require_rational_endomorphism(f)
    n, d = f.dim, f.degree
    if d < 2:
        raise ToridynError("regularity certificates need degree d >= 2")
    f_h, _ = f.top_part()
    for m in range(d, n * (d - 1) + 2):
        target_basis = _homogeneous_monomials(n, m)
        index = {e: k for k, e in enumerate(target_basis)}
        multipliers = _homogeneous_monomials(n, m - d)
        columns = []
        for j in range(n):
            for mu in multipliers:
                product = Polynomial.monomial(mu) * f_h.components[j]
                col = [sp.Integer(0)] * len(target_basis)
                for e, c in product.terms:
                    col[index[e]] = sp.Rational(c.numerator, c.denominator)
                columns.append(col)
        system = sp.Matrix(columns).T
        rows = []
        for i in range(n):
            rhs = sp.zeros(len(target_basis), 1)
            rhs[index[tuple(m if j == i else 0 for j in range(n))], 0] = 1
            try:
                sol, params = system.gauss_jordan_solve(rhs)
            except ValueError:
                break
            sol = sol.subs({p: 0 for p in params})
            row = []
            for j in range(n):
                chunk = sol[j * len(multipliers):(j + 1) * len(multipliers)]
                row.append(Polynomial.from_dict(
                    {mu: Fraction(int(c.p), int(c.q)) for mu, c in zip(multipliers, chunk)}, n
                ))
            rows.append(tuple(row))
        else:
            cert = RegularityCertificate(m, tuple(rows))
            verify_certificate(f, cert)
            logger.debug("Regularity certificate found at m=%d", m)
            return cert
    logger.info("No regularity certificate up to the Macaulay bound %d", n * (d - 1) + 1)
    return None


def _valuation(q: Fraction, p: int) -> int:
    num, den, v = q.numerator, q.denominator, 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _gauss_exponent(polys, p: int) -> Fraction | None:
    """ max |c|_p 的 p 指數；沒有非零係數時回傳 None。 """
    values = [-_valuation(c, p) for poly in polys for c in poly.coefficients()]
    return Fraction(max(values)) if values else None


def _denominator_primes(values) -> set[int]:
    primes = set()
    for q in values:
        primes.update(int(p) for p in sp.primefactors(Fraction(q).denominator))
    return primes


@dataclass(frozen=True)
class EscapeData:
    """
    有限位 v：A_v = p^{a_v}；|z|_v > A_v 時 |f(z)|_v > |z|_v。
    無窮位：‖z‖ > arch_radius 時 ‖f(z)‖ > ‖z‖。
    """

    degree: int
    exponents: dict = field(default_factory=dict)
    arch_radius: float = 1.0
    scale: int = 1
    b_norm: float = 1.0
    h_norm: float = 0.0
    top_norm: float = 1.0

    @property
    def bad_primes(self) -> tuple[int, ...]:
        return tuple(sorted(self.exponents))

    def exponent(self, p: int) -> Fraction:
        return self.exponents.get(p, Fraction(0))

    def to_dict(self) -> dict:
        from utils.helpers import format_float
        return {
            "bad_primes": [str(p) for p in self.bad_primes],
            "A_v": {str(p): format_float(float(p) ** float(a)) for p, a in self.exponents.items()},
            "log_p_A_v": {str(p): str(a) for p, a in self.exponents.items()},
            "arch_radius": format_float(self.arch_radius),
            "M": str(self.scale),
            "place_convention": "max_over_places",
        }


def escape_data(f: PolyMap, cert: RegularityCertificate) -> EscapeData:
    verify_certificate(f, cert)
    d = f.degree
    f_h, h = f.top_part()
    r_polys = [p for row in cert.matrix for p in row]
    candidates = _denominator_primes(c for p in r_polys + list(h.components) for c in p.coefficients())
    exponents = {}
    for p in sorted(candidates):
        b = _gauss_exponent(r_polys, p)
        hv = _gauss_exponent(h.components, p)
        options = [Fraction(0)]
        if b is not None:
            options.append(b / (d - 1))
            if hv is not None:
                options.append(b + hv)
        a = max(options)
        if a > 0:
            exponents[p] = a
    scale = 1
    for p, a in exponents.items():
        scale *= p ** math.ceil(a)

    b_norm = max(sum(r.l1_norm() for r in row) for row in cert.matrix)
    h_norm = max(c.l1_norm() for c in h.components)
    top_norm = max(c.l1_norm() for c in f_h.components)
    radius = max(1.0, b_norm * (h_norm + 1.0))
    logger.debug("Escape data: bad primes %s, M=%d, arch radius %.6f", sorted(exponents), scale, radius)
    return EscapeData(d, exponents, radius, scale, b_norm, h_norm, top_norm)


def _certificate_and_escape(f: PolyMap) -> EscapeData:
    cert = regularity_certificate(f)
    if cert is None:
        raise NonRegularMapError("map is not a regular endomorphism (f_h vanishes off the origin)")
    return escape_data(f, cert)


def _place_lower_exponent(point, p: int) -> Fraction | None:
    bounds = [place_norm_bounds(x, p) for x in point]
    lowers = [b.lower for b in bounds if b is not None]
    return max(lowers) if lowers else None


def _point_primes(point) -> set[int]:
    return _denominator_primes(c for x in point for c in x.coeffs)


def _house_lower(point) -> float:
    return max(house(x).lower for x in point)


def _escape_place(point, data: EscapeData, extra: dict | None = None, arch_floor: float = 0.0) -> str | None:
    """ 檢查各有限位與無窮位的逃逸條件，回傳第一個成立的位。 """
    extra = extra or {}
    primes = set(data.bad_primes) | _point_primes(point) | set(extra)
    for p in sorted(primes):
        low = _place_lower_exponent(point, p)
        if low is not None and low > max(data.exponent(p), extra.get(p, Fraction(0))):
            return str(p)
    if _house_lower(point) > max(data.arch_radius, arch_floor):
        return INF_PLACE
    return None


@dataclass(frozen=True)
class OrbitDecision:
    kind: str
    place: str | None = None
    tail: int | None = None
    period: int | None = None
    steps: int | None = None
    reason: str | None = None

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        for key in ("place", "tail", "period", "steps", "reason"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        return out


def is_preperiodic(f: PolyMap, z, data: EscapeData | None = None, budget: int | None = None) -> OrbitDecision:
    """
    分圓點 z 的前週期判定。每一步先檢查有限位 |f^k z|_v > A_v，再檢查無窮位
    house > arch_radius；兩者皆不成立時軌道落在有限集合中，以精確相等偵測循環。
    """
    data = data or _certificate_and_escape(f)
    budget = config.ITERATION_BUDGET if budget is None else budget
    if len(z) != f.dim:
        raise DimensionMismatchError(f"point has {len(z)} coordinates, map has {f.dim}")
    n, current = lift_point(z)
    seen = {}
    for step in range(budget + 1):
        place = _escape_place(current, data)
        if place is not None:
            return OrbitDecision("escapes", place=place, steps=step)
        key = point_key(current)
        if key in seen:
            tail = seen[key]
            return OrbitDecision("preperiodic", tail=tail, period=step - tail)
        seen[key] = step
        current = tuple(CycloNumber.coerce(v).lift(n) for v in f(current))
    logger.warning("Iteration budget %d exhausted without a decision", budget)
    return OrbitDecision("budget_exceeded", steps=budget)


def preperiodic_scan(f: PolyMap, candidates, workers: int = 1) -> list[OrbitDecision]:
    """ 對候選點逐一判定；結果順序與輸入一致。 """
    data = _certificate_and_escape(f)
    candidates = list(candidates)
    workers = workers if 0 < workers < multiprocessing.cpu_count() else multiprocessing.cpu_count()
    logger.info("--- Running preperiodicity scan over %d candidates ---", len(candidates))
    if workers == 1 or len(candidates) < 2:
        return [is_preperiodic(f, z, data) for z in candidates]
    with Pool(processes=workers) as pool:
        return pool.starmap(is_preperiodic, [(f, z, data) for z in candidates])


def root_sum_candidates(conductor_bound: int, max_terms: int, denom: int, house_bound) -> list[CycloNumber]:
    """
    (1/D)·(至多 max_terms 個單位根之和)，conductor ≤ conductor_bound、D ≤ denom、house ≤ house_bound。
    以真正的 conductor 去除重複，依 (conductor, 係數) 排序。
    """
    if conductor_bound < 1 or max_terms < 0 or denom < 1:
        raise ToridynError("candidate bounds must be positive")
    seen = {}
    for n in range(1, conductor_bound + 1):
        if n % 4 == 2:
            continue
        for s in root_of_unity_sums(n, max_terms):
            for m in range(1, denom + 1):
                value = (s / m).normalize()
                key = (value.conductor, value.coeffs)
                if key in seen or house_at_most(value, house_bound) == "fail":
                    continue
                seen[key] = value
    logger.debug("Generated %d cyclotomic candidates", len(seen))
    return [seen[k] for k in sorted(seen)]


@dataclass(frozen=True)
class GreenEstimate:
    value: float
    lower: float
    upper: float
    iterations: int
    escaped: bool

    def to_dict(self) -> dict:
        from utils.helpers import format_float
        return {
            "value": format_float(self.value),
            "lower": format_float(self.lower),
            "upper": format_float(self.upper),
            "error": format_float((self.upper - self.lower) / 2),
            "iterations": self.iterations,
            "escaped": self.escaped,
        }


def _sup_norm(values) -> float:
    return max(abs(v) for v in values)


def green_estimate(f: PolyMap, z, n_iters: int | None = None, data: EscapeData | None = None) -> GreenEstimate:
    """
    G(z) = lim d^{−n} log max(1, ‖f^n(z)‖)。

    軌道離開 arch_radius 球後，每步 log‖f(w)‖ − d·log‖w‖ 落在
    [−log(B(H+1)), log(F+H)]，由幾何級數得到尾項誤差；未離開時只給出 [0, 上界]。
    ‖w‖ ≥ 1 時 log‖f(w)‖ ≤ d·log‖w‖ + log(F+H)，此值超過 GREEN_LOG_CEILING 即停止迭代。
    """
    n_iters = config.GREEN_MAX_ITERS if n_iters is None else n_iters
    if n_iters > config.GREEN_MAX_ITERS:
        raise ToridynError(f"n_iters must be at most {config.GREEN_MAX_ITERS}")
    data = data or _certificate_and_escape(f)
    d = data.degree
    low_const = math.log(data.b_norm * (data.h_norm + 1.0)) / (d - 1)
    high_const = math.log(data.top_norm + data.h_norm) / (d - 1)
    step_growth = math.log(data.top_norm + data.h_norm)
    try:
        w = [x.embed(1)[0] if isinstance(x, CycloNumber) else complex(x) for x in z]
    except OverflowError as e:
        raise ToridynError("starting point is too large for double precision") from e
    k = 0
    while True:
        norm = _sup_norm(w)
        if not math.isfinite(norm):
            raise ToridynError("starting point is too large for double precision")
        log_norm = math.log(norm) if norm > 0 else -math.inf
        saturated = norm > 1.0 and d * log_norm + step_growth > config.GREEN_LOG_CEILING
        if norm > data.arch_radius and (saturated or k == n_iters):
            scale = float(d) ** (-k)
            est = scale * log_norm
            return GreenEstimate(est, max(0.0, est - scale * low_const), est + scale * high_const, k, True)
        if k == n_iters or saturated:
            break
        w = f.evaluate_numeric(w)
        k += 1
    scale = float(d) ** (-k)
    bound = scale * (math.log(max(1.0, norm)) + max(0.0, high_const))
    return GreenEstimate(bound / 2, 0.0, bound, k, False)


def backward_orbit_filter(f: PolyMap, x, z, budget: int | None = None,
                          data: EscapeData | None = None) -> OrbitDecision:
    """
    判定 z 是否在 x 的逆向軌道中 (某個 f^n(z) = x)。

    A_v(x) = max(A_v, |x|_v)：|f^k z|_v > A_v(x) 時之後的迭代在該位嚴格遞增，
    永遠不會等於 x。軌道進入循環而未經過 x 時同樣可以排除。
    """
    data = data or _certificate_and_escape(f)
    budget = config.BACKWARD_BUDGET if budget is None else budget
    if len(x) != f.dim or len(z) != f.dim:
        raise DimensionMismatchError("points must have as many coordinates as the map")
    target = tuple(Fraction(v) for v in x)
    extra = {}
    for p in _denominator_primes(target):
        extra[p] = max(Fraction(-_valuation(v, p)) for v in target if v)
    arch_floor = max(abs(float(v)) for v in target)
    n, current = lift_point(z)
    target_key = point_key(tuple(CycloNumber.rational(v).lift(n) for v in target))
    seen = set()
    for step in range(budget + 1):
        key = point_key(current)
        if key == target_key:
            return OrbitDecision("found", steps=step)
        place = _escape_place(current, data, extra, arch_floor)
        if place is not None:
            return OrbitDecision("excluded", place=place, steps=step)
        if key in seen:
            return OrbitDecision("not_found", reason="orbit_cycles", steps=step)
        seen.add(key)
        current = tuple(CycloNumber.coerce(v).lift(n) for v in f(current))
    return OrbitDecision("not_found", reason="budget_exceeded", steps=budget)


@dataclass(frozen=True)
class SemiconjugacyResult:
    holds: bool
    strong: bool

    def to_dict(self) -> dict:
        return {"holds": self.holds, "strong": self.strong}


def verify_semiconjugacy(f: PolyMap, times: int, phi: PolyMap, a: IntMatrix) -> SemiconjugacyResult:
    """ 精確比較 f^l ∘ φ 與 φ ∘ φ_A 兩組 Laurent 多項式。 """
    if times < 1:
        raise ToridynError("iterate count must be at least 1")
    if not f.is_endomorphism():
        raise DimensionMismatchError("f must be an endomorphism of affine space")
    if phi.dim != f.dim:
        raise DimensionMismatchError(f"phi lands in A^{phi.dim}, f acts on A^{f.dim}")
    n = a.require_square()
    if n != phi.nvars:
        raise DimensionMismatchError(f"matrix is {n}x{n} but phi has {phi.nvars} variables")
    if a.det() == 0:
        raise SingularMatrixError("verify_semiconjugacy requires det(A) != 0")
    lhs = f.iterate(times).compose(phi)
    rhs = PolyMap(tuple(c.monomial_substitute(a) for c in phi.components))
    holds = lhs == rhs
    logger.debug("Semiconjugacy check (l=%d): %s", times, holds)
    return SemiconjugacyResult(holds, n == f.dim)
