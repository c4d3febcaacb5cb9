"""
動力度數剖面 (λ_0, ..., λ_d) 與上同調雙曲性。

支援三類具封閉公式的映射：單項映射、A^N 的正則自映射、Hénon 型自同構。
"""
import logging
from dataclasses import dataclass
from math import comb

import numpy as np
import sympy as sp

import config
from arith.intlat import IntMatrix, charpoly, cyclotomic_split, exterior_power
from utils.errors import InconsistentDataError, SingularMatrixError, ToridynError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Hyperbolicity:
    """ status 為 "yes" / "no" / "indeterminate"；index 僅在 "yes" 時設定。 """

    status: str
    index: int | None = None

    def __bool__(self) -> bool:
        return self.status == "yes"


@dataclass(frozen=True)
class DegreeProfile:
    lambdas: tuple[float, ...]
    exact: tuple[int | None, ...]

    def __post_init__(self):
        lambdas = tuple(float(x) for x in self.lambdas)
        exact = tuple(self.exact) if self.exact else (None,) * len(lambdas)
        if len(exact) != len(lambdas):
            raise ToridynError("exactness flags must match the number of degrees")
        if not lambdas or exact[0] != 1:
            raise ToridynError("a degree profile starts with lambda_0 = 1")
        if any(x <= 0 for x in lambdas):
            raise ToridynError("dynamical degrees must be positive")
        for i in range(1, len(lambdas) - 1):
            if lambdas[i - 1] * lambdas[i + 1] > lambdas[i] ** 2 * (1 + config.NUMERIC_TOL):
                raise ToridynError(f"degree profile is not log-concave at index {i}")
        object.__setattr__(self, "lambdas", lambdas)
        object.__setattr__(self, "exact", exact)

    @classmethod
    def from_integers(cls, values) -> "DegreeProfile":
        values = tuple(int(v) for v in values)
        return cls(tuple(float(v) for v in values), values)

    @property
    def dim(self) -> int:
        return len(self.lambdas) - 1

    @property
    def mus(self) -> tuple[float, ...]:
        """ μ_i = λ_i / λ_{i−1}，i = 1..d，並補上 μ_{d+1} = 0。 """
        ratios = tuple(self.lambdas[i] / self.lambdas[i - 1] for i in range(1, len(self.lambdas)))
        return ratios + (0.0,)

    @property
    def hyperbolic_index(self) -> int | None:
        return is_cohomologically_hyperbolic(self).index

    def to_dict(self) -> dict:
        from utils.helpers import format_float
        hyp = is_cohomologically_hyperbolic(self)
        return {
            "lambdas": [str(e) if e is not None else format_float(x) for x, e in zip(self.lambdas, self.exact)],
            "exact": [e is not None for e in self.exact],
            "mus": [format_float(m) for m in self.mus],
            "hyperbolic": hyp.status,
            "hyperbolic_index": hyp.index,
        }


def _compare_to_previous(profile: DegreeProfile, i: int) -> int | None:
    """ λ_i 與 λ_{i−1} 的比較：1 / 0 / −1，數值上無法分辨時回傳 None。 """
    a, b = profile.exact[i - 1], profile.exact[i]
    if a is not None and b is not None:
        return (b > a) - (b < a)
    x, y = profile.lambdas[i - 1], profile.lambdas[i]
    if abs(y - x) <= config.NUMERIC_TOL * max(x, y):
        return None
    return 1 if y > x else -1


def is_cohomologically_hyperbolic(profile: DegreeProfile) -> Hyperbolicity:
    """
    所有 μ_i ≠ 1 時 λ 有唯一最大值，回傳其指標。μ_{d+1} = 0 恆不為 1，
    因此只需檢查 i = 1..d。
    """
    signs = [_compare_to_previous(profile, i) for i in range(1, profile.dim + 1)]
    if 0 in signs:
        return Hyperbolicity("no")
    if None in signs:
        return Hyperbolicity("indeterminate")
    return Hyperbolicity("yes", sum(1 for s in signs if s > 0))


def spectral_radius(m: IntMatrix) -> tuple[float, int | None]:
    """
    整數方陣的譜半徑：以特徵多項式的無平方部分求根 (單根、條件良好)，
    並夾在 Gelfand 上界 ‖M^k‖_∞^{1/k} 與下界 max(|det M|^{1/n}, (|Tr M^k|/n)^{1/k}) 之間檢查。
    若譜半徑為整數且 ±k 為特徵值則同時回傳 k。
    """
    poly = charpoly(m).to_sympy()
    sqf = sp.Poly(sp.sqf_part(poly.as_expr()), poly.gens[0])
    coeffs = [float(c) for c in sqf.all_coeffs()]
    roots = np.roots(coeffs) if len(coeffs) > 1 else np.array([0.0])
    rho = float(np.max(np.abs(roots)))

    k = 8
    power = m.power(k)
    row_norm = max(sum(abs(x) for x in row) for row in power.rows)
    gelfand = float(row_norm) ** (1.0 / k)
    if rho > gelfand * (1 + config.RELATIVE_TOL):
        raise ToridynError(f"spectral radius {rho} exceeds certified bound {gelfand}")
    n = m.nrows
    trace = abs(sum(power.rows[i][i] for i in range(n)))
    lower = max(float(abs(m.det())) ** (1.0 / n), (trace / n) ** (1.0 / k))
    if rho < lower * (1 - config.RELATIVE_TOL):
        raise ToridynError(f"spectral radius {rho} is below certified bound {lower}")

    nearest = int(round(rho))
    if nearest >= 1 and abs(rho - nearest) <= config.RELATIVE_TOL * nearest:
        if sqf.eval(nearest) == 0 or sqf.eval(-nearest) == 0:
            return float(nearest), nearest
    return rho, None


def monomial_degree_profile(a: IntMatrix) -> DegreeProfile:
    """ λ_i(φ_A) = ∧^i A 的譜半徑 = 前 i 大特徵值模長之積；λ_n = |det A|。 """
    n = a.require_square()
    det = a.det()
    if det == 0:
        raise SingularMatrixError("monomial_degree_profile requires det(A) != 0")
    _, p_rest = cyclotomic_split(charpoly(a))
    if p_rest.is_constant():
        # 所有特徵值皆為單位根
        return DegreeProfile.from_integers([1] * (n + 1))

    lambdas, exact = [1.0], [1]
    for i in range(1, n):
        if comb(n, i) > config.DIM_CAP * 2:
            logger.warning("Exterior power %d of a %dx%d matrix has size %d", i, n, n, comb(n, i))
        rho, k = spectral_radius(exterior_power(a, i))
        lambdas.append(rho)
        exact.append(k)
    lambdas.append(float(abs(det)))
    exact.append(abs(det))
    logger.debug("Monomial degree profile: %s", lambdas)
    return DegreeProfile(tuple(lambdas), tuple(exact))


def regular_profile(n: int, d: int) -> DegreeProfile:
    """ 正則自映射：λ_i = d^i。 """
    if n < 1:
        raise ToridynError("dimension must be at least 1")
    if d <= 1:
        raise ToridynError("regular_profile requires algebraic degree d >= 2")
    return DegreeProfile.from_integers([d ** i for i in range(n + 1)])


def henon_profile(n: int, d: int, d_minus: int, p: int, q: int) -> DegreeProfile:
    """ Hénon 型：λ_i = d^i (i ≤ q)，λ_j = d_-^{N−j} (j ≥ q)。 """
    if d < 2 or d_minus < 2 or p < 1 or q < 1:
        raise InconsistentDataError("inconsistent Hénon data: need d, d_minus >= 2 and p, q >= 1")
    if p + q != n or d ** q != d_minus ** p:
        raise InconsistentDataError(
            f"inconsistent Hénon data: p+q={p + q} (N={n}), d^q={d ** q}, d_minus^p={d_minus ** p}"
        )
    values = [d ** i for i in range(q + 1)] + [d_minus ** (n - j) for j in range(q + 1, n + 1)]
    return DegreeProfile.from_integers(values)


def profile_of_iterate(profile: DegreeProfile, times: int) -> DegreeProfile:
    """ λ_i(f^l) = λ_i(f)^l。 """
    if times < 1:
        raise ToridynError("iterate count must be positive")
    return DegreeProfile(
        tuple(x ** times for x in profile.lambdas),
        tuple(e ** times if e is not None else None for e in profile.exact),
    )
