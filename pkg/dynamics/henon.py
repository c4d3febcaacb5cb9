"""
Hénon 型自同構：A² 上的標準形 f_i(x,y) = (p_i(x) − a_i y, b_i x) 之合成，
以及使用者提供的 (f, f⁻¹) 配對；包含過濾半徑與分圓週期點掃描。
"""
import json
import logging
import math
import multiprocessing
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm
from multiprocessing import Pool
from pathlib import Path

import numpy as np

import config
from arith.cyclo import CycloNumber, _units, estimate_integral_elements, house, integral_elements
from arith.intlat import IntMatrix
from dynamics.dyndeg import DegreeProfile, henon_profile, spectral_radius
from dynamics.polynomial import Polynomial, PolyMap, coeff_abs, coeff_min_abs, lift_point
from utils.errors import InconsistentDataError, ScanBudgetError, ToridynError

logger = logging.getLogger(__name__)


def _inverse_coeff(c):
    return c.inverse() if isinstance(c, CycloNumber) else Fraction(1) / Fraction(c)


@dataclass(frozen=True, eq=False)
class ElementaryFactor:
    """ f(x, y) = (p(x) − a·y, b·x)，deg p ≥ 2，a, b ≠ 0。 """

    poly: Polynomial
    a: object
    b: object

    def __post_init__(self):
        if self.poly.nvars != 1:
            raise ToridynError("elementary factor needs a univariate polynomial")
        if self.poly.degree < 2:
            raise ToridynError("elementary factor needs deg p >= 2")
        if self.a == 0 or self.b == 0:
            raise ToridynError("elementary factor needs a != 0 and b != 0")

    @property
    def degree(self) -> int:
        return self.poly.degree

    def forward_map(self) -> PolyMap:
        x, y = Polynomial.variable(0, 2), Polynomial.variable(1, 2)
        px = self.poly.compose([x])
        return PolyMap((px - y * self.a, x * self.b))

    def inverse_map(self) -> PolyMap:
        big_x, big_y = Polynomial.variable(0, 2), Polynomial.variable(1, 2)
        u = big_y * _inverse_coeff(self.b)
        return PolyMap((u, (self.poly.compose([u]) - big_x) * _inverse_coeff(self.a)))

    def apply(self, point):
        x, y = point
        return (self.poly.evaluate([x]) - self.a * y, self.b * x)

    def norm_data(self) -> tuple[float, float, float, float]:
        """ (L, |a|, |b|, |c|)：低次係數模長和、|a|、|b| 的上界與首項係數模長下界。 """
        k = self.degree
        lead = self.poly.coefficient((k,))
        lower = sum(coeff_abs(c) for e, c in self.poly.terms if e[0] < k)
        return lower, coeff_abs(self.a), coeff_abs(self.b), coeff_min_abs(lead)


@dataclass(frozen=True, eq=False)
class HenonMap:
    forward: PolyMap
    backward: PolyMap
    d: int
    d_minus: int
    p: int
    q: int
    factors: tuple = ()

    def __post_init__(self):
        n = self.forward.dim
        if not (self.forward.is_endomorphism() and self.backward.is_endomorphism()) or self.backward.dim != n:
            raise ToridynError("forward and backward maps must be endomorphisms of the same A^N")
        if self.d < 2:
            raise InconsistentDataError("inconsistent Hénon data: degree must be at least 2")
        if self.forward.degree != self.d or self.backward.degree != self.d_minus:
            raise InconsistentDataError(
                f"inconsistent Hénon data: map degrees ({self.forward.degree}, {self.backward.degree}) "
                f"do not match d={self.d}, d_minus={self.d_minus}"
            )
        if self.p + self.q != n or self.d ** self.q != self.d_minus ** self.p:
            raise InconsistentDataError(
                f"inconsistent Hénon data: p+q={self.p + self.q} (N={n}), "
                f"d^q={self.d ** self.q}, d_minus^p={self.d_minus ** self.p}"
            )
        identity = PolyMap.identity(n)
        if self.forward.compose(self.backward) != identity or self.backward.compose(self.forward) != identity:
            raise InconsistentDataError("forward and backward maps are not mutually inverse")

    @classmethod
    def from_pair(cls, forward: PolyMap, backward: PolyMap, p: int, q: int) -> "HenonMap":
        return cls(forward, backward, forward.degree, backward.degree, p, q)

    @property
    def dim(self) -> int:
        return self.forward.dim

    def inverse(self) -> "HenonMap":
        factors = tuple(_InverseFactor(f) for f in reversed(self.factors)) if self.factors else ()
        return HenonMap(self.backward, self.forward, self.d_minus, self.d, self.q, self.p, factors)

    def degree_profile(self) -> DegreeProfile:
        return henon_profile(self.dim, self.d, self.d_minus, self.p, self.q)

    def apply_factorwise(self, point):
        """ 依序套用各因子 (最右邊的因子先作用)；沒有因子時直接用 forward。 """
        if not self.factors:
            return self.forward(point)
        for factor in reversed(self.factors):
            point = factor.apply(point)
        return point

    def to_dict(self) -> dict:
        from utils.helpers import encode_polymap
        return {
            "forward": encode_polymap(self.forward),
            "backward": encode_polymap(self.backward),
            "d": self.d,
            "d_minus": self.d_minus,
            "p": self.p,
            "q": self.q,
        }


@dataclass(frozen=True, eq=False)
class _InverseFactor:
    factor: ElementaryFactor

    @property
    def degree(self) -> int:
        return self.factor.degree

    def norm_data(self):
        return self.factor.norm_data()

    def apply(self, point):
        big_x, big_y = point
        u = big_y * _inverse_coeff(self.factor.b)
        return (u, (self.factor.poly.evaluate([u]) - big_x) * _inverse_coeff(self.factor.a))


def compose_elementary(factors) -> HenonMap:
    """ f = f_1 ∘ ... ∘ f_m，f⁻¹ = f_m⁻¹ ∘ ... ∘ f_1⁻¹，d = Π deg p_i。 """
    factors = tuple(factors)
    if not factors:
        raise ToridynError("compose_elementary needs at least one factor")
    forward = PolyMap.identity(2)
    backward = PolyMap.identity(2)
    for factor in reversed(factors):
        forward = factor.forward_map().compose(forward)
    for factor in factors:
        backward = factor.inverse_map().compose(backward)
    d = math.prod(f.degree for f in factors)
    logger.debug("Composed %d elementary factors, degree %d", len(factors), d)
    return HenonMap(forward, backward, d, d, 1, 1, factors)


def filtration_radius(h: HenonMap) -> float:
    """
    R 使 max(|x|, |y|) > R 時前向或逆向軌道嚴格逃逸 (所有複數嵌入皆成立)。

    V⁺ = {|x| > R, |x| ≥ |y|} 與 V⁻ = {|y| > R, |y| ≥ |x|} 分別被每個因子及其逆
    映入自身，且 |x| (或 |y|) 嚴格遞增。
    """
    if h.dim != 2 or not h.factors:
        raise ToridynError("filtration_radius needs an A^2 map built from elementary factors")
    radius = 1.0
    for factor in h.factors:
        low, a, b, c = factor.norm_data()
        if c <= 0:
            raise ToridynError("leading coefficient has a vanishing embedding bound")
        forward_r = (low + a + max(1.0, b)) / c
        backward_r = max(b, b * (low + b + a * max(b, 1.0)) / c)
        radius = max(radius, forward_r, backward_r)
    return radius


def scan_radius(h: HenonMap) -> float | None:
    """ 標準形因子合成的 A² 映射才有過濾半徑；(f, f⁻¹) 配對回傳 None，只以 house 界剪枝。 """
    if h.dim != 2 or not h.factors:
        return None
    return filtration_radius(h)


def _point_house(point) -> float:
    return max(house(CycloNumber.coerce(x)).lower for x in point)


def is_periodic(h: HenonMap, z, n_max: int, radius: float | None = None) -> int | None:
    """
    最小的 n ≤ n_max 使 f^n(z) = z。給定 radius 時，迭代點的 house 超過 radius
    即提前結束 (週期點的整條軌道都在過濾盒內)。
    """
    start = tuple(CycloNumber.coerce(x) for x in z)
    current = start
    for n in range(1, n_max + 1):
        current = h.forward(current)
        if all(a == b for a, b in zip(current, start)):
            return n
        if radius is not None and _point_house(current) > radius:
            return None
    return None


@dataclass(frozen=True)
class ScanHit:
    point: tuple
    period: int
    conductor: int
    house: float

    def sort_key(self):
        return (self.conductor, self.house, tuple(c.coeffs for c in self.point))

    def to_dict(self) -> dict:
        from utils.helpers import encode_cyclo, format_float
        return {
            "point": [encode_cyclo(c.normalize()) for c in self.point],
            "period": self.period,
            "conductor": self.conductor,
            "house": format_float(self.house),
        }


def _conductor_classes(bound: int) -> list[int]:
    return [n for n in range(1, bound + 1) if n % 4 != 2]


def _coefficient_conductor(h: HenonMap) -> int:
    cs = [c.conductor for c in h.forward.coefficients() if isinstance(c, CycloNumber)]
    return lcm(1, *cs)


def estimate_candidates(conductor_bound: int, coord_bound: float, denom: int, dim: int = 2) -> int:
    """ 以跡形式橢球體積估計每個 conductor 類別的元素數，候選點數為其 dim 次方之和。 """
    return sum(estimate_integral_elements(n, denom * coord_bound) ** dim
               for n in _conductor_classes(conductor_bound))


def _true_conductor(alpha: CycloNumber) -> int:
    return alpha.normalize().conductor


def _scan_class(h: HenonMap, n: int, house_bound, denom: int, period_bound: int,
                radius: float | None) -> list[ScanHit]:
    """ 單一 conductor 類別：列舉、數值預篩 (僅在有過濾半徑時)、精確驗證。 """
    coord_bound = Fraction(house_bound) if radius is None else min(Fraction(house_bound), Fraction(radius))
    elements = [a / denom if denom != 1 else a for a in integral_elements(n, coord_bound * denom)]
    conductors = [_true_conductor(e) for e in elements]
    tuples = [idx for idx in product(range(len(elements)), repeat=h.dim)
              if lcm(*(conductors[i] for i in idx)) == n]
    if not tuples:
        return []

    alive = np.ones(len(tuples), dtype=bool)
    if radius is not None:
        big = lcm(n, _coefficient_conductor(h))
        columns = np.array(tuples).T
        limit = radius * (1 + config.SCAN_NUMERIC_MARGIN) + config.SCAN_NUMERIC_MARGIN
        for k in _units(big):
            emb = np.array([e.lift(big).embed(k)[0] for e in elements], dtype=complex)
            live = np.flatnonzero(alive)
            coords = [emb[col[live]] for col in columns]
            with np.errstate(over="ignore", invalid="ignore"):
                for _ in range(period_bound):
                    coords = h.forward.evaluate_numeric(coords, k)
                    ok = np.logical_and.reduce([np.abs(c) <= limit for c in coords])
                    alive[live[~ok]] = False
                    live = live[ok]
                    coords = [c[ok] for c in coords]
                    if not len(live):
                        break
    survivors = np.flatnonzero(alive)
    logger.info("Conductor %d: %d candidates, %d survive numeric filtering", n, len(tuples), len(survivors))

    hits = []
    for s in survivors:
        _, point = lift_point(tuple(elements[i] for i in tuples[s]))
        period = is_periodic(h, point, period_bound, radius)
        if period is None:
            continue
        if not _replay(h, point, period):
            raise ToridynError(f"scan hit {point} failed independent re-evaluation")
        hits.append(ScanHit(point, period, n, max(house(c).value for c in point)))
    return hits


def _replay(h: HenonMap, point, period: int) -> bool:
    current = point
    for _ in range(period):
        current = h.apply_factorwise(current)
    return all(a == b for a, b in zip(current, point))


def _load_checkpoint(path: Path, params: dict):
    if not path.exists():
        return set(), []
    with open(path, "r", encoding="utf-8") as fh:
        state = json.load(fh)
    if state.get("params") != params:
        logger.warning("Checkpoint %s was written with different parameters, ignoring it", path)
        return set(), []
    from utils.helpers import decode_cyclo
    hits = [ScanHit(tuple(decode_cyclo(c) for c in row["point"]), row["period"], row["conductor"], row["house"])
            for row in state.get("hits", [])]
    return set(state.get("completed", [])), hits


def _save_checkpoint(path: Path, params: dict, completed: set, hits: list[ScanHit]):
    from utils.helpers import encode_cyclo, ensure_dir_exists
    ensure_dir_exists(path.parent)
    state = {
        "params": params,
        "completed": sorted(completed),
        "hits": [{"point": [encode_cyclo(c) for c in hit.point], "period": hit.period,
                  "conductor": hit.conductor, "house": hit.house} for hit in hits],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(state, fh, sort_keys=True)


def cyclo_periodic_scan(h: HenonMap, conductor_bound: int | None = None, house_bound=None,
                        denom: int | None = None, n_max: int | None = None, workers: int = 1,
                        checkpoint: str | Path | None = None) -> list[ScanHit]:
    """
    列舉座標為 (1/M)·(Z[ζ_n] 中 house ≤ 界的元素) 的點 (n ≤ conductor_bound)，
    回傳所有週期 ≤ n_max 的週期點。先以過濾半徑縮小座標界並估計成本。
    """
    conductor_bound = config.SCAN_CONDUCTOR_BOUND if conductor_bound is None else conductor_bound
    house_bound = Fraction(config.SCAN_HOUSE_BOUND if house_bound is None else house_bound)
    denom = config.SCAN_DENOM if denom is None else denom
    n_max = config.SCAN_PERIOD_BOUND if n_max is None else n_max
    if conductor_bound < 1 or denom < 1 or n_max < 1 or house_bound < 0:
        raise ToridynError("scan bounds must be positive")
    if conductor_bound > config.SCAN_MAX_CONDUCTOR or denom > config.SCAN_MAX_DENOM or n_max > config.SCAN_MAX_PERIOD:
        raise ScanBudgetError(
            f"scan bounds exceed desk scale (conductor <= {config.SCAN_MAX_CONDUCTOR}, "
            f"M <= {config.SCAN_MAX_DENOM}, period <= {config.SCAN_MAX_PERIOD})"
        )
    radius = scan_radius(h)
    coord_bound = float(house_bound) if radius is None else min(float(house_bound), radius)
    estimate = estimate_candidates(conductor_bound, coord_bound, denom, h.dim)
    if estimate > config.SCAN_MAX_CANDIDATES:
        raise ScanBudgetError(f"estimated {estimate} candidates exceeds limit {config.SCAN_MAX_CANDIDATES}")
    logger.info("--- Running Hénon periodic scan (radius %s, ~%d candidates) ---",
                "none" if radius is None else f"{radius:.4f}", estimate)

    params = {"map": h.to_dict(), "conductor_bound": conductor_bound, "house_bound": str(house_bound),
              "denom": denom, "n_max": n_max}
    path = Path(checkpoint) if checkpoint else None
    completed, hits = _load_checkpoint(path, params) if path else (set(), [])
    pending = [n for n in _conductor_classes(conductor_bound) if n not in completed]
    workers = workers if 0 < workers < multiprocessing.cpu_count() else multiprocessing.cpu_count()

    start_time = time.time()
    for offset in range(0, len(pending), workers):
        chunk = pending[offset:offset + workers]
        args = [(h, n, house_bound, denom, n_max, radius) for n in chunk]
        if workers == 1:
            results = [_scan_class(*a) for a in args]
        else:
            with Pool(processes=workers) as pool:
                results = pool.starmap(_scan_class, args)
        for n, found in zip(chunk, results):
            hits.extend(found)
            completed.add(n)
        if path:
            _save_checkpoint(path, params, completed, hits)
    hits.sort(key=ScanHit.sort_key)
    logger.info("Hénon scan found %d periodic points in %.2fs", len(hits), time.time() - start_time)
    return hits


def unit_obstruction(a: IntMatrix, claimed_d: int) -> bool:
    """
    |det A| = 1 且譜半徑 = d ≥ 2 的矛盾組態：d² 會是代數單位。回傳 True 表示出現矛盾。
    """
    a.require_square()
    if claimed_d < 2 or abs(a.det()) != 1:
        return False
    rho, exact = spectral_radius(a)
    if exact is not None:
        return exact == claimed_d
    return abs(rho - claimed_d) <= config.NUMERIC_TOL * claimed_d
