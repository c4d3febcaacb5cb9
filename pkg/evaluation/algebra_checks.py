"""
代數部分的驗收檢查：單項映射的動力度數、週期點個數、分解、Loxton 分解。
"""
import logging
from itertools import combinations_with_replacement
from math import lcm

import numpy as np

from arith.cyclo import CycloNumber, integral_elements, loxton_decompose
from arith.intlat import IntMatrix, charpoly, cyclotomic_split, decompose, is_positive
from arith.torus import apply_monomial, fixed_points
from dynamics.dyndeg import monomial_degree_profile
from utils.errors import ToridynError
from .base_check import BaseCheck

logger = logging.getLogger(__name__)

# 有限階整數矩陣，用來產生帶有分圓特徵值的樣本
FINITE_ORDER_BLOCKS = [
    IntMatrix.from_rows([[1]]),
    IntMatrix.from_rows([[-1]]),
    IntMatrix.from_rows([[0, -1], [1, 0]]),
    IntMatrix.from_rows([[0, -1], [1, -1]]),
    IntMatrix.from_rows([[0, -1], [1, 1]]),
]


def random_nonsingular(rng, max_dim: int, entry_bound: int) -> IntMatrix:
    while True:
        n = int(rng.integers(1, max_dim + 1))
        a = IntMatrix.from_rows(rng.integers(-entry_bound, entry_bound + 1, size=(n, n)).tolist(), n)
        if a.det() != 0:
            return a


def random_unimodular(rng, n: int, steps: int = 6) -> tuple[IntMatrix, IntMatrix]:
    """ 基本列運算的乘積 U 與其反矩陣。 """
    u, u_inv = IntMatrix.identity(n), IntMatrix.identity(n)
    if n == 1:
        return u, u_inv
    for _ in range(steps):
        i, j = (int(x) for x in rng.choice(n, size=2, replace=False))
        k = int(rng.choice([-1, 1]))
        rows = [[int(r == c) for c in range(n)] for r in range(n)]
        rows[i][j] = k
        e = IntMatrix.from_rows(rows, n)
        rows[i][j] = -k
        e_inv = IntMatrix.from_rows(rows, n)
        u, u_inv = u @ e, e_inv @ u_inv
    return u, u_inv


class MonomialDegreesCheck(BaseCheck):
    """ λ_n = |det A|、λ_i(A²) = λ_i(A)²，對數凹性由 DegreeProfile 建構時檢查。 """

    name = "monomial_degrees"

    def run(self, context: dict) -> tuple[bool, dict]:
        tol = self.config.RELATIVE_TOL
        failures = []
        for k in range(self.params["samples"]):
            a = random_nonsingular(self.rng, self.params["max_dim"], self.params["entry_bound"])
            try:
                prof = monomial_degree_profile(a)
                prof2 = monomial_degree_profile(a.power(2))
            except ToridynError as e:
                failures.append({"sample": k, "matrix": a.to_list(), "error": str(e)})
                continue
            if prof.exact[-1] != abs(a.det()):
                failures.append({"sample": k, "matrix": a.to_list(), "error": "lambda_n != |det A|"})
                continue
            for x, y in zip(prof.lambdas, prof2.lambdas):
                if abs(y - x * x) > tol * max(1.0, x * x):
                    failures.append({"sample": k, "matrix": a.to_list(), "error": "iterate identity failed"})
                    break
        return not failures, {"samples": self.params["samples"], "failures": failures[:10]}


class FixedPointCountsCheck(BaseCheck):
    """ |det(A^p − I)| 與窮舉 (A^p − I)k ≡ 0 (mod c) 的解數比較。 """

    name = "fixed_point_counts"

    @staticmethod
    def _brute_force(m: IntMatrix, c: int) -> int:
        n = m.nrows
        arr = np.array(m.to_list(), dtype=np.int64)
        rest = np.indices((c,) * (n - 1)).reshape(n - 1, -1) if n > 1 else np.zeros((0, 1), dtype=np.int64)
        total = 0
        for first in range(c):
            vecs = np.vstack([np.full((1, rest.shape[1]), first), rest])
            total += int(np.all((arr @ vecs) % c == 0, axis=0).sum())
        return total

    def run(self, context: dict) -> tuple[bool, dict]:
        checked, failures = 0, []
        attempts = 0
        while checked < self.params["samples"] and attempts < 50 * self.params["samples"]:
            attempts += 1
            a = random_nonsingular(self.rng, self.params["max_dim"], 2)
            if not is_positive(a):
                continue
            n = a.nrows
            for period in range(1, self.params["max_period"] + 1):
                m = a.power(period) - IntMatrix.identity(n)
                count = abs(m.det())
                if count == 0 or count > self.params["max_count"]:
                    continue
                got, points = fixed_points(a, period)
                brute = self._brute_force(m, count)
                ap = a.power(period)
                ok = got == count == brute == len(set(points)) and all(apply_monomial(ap, x) == x for x in points)
                if not ok:
                    failures.append({"matrix": a.to_list(), "period": period, "count": got, "brute_force": brute})
            checked += 1
        return not failures and checked == self.params["samples"], {"matrices": checked, "failures": failures[:10]}


class DecompositionCheck(BaseCheck):
    name = "decomposition"

    def _sample(self) -> IntMatrix:
        if self.rng.random() < 0.5:
            return random_nonsingular(self.rng, self.params["max_dim"], self.params["entry_bound"])
        block = FINITE_ORDER_BLOCKS[int(self.rng.integers(len(FINITE_ORDER_BLOCKS)))]
        free = self.params["max_dim"] - block.nrows
        parts = [block]
        if free > 0:
            parts.append(random_nonsingular(self.rng, free, self.params["entry_bound"]))
        a = IntMatrix.block_diag(*parts)
        u, u_inv = random_unimodular(self.rng, a.nrows)
        return u @ a @ u_inv

    def run(self, context: dict) -> tuple[bool, dict]:
        failures = []
        for k in range(self.params["samples"]):
            a = self._sample()
            try:
                p, a1, a2 = decompose(a)
            except ToridynError as e:
                failures.append({"sample": k, "matrix": a.to_list(), "error": str(e)})
                continue
            ok = a @ p == p @ IntMatrix.block_diag(a1, a2) and p.det() != 0
            if a2.nrows:
                ok = ok and is_positive(a2)
            if a1.nrows:
                ok = ok and cyclotomic_split(charpoly(a1))[1].is_constant()
            if not ok:
                failures.append({"sample": k, "matrix": a.to_list()})
        return not failures, {"samples": self.params["samples"], "failures": failures[:10]}


class LoxtonCheck(BaseCheck):
    """ 找到的表示長度 b 為最小：長度 < b 的單位根和窮舉後皆不等於 α。 """

    name = "loxton"

    @staticmethod
    def _short_sums(order: int, max_len: int, big: int) -> set:
        roots = [CycloNumber.root(j * (big // order), big) for j in range(order)]
        sums = set()
        for k in range(max_len + 1):
            for combo in combinations_with_replacement(range(order), k):
                value = CycloNumber.zero(big)
                for j in combo:
                    value = value + roots[j]
                sums.add(value.coeffs)
        return sums

    def run(self, context: dict) -> tuple[bool, dict]:
        b_max = self.params["max_terms"]
        rows, failures = [], []
        for n in self.params["conductors"]:
            order = lcm(2 * n, self.params["order_bound"])
            big = lcm(n, order)
            shorter = {length: self._short_sums(order, length, big) for length in range(b_max)}
            stats = {"conductor": n, "order_bound": order, "elements": 0, "decomposed": 0}
            for alpha in integral_elements(n, self.params["house_bound"]):
                stats["elements"] += 1
                roots = loxton_decompose(alpha, b_max, order)
                if roots is None:
                    continue
                stats["decomposed"] += 1
                total = CycloNumber.zero(big)
                for r in roots:
                    total = total + r.to_cyclo()
                b = len(roots)
                minimal = b == 0 or alpha.lift(big).coeffs not in shorter[b - 1]
                if total != alpha or not minimal:
                    failures.append({"conductor": n, "alpha": [str(c) for c in alpha.coeffs], "length": b})
            rows.append(stats)
            logger.info("Loxton check, conductor %d: %d of %d elements decomposed",
                        n, stats["decomposed"], stats["elements"])
        return not failures, {"conductors": rows, "failures": failures[:10]}
