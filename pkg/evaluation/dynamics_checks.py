"""
動力系統部分的驗收檢查。
"""
import logging
from fractions import Fraction
from math import lcm

from arith.intlat import IntMatrix
from arith.cyclo import estimate_integral_elements, euler_phi, house_at_most, integral_elements, root_of_unity_sums
from dynamics.affdyn import preperiodic_scan, verify_semiconjugacy
from dynamics.classify1d import classify, conjugate, monomial_witness, quotient_check
from dynamics.dyndeg import henon_profile
from dynamics.henon import cyclo_periodic_scan
from dynamics.polynomial import Polynomial, PolyMap
from utils.errors import InconsistentDataError
from utils.helpers import encode_point, parse_henon, parse_polymap
from .base_check import BaseCheck

logger = logging.getLogger(__name__)


def _univariate(coeffs: dict) -> Polynomial:
    return Polynomial.univariate({k: Fraction(v) for k, v in coeffs.items()})


def _is_root_of_unity_or_zero(c) -> bool:
    # Q(ζ_n) 中的單位根階數整除 lcm(2, n)
    return c.is_zero() or c ** (2 * c.conductor) == 1


class EscapeSoundnessCheck(BaseCheck):
    """
    z² 的前週期點恰為 0 與單位根；其餘候選點都帶有逃逸的位。

    候選點為 (1/M)·β，β ∈ Z[ζ_n] 且 house(β) ≤ M·house_bound。列舉量估計超過
    max_class_size 的 (n, M) 類別改用至多 max_terms 個單位根之和，並記錄在 capped 中。
    """

    name = "escape_soundness"

    def _candidates(self) -> tuple[list, list]:
        p = self.params
        bound = Fraction(p["house_bound"])
        seen, capped = {}, []
        for n in range(1, p["conductor_bound"] + 1):
            if n % 4 == 2:
                continue
            for m in range(1, p["denom"] + 1):
                estimate = estimate_integral_elements(n, m * bound)
                if estimate <= p["max_class_size"]:
                    values = [b / m for b in integral_elements(n, m * bound)]
                else:
                    capped.append({"conductor": n, "denom": m, "estimate": estimate})
                    values = [b / m for b in root_of_unity_sums(lcm(2, n), p["max_terms"])]
                for v in values:
                    v = v.normalize()
                    key = (v.conductor, v.coeffs)
                    if key not in seen and house_at_most(v, bound) != "fail":
                        seen[key] = v
        logger.info("Escape soundness: %d candidates, %d capped classes", len(seen), len(capped))
        return [seen[k] for k in sorted(seen)], capped

    def run(self, context: dict) -> tuple[bool, dict]:
        f = parse_polymap("zsq")
        values, capped = self._candidates()
        decisions = preperiodic_scan(f, [(v,) for v in values], self.config.N_JOBS)
        mismatches, unplaced, undecided = [], 0, 0
        preperiodic = 0
        for v, d in zip(values, decisions):
            if d.kind == "budget_exceeded":
                undecided += 1
                continue
            if d.kind == "escapes" and d.place is None:
                unplaced += 1
            found = d.kind == "preperiodic"
            preperiodic += found
            if found != _is_root_of_unity_or_zero(v):
                mismatches.append(encode_point((v,)))
        expected = 1 + sum(euler_phi(k) for k in range(1, 2 * self.params["conductor_bound"] + 1)
                           if (k // 2 if k % 4 == 2 else k) <= self.params["conductor_bound"])
        details = {
            "candidates": len(values),
            "preperiodic": preperiodic,
            "expected_preperiodic": expected,
            "undecided": undecided,
            "unplaced": unplaced,
            "capped": capped,
            "mismatches": mismatches[:10],
        }
        return not mismatches and not unplaced and not undecided and preperiodic == expected, details


class ChebyshevCheck(BaseCheck):
    name = "chebyshev"

    CASES = [
        ({2: 1, 0: -2}, "Chebyshev", "+"),
        ({2: 1}, "Power", "+"),
        ({2: 1, 0: 1}, "General", None),
    ]

    def run(self, context: dict) -> tuple[bool, dict]:
        # chebyshev_poly 在回傳前已驗證 T_d(u + 1/u) = u^d + u^-d
        degrees_ok = all(quotient_check(d) for d in range(1, self.params["max_degree"] + 1))
        cases = []
        for coeffs, kind, sign in self.CASES:
            f = _univariate(coeffs)
            result = classify(f)
            ok = result.kind == kind and result.sign == sign
            if ok and result.witness is not None:
                ok = conjugate(f, result.witness) == result.target(f.degree)
            cases.append({"poly": {str(k): str(v) for k, v in coeffs.items()}, "class": result.kind, "ok": ok})
        return degrees_ok and all(c["ok"] for c in cases), {"identities": degrees_ok, "cases": cases}


class HenonProfileCheck(BaseCheck):
    name = "henon_profile"

    def run(self, context: dict) -> tuple[bool, dict]:
        prof = henon_profile(2, 2, 2, 1, 1)
        exact_ok = prof.exact == (1, 2, 1)
        try:
            henon_profile(2, 2, 3, 1, 1)
            rejected = False
        except InconsistentDataError:
            rejected = True
        map_ok = parse_henon("henon_basic").degree_profile().exact == (1, 2, 1)
        return exact_ok and rejected and map_ok, {"profile": prof.to_dict(), "rejects_bad_data": rejected,
                                                  "map_profile_matches": map_ok}


class HenonScanCheck(BaseCheck):
    """ (x² + 1 − y, x) 在給定範圍內只有不動點 (1, 1)。 """

    name = "henon_scan"

    def run(self, context: dict) -> tuple[bool, dict]:
        h = parse_henon("henon_basic")
        p = self.params
        hits = cyclo_periodic_scan(h, p["conductor_bound"], p["house_bound"], p["denom"], p["period_bound"],
                                   workers=self.config.N_JOBS)
        replayed = True
        for hit in hits:
            current = hit.point
            for _ in range(hit.period):
                current = h.forward(current)
            replayed = replayed and all(a == b for a, b in zip(current, hit.point))
        expected = len(hits) == 1 and hits[0].period == 1 and all(c == 1 for c in hits[0].point)
        return expected and replayed, {"hits": [hit.to_dict() for hit in hits], "replayed": replayed}


class MonomialWitnessesCheck(BaseCheck):
    name = "monomial_witnesses"

    def run(self, context: dict) -> tuple[bool, dict]:
        u = Polynomial.variable(0, 1)
        u_plus_inv = Polynomial.from_dict({(1,): 1, (-1,): 1}, 1)
        two = IntMatrix.from_rows([[2]])
        cases = [
            ("zsq", PolyMap((u,)), True),
            ("cheb2", PolyMap((u_plus_inv,)), True),
            ("zsq_plus1", PolyMap((u_plus_inv,)), False),
        ]
        rows, ok = [], True
        for name, phi, expect in cases:
            result = verify_semiconjugacy(parse_polymap(name), 1, phi, two)
            good = result.holds == expect and (not expect or result.strong)
            rows.append({"map": name, "holds": result.holds, "strong": result.strong, "ok": good})
            ok = ok and good
        for name in ("zsq", "cheb2"):
            f = parse_polymap(name).components[0]
            phi, a = monomial_witness(f, classify(f))
            derived = verify_semiconjugacy(PolyMap((f,)), 1, phi, a).holds
            rows.append({"map": name, "derived_witness": derived, "ok": derived})
            ok = ok and derived
        return ok, {"cases": rows}
