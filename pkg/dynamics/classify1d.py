"""
單變數情形：Chebyshev 多項式、次數 d 多項式在仿射共軛下的分類
(冪映射 / ±Chebyshev / 一般)，以及商映射 u ↦ u + u⁻¹ 的半共軛檢查。
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from arith.cyclo import CycloNumber, kth_root
from arith.intlat import IntMatrix
from dynamics.polynomial import Polynomial, PolyMap
from utils.errors import ToridynError

logger = logging.getLogger(__name__)


def _z() -> Polynomial:
    return Polynomial.variable(0, 1)


def _u_plus_inverse(c=Fraction(1)) -> Polynomial:
    """ c·u + (c·u)⁻¹ 作為 G_m 上的 Laurent 多項式。 """
    inv = c.inverse() if isinstance(c, CycloNumber) else Fraction(1) / c
    return Polynomial.from_dict({(1,): c, (-1,): inv}, 1)


def _simplify(c):
    if isinstance(c, CycloNumber) and c.is_rational():
        return c.coeffs[0]
    return c


@lru_cache(maxsize=None)
def chebyshev_poly(d: int) -> Polynomial:
    """ T_{d+1} = z·T_d − T_{d−1}，T_0 = 2，T_1 = z；回傳前驗證 T_d(u+u⁻¹) = u^d + u^{−d}。 """
    if d <= 0:
        raise ToridynError("chebyshev_poly requires d >= 1")
    z = _z()
    prev, cur = Polynomial.constant(2, 1), z
    for _ in range(d - 1):
        prev, cur = cur, z * cur - prev
    lhs = cur.compose([_u_plus_inverse()])
    rhs = Polynomial.from_dict({(d,): 1, (-d,): 1}, 1)
    if lhs != rhs:
        raise ToridynError(f"Chebyshev identity failed for d={d}")
    return cur


@dataclass(frozen=True)
class AffineMap:
    """ L(z) = α·z + β。 """

    alpha: object
    beta: object

    def as_polynomial(self) -> Polynomial:
        return _z() * self.alpha + self.beta

    def inverse_polynomial(self) -> Polynomial:
        inv = self.alpha.inverse() if isinstance(self.alpha, CycloNumber) else Fraction(1) / self.alpha
        return (_z() - self.beta) * inv

    def to_dict(self) -> dict:
        from utils.helpers import encode_coeff
        return {"alpha": encode_coeff(_simplify(self.alpha)), "beta": encode_coeff(_simplify(self.beta))}


def conjugate(f: Polynomial, l: AffineMap) -> Polynomial:
    """ L ∘ f ∘ L⁻¹。 """
    return f.compose([l.inverse_polynomial()]) * l.alpha + l.beta


@dataclass(frozen=True)
class Classification:
    kind: str
    sign: str | None = None
    witness: AffineMap | None = None
    note: str | None = None

    def target(self, d: int) -> Polynomial:
        base = Polynomial.monomial((d,)) if self.kind == "Power" else chebyshev_poly(d)
        return base if self.sign == "+" else -base

    def to_dict(self) -> dict:
        out = {"class": self.kind, "sign": self.sign, "witness": self.witness.to_dict() if self.witness else None}
        if self.note:
            out["note"] = self.note
        return out


def _coefficient(f: Polynomial, k: int):
    return f.coefficient((k,))


def _centered(f: Polynomial, d: int):
    """ 平移 w = z + τ 消去 z^{d−1} 項；回傳 (τ, f̃)。 """
    lead = _coefficient(f, d)
    tau = _simplify(CycloNumber.coerce(_coefficient(f, d - 1)) / (CycloNumber.coerce(lead) * d))
    shifted = f.compose([_z() - tau]) + tau
    return tau, shifted


def _try_witness(f: Polynomial, d: int, alpha, tau, kind: str, sign: str) -> Classification | None:
    alpha = _simplify(alpha)
    if alpha == 0:
        return None
    witness = AffineMap(alpha, _simplify(CycloNumber.coerce(alpha) * tau))
    result = Classification(kind, sign, witness)
    if conjugate(f, witness) == result.target(d):
        return result
    return None


def classify(f: Polynomial) -> Classification:
    """
    先平移消去 z^{d−1}，再解縮放方程：
    冪映射 α^{d−1} = ±a_d；Chebyshev α² = s = −d·a_d / c_{d−2}。
    找到的 L 都以 L∘f∘L⁻¹ = 目標 精確驗證。
    """
    if f.nvars != 1:
        raise ToridynError("classify expects a univariate polynomial")
    d = f.degree
    if d < 2:
        raise ToridynError("classify requires degree d >= 2")
    lead = CycloNumber.coerce(_coefficient(f, d))
    tau, centered = _centered(f, d)
    within_field = True

    if len(centered.terms) == 1:
        for sign, value in (("+", lead), ("-", -lead)):
            alpha = kth_root(value, d - 1)
            if alpha is None:
                within_field = False
                continue
            found = _try_witness(f, d, alpha, tau, "Power", sign)
            if found:
                return found
    else:
        sub = CycloNumber.coerce(_coefficient(centered, d - 2))
        if not sub.is_zero():
            s = -(lead * d) / sub
            if d % 2 == 0:
                if s ** (d - 1) == lead * lead:
                    for alpha, sign in ((s ** (d // 2) / lead, "+"), (-(s ** (d // 2)) / lead, "-")):
                        found = _try_witness(f, d, alpha, tau, "Chebyshev", sign)
                        if found:
                            return found
            else:
                alpha = kth_root(s, 2)
                if alpha is None:
                    within_field = False
                else:
                    eps = lead * s ** ((1 - d) // 2)
                    if eps == 1 or eps == -1:
                        found = _try_witness(f, d, alpha, tau, "Chebyshev", "+" if eps == 1 else "-")
                        if found:
                            return found

    note = None if within_field else "no affine witness over the cyclotomic field; classified within field"
    logger.debug("Polynomial of degree %d classified as General", d)
    return Classification("General", None, None, note)


def monomial_witness(f: Polynomial, result: Classification) -> tuple[PolyMap, IntMatrix]:
    """
    冪映射或 Chebyshev 類別對應的 (φ, A = [d])，使 f ∘ φ = φ ∘ φ_A。

    φ = L⁻¹ ∘ ψ，ψ(u) = c·u (冪映射) 或 c·u + (c·u)⁻¹ (Chebyshev)；
    正號取 c = 1，負號取 c = ζ_{2(d−1)} (c^{d−1} = −1)。
    """
    if result.kind == "General" or result.witness is None:
        raise ToridynError("only Power and Chebyshev classes carry a monomial witness")
    d = f.degree
    c = Fraction(1) if result.sign == "+" else CycloNumber.root(1, 2 * (d - 1))
    if result.kind == "Power":
        psi = Polynomial.from_dict({(1,): c}, 1)
    else:
        psi = _u_plus_inverse(c)
    phi = result.witness.inverse_polynomial().compose([psi])
    return PolyMap((phi,)), IntMatrix.from_rows([[d]], 1)


def quotient_check(d: int) -> bool:
    """ T_d(−z) = (−1)^d T_d(z)，且 ±T_d(u+u⁻¹) = ±(u^d + u^{−d})。 """
    t = chebyshev_poly(d)
    parity = t.compose([-_z()]) == (t if d % 2 == 0 else -t)
    push = Polynomial.from_dict({(d,): 1, (-d,): 1}, 1)
    plus = t.compose([_u_plus_inverse()]) == push
    minus = (-t).compose([_u_plus_inverse()]) == -push
    return parity and plus and minus
