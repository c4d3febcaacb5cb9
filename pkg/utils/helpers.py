"""
JSON 編碼 / 解碼工具。

精確數值 (整數、有理數) 一律輸出為字串；浮點數輸出為固定小數位的字串。
"""
import json
import os
from fractions import Fraction
from pathlib import Path

import config
from arith.cyclo import CycloNumber, euler_phi
from arith.intlat import IntMatrix, IntPoly, Lattice
from arith.torus import SubgroupCoset, TorsionPoint
from dynamics.henon import ElementaryFactor, HenonMap, compose_elementary
from dynamics.polynomial import Polynomial, PolyMap
from utils.errors import UsageError


def format_float(x: float) -> str:
    return f"{float(x):.{config.FLOAT_DIGITS}f}"


def dumps(payload: dict) -> str:
    """ 標準化輸出：鍵值排序、緊湊分隔符，相同輸入得到逐位元相同的字串。 """
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def parse_json(text, what: str = "input"):
    """ 解析 JSON 字串；已經是 Python 物件時原樣回傳。 """
    if not isinstance(text, str):
        return text
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"malformed JSON for {what}: {e.msg}") from e


def ensure_dir_exists(directory):
    """
    確保目錄存在 (檢查點與報告檔案寫入前呼叫)。
    """
    directory = Path(directory)
    if str(directory):
        os.makedirs(directory, exist_ok=True)


# --- 純量 ---

def encode_fraction(q) -> str:
    return str(Fraction(q))


def parse_fraction(value) -> Fraction:
    if isinstance(value, bool):
        raise UsageError(f"expected a rational number, got {value!r}")
    try:
        return Fraction(value) if not isinstance(value, float) else Fraction(str(value))
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise UsageError(f"expected a rational number, got {value!r}") from e


def encode_cyclo(c: CycloNumber) -> dict:
    return {"conductor": c.conductor, "coeffs": [encode_fraction(x) for x in c.coeffs]}


def decode_cyclo(obj) -> CycloNumber:
    if not isinstance(obj, dict) or "conductor" not in obj or "coeffs" not in obj:
        raise UsageError("a cyclotomic number is {\"conductor\": n, \"coeffs\": [...]}")
    n = obj["conductor"]
    if not isinstance(n, int) or n < 1:
        raise UsageError(f"conductor must be a positive integer, got {n!r}")
    coeffs = [parse_fraction(x) for x in obj["coeffs"]]
    if len(coeffs) != euler_phi(n):
        raise UsageError(f"conductor {n} needs {euler_phi(n)} coefficients, got {len(coeffs)}")
    return CycloNumber(n, tuple(coeffs))


def encode_coeff(c):
    if isinstance(c, CycloNumber):
        if c.is_rational():
            return encode_fraction(c.coeffs[0])
        return encode_cyclo(c)
    return encode_fraction(c)


def parse_coeff(value):
    """ 字串或整數視為有理數；dict 視為分圓數。 """
    if isinstance(value, dict):
        return decode_cyclo(value)
    return parse_fraction(value)


# --- 整數矩陣、格、多項式 ---

def encode_matrix(m: IntMatrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in m.rows]


def parse_matrix(value) -> IntMatrix:
    """ [[1,2],[3,4]]，元素可為整數或整數字串。 """
    rows = parse_json(value, "matrix")
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise UsageError("a matrix is a non-empty list of rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise UsageError("matrix rows have different lengths")
    try:
        return IntMatrix.from_rows([[_parse_int(x) for x in r] for r in rows], width)
    except (TypeError, ValueError) as e:
        raise UsageError(f"matrix entries must be integers: {e}") from e


def _parse_int(x) -> int:
    if isinstance(x, bool) or isinstance(x, float):
        raise ValueError(repr(x))
    return int(x)


def encode_intpoly(p: IntPoly) -> list[str]:
    """ 係數由常數項開始。 """
    return [str(c) for c in p.coeffs]


def encode_lattice(lattice: Lattice) -> dict:
    return {"ambient_dim": lattice.ambient_dim, "basis": encode_matrix(lattice.basis)}


def parse_lattice(value, ambient_dim: int | None = None) -> Lattice:
    """
    {"ambient_dim": n, "basis": [[...], ...]} 或直接給列的串列 (此時需能推得維度)。
    """
    obj = parse_json(value, "lattice")
    if isinstance(obj, dict):
        rows = obj.get("basis", obj.get("rows", []))
        ambient_dim = obj.get("ambient_dim", ambient_dim)
    else:
        rows = obj
    if not isinstance(rows, list):
        raise UsageError("lattice rows must be a list")
    if ambient_dim is None:
        if not rows:
            raise UsageError("cannot infer the ambient dimension of an empty lattice")
        ambient_dim = len(rows[0])
    if any(len(r) != ambient_dim for r in rows):
        raise UsageError(f"lattice rows must have length {ambient_dim}")
    return Lattice.from_rows([[_parse_int(x) for x in r] for r in rows], ambient_dim)


def encode_polynomial(p: Polynomial) -> dict:
    return {",".join(str(e) for e in exps): encode_coeff(c) for exps, c in p.terms}


def parse_polynomial(value, nvars: int | None = None) -> Polynomial:
    """
    {"e1,e2,...": 係數}；變數個數由指數長度推得。
    """
    obj = parse_json(value, "polynomial")
    if not isinstance(obj, dict):
        raise UsageError("a polynomial is an object mapping exponent tuples to coefficients")
    terms = {}
    for key, coeff in obj.items():
        try:
            exps = tuple(int(e) for e in str(key).split(","))
        except ValueError as e:
            raise UsageError(f"bad exponent key {key!r}") from e
        if nvars is None:
            nvars = len(exps)
        if len(exps) != nvars:
            raise UsageError(f"exponent key {key!r} does not have {nvars} entries")
        terms[exps] = parse_coeff(coeff)
    if nvars is None:
        raise UsageError("cannot infer the number of variables of an empty polynomial")
    return Polynomial.from_dict(terms, nvars)


def encode_polymap(f: PolyMap) -> list[dict]:
    return [encode_polynomial(c) for c in f.components]


def parse_polymap(value) -> PolyMap:
    """ 多項式串列，或 config.MAP_PRESETS 中的名稱。 """
    if isinstance(value, str) and value in config.MAP_PRESETS:
        obj = config.MAP_PRESETS[value]
    else:
        obj = parse_json(value, "map")
    if isinstance(obj, dict):
        obj = [obj]
    if not isinstance(obj, list) or not obj:
        raise UsageError("a map is a non-empty list of polynomials")
    first = parse_polynomial(obj[0])
    comps = [first] + [parse_polynomial(c, first.nvars) for c in obj[1:]]
    return PolyMap(tuple(comps))


def parse_point(value) -> tuple:
    """ 座標串列 (有理數字串或分圓數)；單一座標可省略外層串列。 """
    obj = parse_json(value, "point")
    if not isinstance(obj, list):
        obj = [obj]
    if not obj:
        raise UsageError("a point needs at least one coordinate")
    return tuple(parse_coeff(x) for x in obj)


def encode_point(point) -> list:
    return [encode_coeff(x) for x in point]


# --- 撓點與撓陪集 ---

def encode_torsion_point(x: TorsionPoint) -> list[str]:
    return [encode_fraction(e) for e in x.exponents]


def parse_torsion_point(value) -> TorsionPoint:
    """ 指數座標 ["a/b", ...]，代表 (e^{2πi·a/b}, ...)。 """
    obj = parse_json(value, "torsion point")
    if not isinstance(obj, list):
        raise UsageError("a torsion point is a list of exponents \"a/b\"")
    return TorsionPoint(tuple(parse_fraction(e) for e in obj))


def encode_coset(c: SubgroupCoset) -> dict:
    return {"epsilon": encode_torsion_point(c.epsilon), "lattice": encode_lattice(c.lattice)}


def parse_coset(value) -> SubgroupCoset:
    obj = parse_json(value, "coset")
    if not isinstance(obj, dict) or "lattice" not in obj:
        raise UsageError("a coset is {\"epsilon\": [...], \"lattice\": {...}}")
    lattice = parse_lattice(obj["lattice"])
    eps = obj.get("epsilon")
    epsilon = parse_torsion_point(eps) if eps is not None else TorsionPoint.identity(lattice.ambient_dim)
    if epsilon.ambient_dim != lattice.ambient_dim:
        raise UsageError("epsilon and lattice live in different dimensions")
    return SubgroupCoset(epsilon, lattice)


# --- Hénon 映射 ---

def parse_henon(value) -> HenonMap:
    """
    config.HENON_PRESETS 的名稱、標準形因子串列 [{"poly", "a", "b"}, ...]，
    或 {"forward": [...], "backward": [...], "p": p, "q": q}。
    """
    if isinstance(value, str) and value in config.HENON_PRESETS:
        obj = config.HENON_PRESETS[value]
    else:
        obj = parse_json(value, "Hénon map")
    if isinstance(obj, dict):
        missing = {"forward", "backward", "p", "q"} - set(obj)
        if missing:
            raise UsageError(f"Hénon pair is missing {sorted(missing)}")
        try:
            p, q = _parse_int(obj["p"]), _parse_int(obj["q"])
        except (TypeError, ValueError) as e:
            raise UsageError(f"Hénon pair needs integer p and q: {e}") from e
        return HenonMap.from_pair(parse_polymap(obj["forward"]), parse_polymap(obj["backward"]), p, q)
    if not isinstance(obj, list) or not obj:
        raise UsageError("a Hénon map is a non-empty list of elementary factors")
    factors = []
    for item in obj:
        if not isinstance(item, dict) or not {"poly", "a", "b"} <= set(item):
            raise UsageError("an elementary factor is {\"poly\": {...}, \"a\": ..., \"b\": ...}")
        factors.append(ElementaryFactor(parse_polynomial(item["poly"], 1),
                                        parse_coeff(item["a"]), parse_coeff(item["b"])))
    return compose_elementary(factors)
