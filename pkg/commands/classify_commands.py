"""
單變數分類子命令：classify、chebyshev、quotient-check。
"""
from dynamics.classify1d import chebyshev_poly, classify, quotient_check
from utils.errors import UsageError
from utils.helpers import encode_polynomial, parse_polynomial
from .base_command import BaseCommand


class ClassifyCommand(BaseCommand):
    name = "classify"
    help = "Power / Chebyshev / General class under affine conjugacy"

    def add_arguments(self, parser):
        parser.add_argument("--poly", required=True, help="univariate polynomial, e.g. '{\"2\":\"1\",\"0\":\"-2\"}'")

    def execute(self, args) -> dict:
        f = parse_polynomial(args.poly)
        if f.nvars != 1:
            raise UsageError("classify expects a univariate polynomial (single exponents as keys)")
        return classify(f).to_dict()


class ChebyshevCommand(BaseCommand):
    name = "chebyshev"
    help = "Chebyshev polynomial T_d, verified against u^d + u^-d"

    def add_arguments(self, parser):
        parser.add_argument("--degree", type=int, required=True)

    def execute(self, args) -> dict:
        return {"degree": args.degree, "poly": encode_polynomial(chebyshev_poly(args.degree)), "verified": True}


class QuotientCheckCommand(BaseCommand):
    name = "quotient-check"
    help = "parity of T_d and the semiconjugacy through u + 1/u"

    def add_arguments(self, parser):
        parser.add_argument("--degree", type=int, required=True)

    def execute(self, args) -> dict:
        return {"degree": args.degree, "holds": quotient_check(args.degree)}
