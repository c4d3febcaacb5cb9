"""
分圓體子命令：house、loxton。
"""
import config
from arith.cyclo import house, house_at_most, loxton_decompose
from utils.helpers import decode_cyclo, format_float, parse_fraction, parse_json
from .base_command import BaseCommand


class HouseCommand(BaseCommand):
    name = "house"
    help = "maximum modulus over all conjugates, with a certified error bound"

    def add_arguments(self, parser):
        parser.add_argument("--alpha", required=True, help="{\"conductor\": n, \"coeffs\": [...]}")
        parser.add_argument("--bound", help="also decide house <= bound (rational)")

    def execute(self, args) -> dict:
        alpha = decode_cyclo(parse_json(args.alpha, "alpha"))
        h = house(alpha)
        out = {
            "value": format_float(h.value),
            "error": format_float(h.error),
            "lower": format_float(h.lower),
            "upper": format_float(h.upper),
        }
        if args.bound is not None:
            out["at_most"] = house_at_most(alpha, parse_fraction(args.bound))
        return out


class LoxtonCommand(BaseCommand):
    name = "loxton"
    help = "shortest expression as a sum of roots of unity"

    def add_arguments(self, parser):
        parser.add_argument("--alpha", required=True)
        parser.add_argument("--b-max", type=int, default=config.LOXTON_DEFAULT_TERMS)
        parser.add_argument("--order-bound", type=int, default=config.LOXTON_DEFAULT_ORDER)

    def execute(self, args) -> dict:
        alpha = decode_cyclo(parse_json(args.alpha, "alpha"))
        roots = loxton_decompose(alpha, args.b_max, args.order_bound)
        if roots is None:
            return {"found": False}
        return {"found": True, "length": len(roots), "roots": [str(r) for r in roots]}
