"""
代數環面子命令：fixed-points、coset、quotient。
"""
from arith.torus import (
    coset_image,
    coset_intersect,
    coset_preimage,
    correspondence_compose,
    fixed_points,
    membership,
    quotient_map,
    stabilizer,
)
from utils.errors import UsageError
from utils.helpers import (
    encode_coset,
    encode_matrix,
    encode_torsion_point,
    parse_coset,
    parse_lattice,
    parse_matrix,
    parse_torsion_point,
)
from .base_command import BaseCommand


class FixedPointsCommand(BaseCommand):
    name = "fixed-points"
    help = "periodic torsion points of a monomial map"

    def add_arguments(self, parser):
        parser.add_argument("--matrix", required=True)
        parser.add_argument("--period", type=int, default=1)
        parser.add_argument("--count-only", action="store_true", help="omit the list of points")

    def execute(self, args) -> dict:
        count, points = fixed_points(parse_matrix(args.matrix), args.period)
        out = {"count": str(count), "period": args.period}
        if not args.count_only:
            out["points"] = [encode_torsion_point(p) for p in points]
        return out


class CosetCommand(BaseCommand):
    name = "coset"
    help = "operations on torsion cosets"

    OPS = ("member", "image", "preimage", "intersect", "stabilizer", "components", "compose")

    def add_arguments(self, parser):
        parser.add_argument("--op", required=True, choices=self.OPS)
        parser.add_argument("--coset", required=True, help="{\"epsilon\": [\"a/b\", ...], \"lattice\": {...}}")
        parser.add_argument("--other", help="second coset (intersect, compose)")
        parser.add_argument("--matrix", help="monomial map (image, preimage)")
        parser.add_argument("--torsion-point", help="exponent vector [\"a/b\", ...] (member)")
        parser.add_argument("--dims", help="a,b,c for compose")

    def _require(self, args, attr: str):
        value = getattr(args, attr)
        if value is None:
            raise UsageError(f"--{attr.replace('_', '-')} is required for --op {args.op}")
        return value

    def execute(self, args) -> dict:
        coset = parse_coset(args.coset)
        op = args.op
        if op == "member":
            return {"member": membership(parse_torsion_point(self._require(args, "torsion_point")), coset)}
        if op == "image":
            return {"coset": encode_coset(coset_image(coset, parse_matrix(self._require(args, "matrix"))))}
        if op == "preimage":
            return {"coset": encode_coset(coset_preimage(coset, parse_matrix(self._require(args, "matrix"))))}
        if op == "stabilizer":
            return {"coset": encode_coset(stabilizer(coset))}
        if op == "components":
            return {"components": [encode_coset(c) for c in coset.components()]}
        other = parse_coset(self._require(args, "other"))
        if op == "intersect":
            return {"cosets": [encode_coset(c) for c in coset_intersect(coset, other)]}
        try:
            a, b, c = (int(x) for x in self._require(args, "dims").split(","))
        except ValueError as e:
            raise UsageError("--dims must be three integers a,b,c") from e
        return {"cosets": [encode_coset(x) for x in correspondence_compose(coset, other, a, b, c)]}


class QuotientCommand(BaseCommand):
    name = "quotient"
    help = "monomial quotient map whose kernel is the given subtorus"

    def add_arguments(self, parser):
        parser.add_argument("--lattice", required=True)

    def execute(self, args) -> dict:
        q = quotient_map(parse_lattice(args.lattice))
        return {"Q": encode_matrix(q)}
