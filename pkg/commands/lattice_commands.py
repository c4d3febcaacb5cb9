"""
整數線性代數子命令：hnf、snf、charpoly、saturate、positive、decompose。
"""
from arith.intlat import charpoly, cyclotomic_split, decompose, hnf, is_positive, saturate, smith_diagonal, snf
from utils.helpers import encode_intpoly, encode_lattice, encode_matrix, parse_lattice, parse_matrix
from .base_command import BaseCommand


class _MatrixCommand(BaseCommand):
    def add_arguments(self, parser):
        parser.add_argument("--matrix", required=True, help="integer matrix as JSON, e.g. '[[2,1],[1,1]]'")


class HnfCommand(_MatrixCommand):
    name = "hnf"
    help = "row-style Hermite normal form H = U·M"

    def execute(self, args) -> dict:
        h, u = hnf(parse_matrix(args.matrix))
        return {"H": encode_matrix(h), "U": encode_matrix(u)}


class SnfCommand(_MatrixCommand):
    name = "snf"
    help = "Smith normal form D = U·M·V"

    def execute(self, args) -> dict:
        u, d, v = snf(parse_matrix(args.matrix))
        return {
            "U": encode_matrix(u),
            "D": encode_matrix(d),
            "V": encode_matrix(v),
            "diagonal": [str(x) for x in smith_diagonal(d)],
        }


class CharpolyCommand(_MatrixCommand):
    name = "charpoly"
    help = "characteristic polynomial and its cyclotomic split"

    def execute(self, args) -> dict:
        p = charpoly(parse_matrix(args.matrix))
        p_cyc, p_rest = cyclotomic_split(p)
        return {
            "charpoly": encode_intpoly(p),
            "cyclotomic_part": encode_intpoly(p_cyc),
            "rest": encode_intpoly(p_rest),
        }


class SaturateCommand(BaseCommand):
    name = "saturate"
    help = "primitive closure of a lattice"

    def add_arguments(self, parser):
        parser.add_argument("--lattice", required=True,
                            help="lattice rows as JSON, or {\"ambient_dim\": n, \"basis\": [...]}")

    def execute(self, args) -> dict:
        lattice = parse_lattice(args.lattice)
        return {
            "lattice": encode_lattice(saturate(lattice)),
            "index": str(lattice.index()),
            "primitive": lattice.is_primitive(),
        }


class PositiveCommand(_MatrixCommand):
    name = "positive"
    help = "no eigenvalue is zero or a root of unity"

    def execute(self, args) -> dict:
        return {"positive": is_positive(parse_matrix(args.matrix))}


class DecomposeCommand(_MatrixCommand):
    name = "decompose"
    help = "A·P = P·diag(A1, A2) with A1 cyclotomic and A2 positive"

    def execute(self, args) -> dict:
        p, a1, a2 = decompose(parse_matrix(args.matrix))
        return {"P": encode_matrix(p), "A1": encode_matrix(a1), "A2": encode_matrix(a2)}
