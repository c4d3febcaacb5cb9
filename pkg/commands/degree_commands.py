"""
動力度數子命令：dyndeg、regular-profile、henon-profile。
"""
from dynamics.dyndeg import henon_profile, monomial_degree_profile, profile_of_iterate, regular_profile
from utils.helpers import parse_matrix
from .base_command import BaseCommand


class DyndegCommand(BaseCommand):
    name = "dyndeg"
    help = "dynamical degrees of a monomial map"

    def add_arguments(self, parser):
        parser.add_argument("--matrix", required=True)
        parser.add_argument("--iterate", type=int, default=1, help="profile of the l-th iterate")

    def execute(self, args) -> dict:
        profile = monomial_degree_profile(parse_matrix(args.matrix))
        if args.iterate != 1:
            profile = profile_of_iterate(profile, args.iterate)
        return profile.to_dict()


class RegularProfileCommand(BaseCommand):
    name = "regular-profile"
    help = "degree profile of a regular endomorphism of A^N"

    def add_arguments(self, parser):
        parser.add_argument("--dim", type=int, required=True)
        parser.add_argument("--degree", type=int, required=True)

    def execute(self, args) -> dict:
        return regular_profile(args.dim, args.degree).to_dict()


class HenonProfileCommand(BaseCommand):
    name = "henon-profile"
    help = "degree profile of a Hénon-type automorphism"

    def add_arguments(self, parser):
        parser.add_argument("--dim", type=int, required=True)
        parser.add_argument("--degree", type=int, required=True)
        parser.add_argument("--degree-minus", type=int, required=True)
        parser.add_argument("--p", type=int, required=True)
        parser.add_argument("--q", type=int, required=True)

    def execute(self, args) -> dict:
        return henon_profile(args.dim, args.degree, args.degree_minus, args.p, args.q).to_dict()
