"""
A^N 正則自映射子命令：cert、escape、preper、preper-scan、backward、green、semiconj。
"""
from collections import Counter
from fractions import Fraction

import config
from dynamics.affdyn import (
    backward_orbit_filter,
    escape_data,
    green_estimate,
    is_preperiodic,
    preperiodic_scan,
    regularity_certificate,
    root_sum_candidates,
    verify_semiconjugacy,
)
from dynamics.classify1d import classify, monomial_witness
from utils.errors import NonRegularMapError, UsageError
from utils.helpers import (
    encode_matrix,
    encode_point,
    encode_polymap,
    parse_fraction,
    parse_json,
    parse_matrix,
    parse_point,
    parse_polymap,
)
from .base_command import BaseCommand

MAP_HELP = "polynomial map as a JSON list of {\"e1,e2\": \"p/q\"}, or a preset name: " + ", ".join(config.MAP_PRESETS)


def _add_map(parser):
    parser.add_argument("--map", required=True, help=MAP_HELP)


def _escape_data(f):
    cert = regularity_certificate(f)
    if cert is None:
        raise NonRegularMapError("map is not a regular endomorphism (f_h vanishes off the origin)")
    return escape_data(f, cert)


class CertCommand(BaseCommand):
    name = "cert"
    help = "Macaulay-bound regularity certificate"

    def add_arguments(self, parser):
        _add_map(parser)

    def execute(self, args) -> dict:
        cert = regularity_certificate(parse_polymap(args.map))
        return {"regular": cert is not None, "certificate": cert.to_dict() if cert else None}


class EscapeCommand(BaseCommand):
    name = "escape"
    help = "escape radii at the bad places"

    def add_arguments(self, parser):
        _add_map(parser)

    def execute(self, args) -> dict:
        return _escape_data(parse_polymap(args.map)).to_dict()


class PreperCommand(BaseCommand):
    name = "preper"
    help = "exact preperiodicity decision for a cyclotomic point"

    def add_arguments(self, parser):
        _add_map(parser)
        parser.add_argument("--point", required=True, help="list of coordinates (rational strings or cyclotomic numbers)")
        parser.add_argument("--budget", type=int, default=None)

    def execute(self, args) -> dict:
        f = parse_polymap(args.map)
        return is_preperiodic(f, parse_point(args.point), budget=args.budget).to_dict()


class PreperScanCommand(BaseCommand):
    name = "preper-scan"
    help = "preperiodicity decisions over a candidate family"

    def add_arguments(self, parser):
        _add_map(parser)
        parser.add_argument("--points", help="JSON list of points; defaults to sums of roots of unity")
        parser.add_argument("--conductor-bound", type=int, default=12)
        parser.add_argument("--terms", type=int, default=2, help="at most this many roots of unity per candidate")
        parser.add_argument("--denom", type=int, default=1)
        parser.add_argument("--house-bound", default="2")
        parser.add_argument("--workers", type=int, default=config.N_JOBS)

    def execute(self, args) -> dict:
        f = parse_polymap(args.map)
        if args.points is not None:
            raw = parse_json(args.points, "points")
            if not isinstance(raw, list):
                raise UsageError("--points must be a JSON list of points")
            candidates = [parse_point(p) for p in raw]
        else:
            if f.dim != 1:
                raise UsageError("generated candidates are one-dimensional; pass --points for this map")
            values = root_sum_candidates(args.conductor_bound, args.terms, args.denom,
                                         parse_fraction(args.house_bound))
            candidates = [(v,) for v in values]
        decisions = preperiodic_scan(f, candidates, args.workers)
        kinds = Counter(d.kind for d in decisions)
        return {
            "candidates": len(candidates),
            "counts": dict(sorted(kinds.items())),
            "results": [{"point": encode_point(z), **d.to_dict()} for z, d in zip(candidates, decisions)],
        }


class BackwardCommand(BaseCommand):
    name = "backward"
    help = "decide whether some iterate of the point hits a rational target"

    def add_arguments(self, parser):
        _add_map(parser)
        parser.add_argument("--target", required=True, help="rational point x")
        parser.add_argument("--point", required=True, help="cyclotomic point z")
        parser.add_argument("--budget", type=int, default=None)

    def execute(self, args) -> dict:
        f = parse_polymap(args.map)
        target = parse_point(args.target)
        if any(not isinstance(v, Fraction) for v in target):
            raise UsageError("--target must have rational coordinates")
        return backward_orbit_filter(f, target, parse_point(args.point), budget=args.budget).to_dict()


class GreenCommand(BaseCommand):
    name = "green"
    help = "Green function estimate with tail bounds"

    def add_arguments(self, parser):
        _add_map(parser)
        parser.add_argument("--point", required=True)
        parser.add_argument("--iters", type=int, default=None)

    def execute(self, args) -> dict:
        f = parse_polymap(args.map)
        return green_estimate(f, parse_point(args.point), args.iters).to_dict()


class SemiconjCommand(BaseCommand):
    name = "semiconj"
    help = "verify f^l ∘ φ = φ ∘ φ_A exactly"

    def add_arguments(self, parser):
        _add_map(parser)
        parser.add_argument("--phi", help="Laurent map G_m^n -> A^N; omitted: derived from the one-variable class")
        parser.add_argument("--matrix", help="exponent matrix A")
        parser.add_argument("--times", type=int, default=1)

    def execute(self, args) -> dict:
        f = parse_polymap(args.map)
        if args.phi is None and args.matrix is None:
            if f.dim != 1:
                raise UsageError("--phi and --matrix are required for maps in several variables")
            phi, a = monomial_witness(f.components[0], classify(f.components[0]))
        elif args.phi is None or args.matrix is None:
            raise UsageError("--phi and --matrix must be given together")
        else:
            phi, a = parse_polymap(args.phi), parse_matrix(args.matrix)
        result = verify_semiconjugacy(f, args.times, phi, a)
        return {**result.to_dict(), "phi": encode_polymap(phi), "A": encode_matrix(a)}
