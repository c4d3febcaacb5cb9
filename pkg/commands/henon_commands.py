"""
Hénon 型自同構子命令：periodic、henon-scan。
"""
import config
from dynamics.henon import cyclo_periodic_scan, is_periodic, scan_radius
from utils.helpers import format_float, parse_fraction, parse_henon, parse_point
from .base_command import BaseCommand

HENON_HELP = ("elementary factors [{\"poly\": {...}, \"a\": ..., \"b\": ...}], "
              "a pair {\"forward\", \"backward\", \"p\", \"q\"}, or a preset: " + ", ".join(config.HENON_PRESETS))


class PeriodicCommand(BaseCommand):
    name = "periodic"
    help = "exact period of a cyclotomic point under a Hénon map"

    def add_arguments(self, parser):
        parser.add_argument("--map", required=True, help=HENON_HELP)
        parser.add_argument("--point", required=True)
        parser.add_argument("--period-bound", type=int, default=config.SCAN_PERIOD_BOUND)

    def execute(self, args) -> dict:
        h = parse_henon(args.map)
        period = is_periodic(h, parse_point(args.point), args.period_bound)
        return {"periodic": period is not None, "period": period}


class HenonScanCommand(BaseCommand):
    name = "henon-scan"
    help = "all periodic points with cyclotomic coordinates in a bounded family"

    def add_arguments(self, parser):
        parser.add_argument("--map", required=True, help=HENON_HELP)
        parser.add_argument("--conductor-bound", type=int, default=config.SCAN_CONDUCTOR_BOUND)
        parser.add_argument("--house-bound", default=str(config.SCAN_HOUSE_BOUND))
        parser.add_argument("--denom", type=int, default=config.SCAN_DENOM)
        parser.add_argument("--period-bound", type=int, default=config.SCAN_PERIOD_BOUND)
        parser.add_argument("--workers", type=int, default=config.N_JOBS)
        parser.add_argument("--checkpoint", default=None, help="JSON file recording completed conductor classes")
        parser.add_argument("--jsonl", action="store_true", help="one JSON line per hit, then a summary line")

    def execute(self, args) -> dict | list[dict]:
        h = parse_henon(args.map)
        hits = cyclo_periodic_scan(
            h,
            conductor_bound=args.conductor_bound,
            house_bound=parse_fraction(args.house_bound),
            denom=args.denom,
            n_max=args.period_bound,
            workers=args.workers,
            checkpoint=args.checkpoint,
        )
        radius = scan_radius(h)
        summary = {
            "radius": format_float(radius) if radius is not None else None,
            "degree_profile": h.degree_profile().to_dict(),
            "count": len(hits),
        }
        if args.jsonl:
            return [{"kind": "hit", **hit.to_dict()} for hit in hits] + [{"kind": "summary", **summary}]
        return {**summary, "hits": [hit.to_dict() for hit in hits]}
