import config
from evaluation.acceptance import AcceptanceSuite
from .base_command import BaseCommand


class AcceptanceCommand(BaseCommand):
    name = "acceptance"
    help = "run the acceptance checks and write a summary report"

    def add_arguments(self, parser):
        parser.add_argument("--only", nargs="+", help="check numbers (1-9) or names: " + ", ".join(config.ACCEPTANCE_CHECKS))
        parser.add_argument("--quick", action="store_true", help="reduced sample sizes and bounds")
        parser.add_argument("--report", default=None, help="report path (default: output/results/acceptance_summary.json)")

    def execute(self, args) -> dict:
        suite = AcceptanceSuite(config, only=args.only, quick=args.quick)
        summary = suite.run()
        report = suite.report(summary)
        suite.save_report(report, args.report)
        return report
