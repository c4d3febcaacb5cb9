import json
import logging
import time
from pathlib import Path

import pandas as pd

from utils.errors import UsageError
from utils.helpers import ensure_dir_exists
from .base_check import BaseCheck
from .algebra_checks import DecompositionCheck, FixedPointCountsCheck, LoxtonCheck, MonomialDegreesCheck
from .dynamics_checks import (
    ChebyshevCheck,
    EscapeSoundnessCheck,
    HenonProfileCheck,
    HenonScanCheck,
    MonomialWitnessesCheck,
)

logger = logging.getLogger(__name__)

CHECK_CLASSES = {
    cls.name: cls
    for cls in (
        MonomialDegreesCheck,
        FixedPointCountsCheck,
        DecompositionCheck,
        EscapeSoundnessCheck,
        ChebyshevCheck,
        HenonProfileCheck,
        HenonScanCheck,
        MonomialWitnessesCheck,
        LoxtonCheck,
    )
}


class AcceptanceSuite:
    """
    依 config.ACCEPTANCE_CHECKS 的順序執行驗收檢查。
    單一檢查失敗或拋出例外時記錄下來並繼續執行其餘檢查。
    """

    def __init__(self, config, only: list | None = None, quick: bool = False):
        self.config = config
        self.quick = quick
        self.checks: list[BaseCheck] = []
        self.context = {}
        self._register_checks(only)

    def _register_checks(self, only):
        """
        only 可以是檢查名稱或 1 起算的編號。
        """
        names = list(self.config.ACCEPTANCE_CHECKS)
        if only:
            selected = []
            for item in only:
                key = names[int(item) - 1] if str(item).isdigit() and 1 <= int(item) <= len(names) else str(item)
                if key not in CHECK_CLASSES:
                    raise UsageError(f"Unknown acceptance check: {item}")
                selected.append(key)
            names = [n for n in names if n in selected]
        for name in names:
            params = dict(self.config.ACCEPTANCE_PARAMS.get(name, {}))
            if self.quick:
                params.update(self.config.ACCEPTANCE_QUICK_PARAMS.get(name, {}))
            self.checks.append(CHECK_CLASSES[name](self.config, params))
        logger.info("Acceptance suite registered with %d checks.", len(self.checks))

    def run(self) -> pd.DataFrame:
        logger.info("========== ACCEPTANCE SUITE STARTING ==========")
        start_time = time.time()
        rows = []
        for check in self.checks:
            logger.info("======= EXECUTING CHECK: %s =======", check.name)
            check_start = time.time()
            try:
                self.context = check.execute(self.context)
                result = self.context["results"][check.name]
                error = None
            except Exception as e:
                logger.exception("!!!!!! ERROR IN CHECK: %s !!!!!!", check.name)
                result = {"passed": False, "details": {}}
                error = f"{type(e).__name__}: {e}"
                self.context.setdefault("results", {})[check.name] = {**result, "error": error}
            elapsed = time.time() - check_start
            logger.info("======= CHECK %s COMPLETED IN %.2fs =======", check.name, elapsed)
            rows.append({
                "check": check.name,
                "passed": result["passed"],
                "seconds": round(elapsed, 2),
                "error": error,
            })
        logger.info("========== ACCEPTANCE SUITE FINISHED ==========")
        logger.info("Total execution time: %.2f seconds.", time.time() - start_time)
        return pd.DataFrame(rows, columns=["check", "passed", "seconds", "error"])

    def report(self, summary: pd.DataFrame) -> dict:
        return {
            "quick": self.quick,
            "passed": bool(summary["passed"].all()) if len(summary) else True,
            "summary": json.loads(summary.to_json(orient="records")),
            "details": {name: r.get("details", {}) for name, r in self.context.get("results", {}).items()},
        }

    def save_report(self, report: dict, path=None):
        path = Path(path) if path else self.config.ACCEPTANCE_REPORT_PATH
        ensure_dir_exists(path.parent)
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True, default=str)
        logger.info("Acceptance report saved to %s", path)
