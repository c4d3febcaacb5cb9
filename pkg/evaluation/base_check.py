from abc import ABC, abstractmethod
import logging

import numpy as np

logger = logging.getLogger(__name__)


class BaseCheck(ABC):
    """
    驗收檢查的抽象基礎類別。

    每個檢查讀取 context、把結果寫入 context["results"][name] 後回傳 context，
    結果至少包含 passed (bool) 與 details (dict)。
    """

    name = ""

    def __init__(self, config, params: dict | None = None):
        self.config = config
        self.params = dict(params or {})
        self.rng = np.random.default_rng(config.RANDOM_STATE)

    @abstractmethod
    def run(self, context: dict) -> tuple[bool, dict]:
        """
        執行檢查本身，回傳 (passed, details)。
        """
        pass

    def execute(self, context: dict) -> dict:
        logger.info("Executing check %s with %s", self.name, self.params)
        passed, details = self.run(context)
        context.setdefault("results", {})[self.name] = {"passed": bool(passed), "details": details}
        if not passed:
            logger.warning("Check %s FAILED: %s", self.name, details)
        return context
