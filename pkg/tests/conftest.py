import random

import numpy as np
import pytest

import config


@pytest.fixture(autouse=True)
def verify_transforms(monkeypatch):
    """ 測試時每次 hnf / snf 都驗證轉換矩陣。 """
    monkeypatch.setattr(config, "VERIFY_TRANSFORMS", True)


@pytest.fixture(autouse=True)
def seeded():
    random.seed(config.RANDOM_STATE)
    np.random.seed(config.RANDOM_STATE)


@pytest.fixture
def rng():
    return np.random.default_rng(config.RANDOM_STATE)
