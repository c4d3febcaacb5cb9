import os
from pathlib import Path

# --- 基本路徑 ---
BASE_DIR = Path(__file__).resolve().parent

# --- 輸出路徑 ---
OUTPUT_DIR = BASE_DIR / "output"
CHECKPOINT_DIR = OUTPUT_DIR / "checkpoints"
RESULTS_DIR = OUTPUT_DIR / "results"
ACCEPTANCE_REPORT_PATH = RESULTS_DIR / "acceptance_summary.json"

# --- 輸出格式 ---
SCHEMA = "toridyn/1"
FLOAT_DIGITS = 12

# --- CLI 結束碼 ---
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3

# --- 日誌 ---
LOG_LEVEL = os.environ.get("TORIDYN_LOG_LEVEL", "WARNING")
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

# --- 整數線性代數 (intlat) ---
# 維度上限為軟性限制，用於控制分圓指標的列舉範圍
DIM_CAP = 12
# 測試模式下開啟：每次 hnf / snf 都重新驗證轉換矩陣是否為么模
VERIFY_TRANSFORMS = os.environ.get("TORIDYN_VERIFY", "0") == "1"

# --- 數值容許誤差 ---
NUMERIC_TOL = 1e-9
RELATIVE_TOL = 1e-6
# 雙精度單位捨入
UNIT_ROUNDOFF = 2.0 ** -53

# --- 分圓體 (cyclo) ---
LOXTON_MAX_TERMS = 8
LOXTON_MAX_ORDER = 120
LOXTON_DEFAULT_TERMS = 4
LOXTON_DEFAULT_ORDER = 24

# --- 仿射動力系統 (affdyn) ---
ITERATION_BUDGET = int(os.environ.get("TORIDYN_BUDGET", "100000"))
GREEN_MAX_ITERS = 60
# 浮點迭代前檢查 d·log‖w‖ + log(F+H) 不超過此值 (log 1.8e308 ≈ 709.8)
GREEN_LOG_CEILING = 700.0
BACKWARD_BUDGET = 1000

# --- Hénon 掃描 ---
SCAN_CONDUCTOR_BOUND = 8
SCAN_HOUSE_BOUND = 2
SCAN_DENOM = 1
SCAN_PERIOD_BOUND = 6
# 桌面規模上限
SCAN_MAX_CONDUCTOR = 24
SCAN_MAX_DENOM = 6
SCAN_MAX_PERIOD = 12
# 數值預篩的相對邊界
SCAN_NUMERIC_MARGIN = 1e-6
# 候選點數量超過此值時拒絕執行 (先估算成本)
SCAN_MAX_CANDIDATES = 2_000_000
N_JOBS = 1

# --- 預設映射 (CLI --map) ---
# 多項式以 {"指數": "係數"} 表示，與 JSON 格式一致
MAP_PRESETS = {
    "zsq": [{"2": "1"}],
    "cheb2": [{"2": "1", "0": "-2"}],
    "zsq_plus1": [{"2": "1", "0": "1"}],
    "zsq_half": [{"2": "1", "0": "1/2"}],
    "henon_basic": [{"2,0": "1", "0,0": "1", "0,1": "-1"}, {"1,0": "1"}],
}
HENON_PRESETS = {
    "henon_basic": [{"poly": {"2": "1", "0": "1"}, "a": "1", "b": "1"}],
    "henon_pure": [{"poly": {"2": "1"}, "a": "1", "b": "1"}],
}

# --- 驗收測試 (acceptance) ---
RANDOM_STATE = 10
ACCEPTANCE_CHECKS = [
    "monomial_degrees",
    "fixed_point_counts",
    "decomposition",
    "escape_soundness",
    "chebyshev",
    "henon_profile",
    "henon_scan",
    "monomial_witnesses",
    "loxton",
]
ACCEPTANCE_PARAMS = {
    "monomial_degrees": {"samples": 200, "max_dim": 4, "entry_bound": 5},
    "fixed_point_counts": {"samples": 50, "max_dim": 3, "max_period": 3, "max_count": 200},
    "decomposition": {"samples": 100, "max_dim": 4, "entry_bound": 3},
    "escape_soundness": {"conductor_bound": 60, "denom": 4, "house_bound": 2, "max_terms": 2, "max_class_size": 20000},
    "chebyshev": {"max_degree": 12},
    "henon_profile": {},
    "henon_scan": {"conductor_bound": 8, "denom": 1, "house_bound": 2, "period_bound": 6},
    "monomial_witnesses": {},
    "loxton": {"conductors": [3, 4, 5, 8, 12], "house_bound": 2, "max_terms": 3, "order_bound": 24},
}
# --quick 模式下覆寫的參數
ACCEPTANCE_QUICK_PARAMS = {
    "monomial_degrees": {"samples": 20},
    "fixed_point_counts": {"samples": 10, "max_count": 60},
    "decomposition": {"samples": 20},
    "escape_soundness": {"conductor_bound": 12, "denom": 2, "max_class_size": 5000},
    "chebyshev": {"max_degree": 6},
    "henon_scan": {"conductor_bound": 4, "period_bound": 3},
    "loxton": {"conductors": [3, 4], "max_terms": 2},
}
