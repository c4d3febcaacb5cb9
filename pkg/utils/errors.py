class ToridynError(ValueError):
    """
    所有領域錯誤的基礎類別。CLI 將其轉換為結束碼 3。
    """

    kind = "domain_error"


class UsageError(ToridynError):
    """ 使用方式錯誤 (未知子命令、JSON 格式錯誤)，CLI 結束碼 2。 """

    kind = "usage_error"


class DimensionMismatchError(ToridynError):
    kind = "dimension_mismatch"


class SingularMatrixError(ToridynError):
    kind = "singular_matrix"


class NonIsolatedFixedLocusError(ToridynError):
    kind = "non_isolated_fixed_locus"


class NotPrimitiveError(ToridynError):
    kind = "not_primitive"


class NonIntegralError(ToridynError):
    kind = "non_integral"


class NonRegularMapError(ToridynError):
    kind = "non_regular_map"


class InvalidCertificateError(ToridynError):
    kind = "invalid_certificate"


class InconsistentDataError(ToridynError):
    kind = "inconsistent_data"


class ScanBudgetError(ToridynError):
    kind = "scan_budget"
