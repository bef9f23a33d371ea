"""
領域例外階層

所有不變量檢查失敗都以下列例外 fail-fast，訊息需指出失敗的關係式。
"""


class CubicStatsError(Exception):
    """本專案所有例外的基底類別"""


class ConstructionError(CubicStatsError):
    """圖、群或共軛類建構結果與預期不符"""


class DataIntegrityError(CubicStatsError):
    """參考資料（特徵標表、上同調資料）或推導值不一致"""


class NotAVirtualCharacterError(CubicStatsError):
    """類函數分解出非整數重數"""


class InconsistentCountsError(CubicStatsError):
    """點數序列無法對應到任何 Frobenius 共軛類"""


class CensusMismatchError(CubicStatsError):
    """普查結果與公式不符"""

    def __init__(self, message: str, offending_orbits=None):
        super().__init__(message)
        self.offending_orbits = list(offending_orbits or [])


class UsageError(CubicStatsError):
    """命令列參數錯誤"""
