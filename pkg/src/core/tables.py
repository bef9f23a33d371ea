"""
參考資料：W(E6) 共軛類、特徵標表、Y/PGL(4) 的上同調資料，以及已發表的計數表

這裡只放逐字轉錄的資料，所有檢查（正交性、與計算結果比對）由 chars 與
counting 模組負責。類名稱使用 ASCII 虛擬循環型記號，例如 "(1^-2,2^4)"。
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple


@dataclass(frozen=True)
class ClassRecord:
    """一個共軛類的參考資料列"""
    name: str
    atlas: str
    swinnerton_dyer: str
    order: int
    size: int
    centralizer: int
    even: bool


CLASS_RECORDS: Tuple[ClassRecord, ...] = (
    ClassRecord("(1^6)", "1A", "C1", 1, 1, 51840, True),
    ClassRecord("(1^2,2^2)", "2B", "C2", 2, 270, 192, True),
    ClassRecord("(1^-2,2^4)", "2A", "C3", 2, 45, 1152, True),
    ClassRecord("(1^3,3)", "3D", "C6", 3, 240, 216, True),
    ClassRecord("(1^-3,3^3)", "3A,3B", "C11", 3, 80, 648, True),
    ClassRecord("(3^2)", "3C", "C9", 3, 480, 108, True),
    ClassRecord("(1^2,2^-2,4^2)", "4A", "C4", 4, 540, 96, True),
    ClassRecord("(2,4)", "4B", "C5", 4, 3240, 16, True),
    ClassRecord("(1,5)", "5A", "C15", 5, 5184, 10, True),
    ClassRecord("(1,2,3^-1,6)", "6C,6D", "C7", 6, 1440, 36, True),
    ClassRecord("(1^-1,2^2,3)", "6F", "C8", 6, 2160, 24, True),
    ClassRecord("(1^-2,2,6)", "6E", "C10", 6, 1440, 36, True),
    ClassRecord("(1,2^-2,3^-1,6^2)", "6A,6B", "C12", 6, 720, 72, True),
    ClassRecord("(3^-1,9)", "9A,9B", "C14", 9, 5760, 9, True),
    ClassRecord("(1^-1,2,3,4^-1,6^-1,12)", "12A,12B", "C13", 12, 4320, 12, True),
    ClassRecord("(1^4,2)", "2C", "C16", 2, 36, 1440, False),
    ClassRecord("(2^3)", "2D", "C17", 2, 540, 96, False),
    ClassRecord("(1^2,4)", "4D", "C18", 4, 1620, 32, False),
    ClassRecord("(1^-2,2^2,4)", "4C", "C19", 4, 540, 96, False),
    ClassRecord("(1,2,3)", "6G", "C21", 6, 1440, 36, False),
    ClassRecord("(1^-2,2,3^2)", "6H", "C22", 6, 1440, 36, False),
    ClassRecord("(6)", "6I", "C23", 6, 4320, 12, False),
    ClassRecord("(2,4^-1,8)", "8A", "C20", 8, 6480, 8, False),
    ClassRecord("(1^-1,2,5)", "10A", "C25", 10, 5184, 10, False),
    ClassRecord("(1,2^-1,3^-1,4,6)", "12C", "C24", 12, 4320, 12, False),
)

GROUP_ORDER = 51840

# 特徵標表的不可約表示（撇號版本由符號特徵標扭轉重建）
UNPRIMED_IRREPS: Tuple[str, ...] = (
    "V1", "V6", "V15_1", "V15_2", "V20", "V24", "V30", "V60", "V64", "V81",
)
SPLIT_IRREPS: Tuple[str, ...] = ("U10", "U20", "U60", "U80", "U90")
IRREP_NAMES: Tuple[str, ...] = (
    UNPRIMED_IRREPS + tuple(f"{name}'" for name in UNPRIMED_IRREPS) + SPLIT_IRREPS
)

# Frame / Atlas / Carter 記號
IRREP_ALIASES: Dict[str, Tuple[str, str, str]] = {
    "V1": ("1_p", "χ1", "φ1,0"),
    "V6": ("6_p", "χ4", "φ6,1"),
    "V15_1": ("15_p", "χ7", "φ15,5"),
    "V15_2": ("15_q", "χ8", "φ15,4"),
    "V20": ("20_p", "χ9", "φ20,2"),
    "V24": ("24_p", "χ10", "φ24,6"),
    "V30": ("30_p", "χ11", "φ30,3"),
    "V60": ("60_p", "χ18", "φ60,5"),
    "V64": ("64_p", "χ19", "φ64,4"),
    "V81": ("81_p", "χ20", "φ81,6"),
    "V1'": ("1_n", "", "φ1,36"),
    "V6'": ("6_n", "", "φ6,25"),
    "V15_1'": ("15_n", "", "φ15,17"),
    "V15_2'": ("15_m", "", "φ15,16"),
    "V20'": ("20_n", "", "φ20,20"),
    "V24'": ("24_n", "", "φ24,12"),
    "V30'": ("30_n", "", "φ30,15"),
    "V60'": ("60_n", "", "φ60,11"),
    "V64'": ("64_n", "", "φ64,13"),
    "V81'": ("81_n", "", "φ81,10"),
    "U10": ("10_s", "χ2+χ3", "φ10,9"),
    "U20": ("20_s", "χ5+χ6", "φ20,10"),
    "U60": ("60_s", "χ12+χ13", "φ60,8"),
    "U80": ("80_s", "χ14+χ15", "φ80,7"),
    "U90": ("90_s", "χ16+χ17", "φ90,8"),
}

# 每列：類名稱 -> V1 V6 V15_1 V15_2 V20 V24 V30 V60 V64 V81 [U10 U20 U60 U80 U90]
# 奇類的 U 欄位留白，讀作 0。
CHARACTER_ROWS: Dict[str, Tuple[int, ...]] = {
    "(1^6)": (1, 6, 15, 15, 20, 24, 30, 60, 64, 81, 10, 20, 60, 80, 90),
    "(1^2,2^2)": (1, 2, -1, 3, 4, 0, 2, 4, 0, -3, 2, -4, 4, 0, -6),
    "(1^-2,2^4)": (1, -2, -1, 7, 4, 8, -10, -4, 0, 9, -6, 4, 12, -16, -6),
    "(1^3,3)": (1, 3, 3, 0, 5, 0, 3, -3, 4, 0, -2, 2, -6, -4, 0),
    "(1^-3,3^3)": (1, -3, 6, -3, 2, 6, 3, 6, -8, 0, 1, -7, -3, -10, 9),
    "(3^2)": (1, 0, 0, 3, -1, 3, 3, -3, -2, 0, 4, 2, 0, 2, 0),
    "(1^2,2^-2,4^2)": (1, 2, 3, -1, 0, 0, -2, 0, 0, -3, 2, 4, 4, 0, 2),
    "(2,4)": (1, 0, -1, 1, 0, 0, 0, 0, 0, -1, -2, 0, 0, 0, 2),
    "(1,5)": (1, 1, 0, 0, 0, -1, 0, 0, -1, 1, 0, 0, 0, 0, 0),
    "(1,2,3^-1,6)": (1, 1, -1, -2, 1, 2, -1, -1, 0, 0, 0, -2, 0, 2, 0),
    "(1^-1,2^2,3)": (1, -1, -1, 0, 1, 0, -1, 1, 0, 0, 2, 2, -2, 0, 0),
    "(1^-2,2,6)": (1, -2, 2, 1, 1, -1, -1, -1, 0, 0, 0, -2, 0, 2, 0),
    "(1,2^-2,3^-1,6^2)": (1, 1, 2, 1, -2, 2, -1, 2, 0, 0, -3, 1, -3, 2, -3),
    "(3^-1,9)": (1, 0, 0, 0, -1, 0, 0, 0, 1, 0, 1, -1, 0, -1, 0),
    "(1^-1,2,3,4^-1,6^-1,12)": (1, -1, 0, -1, 0, 0, 1, 0, 0, 0, -1, 1, 1, 0, -1),
    "(1^4,2)": (1, 4, 5, 5, 10, 4, 10, 10, 16, 9),
    "(2^3)": (1, 0, -3, 1, 2, 4, -2, 2, 0, -3),
    "(1^2,4)": (1, 2, 1, -1, 2, 0, 0, -2, 0, -1),
    "(1^-2,2^2,4)": (1, -2, 1, 3, 2, 0, -4, -2, 0, 3),
    "(1,2,3)": (1, 1, -1, 2, 1, -2, 1, 1, -2, 0),
    "(1^-2,2,3^2)": (1, -2, 2, -1, 1, 1, 1, 1, -2, 0),
    "(6)": (1, 0, 0, 1, -1, 1, 1, -1, 0, 0),
    "(2,4^-1,8)": (1, 0, -1, -1, 0, 0, 0, 0, 0, 1),
    "(1^-1,2,5)": (1, -1, 0, 0, 0, -1, 0, 0, 1, -1),
    "(1,2^-1,3^-1,4,6)": (1, 1, 1, 0, -1, 0, -1, 1, 0, 0),
}

# H^i(Y/PGL(4)) 以不可約表示的直和給出（重複出現代表重數）
Y_PGL_COHOMOLOGY: Dict[int, Tuple[str, ...]] = {
    0: ("V1",),
    1: ("V15_2",),
    2: ("V81",),
    3: ("V15_1", "U80", "U90"),
    4: ("V30", "V30'", "U10", "U80"),
}

# H*(UConf^2 S)，以複數次數 2k 為鍵
UCONF2_COHOMOLOGY: Dict[int, Tuple[str, ...]] = {
    0: ("V1",),
    2: ("V1", "V6"),
    4: ("V1", "V1", "V6", "V20"),
}

# ---- 已發表的計數表（以 q 的運算式轉錄）----

TABLE1: Dict[str, str] = {
    "(1^6)": "(q-2)*(q-3)*(q-5)**2",
    "(1^2,2^2)": "(q+1)**2*(q-2)*(q-3)",
    "(1^-2,2^4)": "(q-2)*(q-3)*(q**2-2*q-7)",
    "(1^3,3)": "q*(q+1)*(q**2-q+1)",
    "(1^-3,3^3)": "(q+1)**2*(q**2+q-3)",
    "(3^2)": "(q-2)*(q**3-q**2-2*q-6)",
    "(1^2,2^-2,4^2)": "(q+1)**3*(q-2)",
    "(2,4)": "(q+1)*(q-2)*(q**2+1)",
    "(1,5)": "q**2*(q**2+1)",
    "(1,2,3^-1,6)": "q*(q+1)*(q**2+q-1)",
    "(1^-1,2^2,3)": "q*(q+1)*(q**2-q+1)",
    "(1^-2,2,6)": "q*(q-2)*(q**2+q+2)",
    "(1,2^-2,3^-1,6^2)": "(q+1)*(q**3-2*q**2+2*q-3)",
    "(3^-1,9)": "q*(q+1)*(q**2-q+1)",
    "(1^-1,2,3,4^-1,6^-1,12)": "(q+1)**2*(q**2-q+1)",
    "(1^4,2)": "q*(q-1)*(q**2-4*q+5)",
    "(2^3)": "q*(q-1)*(q**2-3)",
    "(1^2,4)": "q*(q+1)**2*(q-1)",
    "(1^-2,2^2,4)": "q*(q-1)**3",
    "(1,2,3)": "q*(q-1)*(q**2-q-1)",
    "(1^-2,2,3^2)": "q*(q-1)*(q**2+2*q+2)",
    "(6)": "q**3*(q-1)",
    "(2,4^-1,8)": "q*(q+1)*(q**2+1)",
    "(1^-1,2,5)": "q**2*(q+1)*(q-1)",
    "(1,2^-1,3^-1,4,6)": "q*(q-1)*(q**2+q+1)",
}

# 第三欄：計數為零的 q。(1^2,2^-2,4^2) 的 q = 2 來自其多項式的根。
TABLE1_EXCEPTIONS: Dict[str, Tuple[int, ...]] = {
    "(1^6)": (2, 3, 5),
    "(1^2,2^2)": (2, 3),
    "(1^-2,2^4)": (2, 3),
    "(3^2)": (2,),
    "(1^2,2^-2,4^2)": (2,),
    "(2,4)": (2,),
    "(1^-2,2,6)": (2,),
}

TABLE2: List[Tuple[int, str]] = [
    (-2, "80*(q**2+q-3)*(q+1)**2"),
    (-1, "45*(77*q**4-43*q**3+45*q**2-181*q-42)"),
    (0, "432*(27*q**3-17*q**2+5*q+10)*(q+1)"),
    (1, "60*(347*q**4-51*q**3+27*q**2+161*q-12)"),
    (2, "144*(91*q**4-5*q**3+36*q**2-35*q-15)"),
    (3, "270*(9*q**2-13*q+2)*(q+1)**2"),
    (4, "240*(q**2-q+1)*(q+1)*q"),
    (5, "36*(q**2-4*q+5)*(q-1)*q"),
    (7, "(q-2)*(q-3)*(q-5)**2"),
]

TABLE3: List[Tuple[int, str]] = [
    (0, "576*(38*q**3-5*q**2+5)*q"),
    (1, "540*(39*q**4+3*q**3+3*q**2-3*q-10)"),
    (2, "2160*(q**2-q+1)*(q+1)*q"),
    (3, "240*(17*q**4-25*q+24)"),
    (4, "1440*(q**2+q-1)*(q+1)*q"),
    (5, "270*(q+1)**2*(q-2)*(q-3)"),
    (6, "240*(q**2-q+1)*(q+1)*q"),
    (7, "540*(q**2-3)*(q-1)*q"),
    (9, "80*(q**2+q-3)*(q+1)**2"),
    (13, "45*(q**2-2*q-7)*(q-2)*(q-3)"),
    (15, "36*(q**2-4*q+5)*(q-1)*q"),
    (45, "(q-2)*(q-3)*(q-5)**2"),
]

TABLE4: List[Tuple[str, str]] = [
    ("q**4-2*q**3+q**2", "80*(q+1)**2*(q**2+q-3)"),
    ("q**4-q**3+q**2", "2880*q*(q**3-3)"),
    ("q**4-q**3+2*q**2", "540*q*(q-1)**3"),
    ("q**4-q**3+4*q**2", "45*(q-2)*(q-3)*(q**2-2*q-7)"),
    ("q**4+q**2", "864*(q+1)*(11*q**3-6*q**2+5)"),
    ("q**4+2*q**2", "2160*q*(q+1)*(q**2-q+1)"),
    ("q**4+q**3+q**2", "960*(11*q**4-6*q**3+5*q+6)"),
    ("q**4+q**3+2*q**2", "3240*(q+1)*(3*q-2)*(q**2+1)"),
    ("q**4+q**3+4*q**2", "540*q*(q-1)*(q**2-3)"),
    ("q**4+2*q**3+q**2", "720*(q+1)*(q**3-2*q**2+2*q-3)"),
    ("q**4+2*q**3+2*q**2", "4320*q*(q-1)*(q**2+q+1)"),
    ("q**4+2*q**3+3*q**2", "5184*q**2*(q**2+1)"),
    ("q**4+2*q**3+4*q**2", "2880*q**4"),
    ("q**4+3*q**3+4*q**2", "540*(q+1)**3*(q-2)"),
    ("q**4+3*q**3+6*q**2", "1620*q*(q+1)**2*(q-1)"),
    ("q**4+3*q**3+8*q**2", "270*(q+1)**2*(q-2)*(q-3)"),
    ("q**4+4*q**3+10*q**2", "240*q*(q+1)*(q**2-q+1)"),
    ("q**4+5*q**3+16*q**2", "36*q*(q-1)*(q**2-4*q+5)"),
    ("q**4+7*q**3+28*q**2", "(q-2)*(q-3)*(q-5)**2"),
]


def class_record(name: str) -> ClassRecord:
    for record in CLASS_RECORDS:
        if record.name == name:
            return record
    raise KeyError(f"未知的共軛類: {name}")
