"""
輸出報表的 pydantic 模型

JSON 輸出一律經由這些模型序列化；`report_schemas()` 匯出的 JSON Schema 即為對外的格式約定。
多項式係數一律由高次到低次排列（例如 q^4 - 15q^3 + ... 為 [1, -15, ...]）。
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class PolyRow(BaseModel):
    """計數表的一列"""
    key: str
    key_poly: Optional[List[int]] = None
    weight: Optional[int] = None
    poly: List[int] = Field(description="由高次到低次的整數係數")
    expanded: str
    factored: str
    classes: List[str] = Field(default_factory=list)
    exceptions: Optional[List[int]] = None
    atlas: Optional[str] = None
    value: Optional[int] = Field(default=None, description="在指定 q 的取值")


class TableReport(BaseModel):
    """表格報表"""
    title: str
    key_label: str
    rows: List[PolyRow]
    identities: Dict[str, bool] = Field(default_factory=dict)
    average: Optional[str] = None
    q: Optional[int] = None


class ClassInfo(BaseModel):
    """共軛類資料"""
    name: str
    atlas: str
    swinnerton_dyer: str
    size: int
    order: int
    centralizer: int
    parity: str
    trace_v6: int
    char_poly: List[int]
    fixed_lines: int
    fixed_tritangents: int
    fixed_double_sixes: int


class ClassTable(BaseModel):
    """共軛類一覽"""
    classes: List[ClassInfo]


class CharacterRow(BaseModel):
    """不可約特徵標的一列"""
    name: str
    aliases: List[str] = Field(default_factory=list)
    degree: int
    values: List[int]


class CharacterReport(BaseModel):
    classes: List[str]
    rows: List[CharacterRow]


class ClassifyReport(BaseModel):
    """單一三次型的分類結果"""
    form: str
    monomials: str
    smooth: bool
    verdict: str
    class_name: Optional[str] = None
    atlas: Optional[str] = None
    size: Optional[int] = None
    order: Optional[int] = None
    point_counts: Optional[List[int]] = None
    rational_lines: Optional[int] = None


class CensusClassRow(BaseModel):
    name: str
    expected: int
    observed: int
    orbits: List[str]
    orbit_sizes: List[int]
    matched: bool


class CensusReport(BaseModel):
    """F_2 普查報表"""
    q: int
    smooth_depth: int
    orbit_count: int
    total_forms: int
    smooth_forms: int
    expected_total: int
    classes: List[CensusClassRow]
    matched_classes: int
    mismatches: List[str] = Field(default_factory=list)
    sampled_members: int = 0
    status: str


class CheckResult(BaseModel):
    """單項不變量檢查"""
    id: str
    description: str
    passed: bool
    detail: str = ""


class VerifyReport(BaseModel):
    checks: List[CheckResult]
    passed: int
    failed: int
    status: str


def report_schemas() -> Dict[str, dict]:
    """各報表模型的 JSON Schema"""
    return {
        model.__name__: model.model_json_schema()
        for model in (TableReport, CharacterReport, ClassTable, ClassifyReport, CensusReport, VerifyReport)
    }
