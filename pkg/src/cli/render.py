"""
報表建構與輸出

build_* 函式把核心模組的計算結果整理成 pydantic 報表模型；
render() 把任一報表輸出成 Markdown、CSV 或 JSON。輸出中不含時間戳記等變動資訊，
相同輸入保證得到逐位元組相同的結果。
"""

import csv
import io
import logging
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel

from ..core.chars import load_character_table, permutation_character
from ..core.counting import (
    CountRow,
    average_identity_holds,
    burnside_average,
    expected_weighted_total,
    marking_distribution,
    row_total,
    table1,
    table2,
    table3,
    table4,
    weighted_total,
)
from ..core.errors import CubicStatsError, UsageError
from ..core.poly import Q, QPoly, is_prime_power
from ..core.tables import IRREP_ALIASES, class_record
from ..core.weyl import WeylContext, get_weyl_context
from ..oracle.census import CensusResult, classify_frobenius, examine_form
from ..oracle.cubic import CubicForm
from .models import (
    CensusClassRow,
    CensusReport,
    CharacterReport,
    CharacterRow,
    ClassInfo,
    ClassTable,
    ClassifyReport,
    PolyRow,
    TableReport,
    VerifyReport,
)

logger = logging.getLogger(__name__)

FORMATS = ("md", "csv", "json")
MARKINGS = ("lines", "tritangents", "double-sixes", "points", "uconf2")

TABLE_TITLES = {
    1: ("F_q 上 Frobenius 落在各共軛類的立方曲面數（正規化）", "類"),
    2: ("依 #S(F_q) = q^2 + tq + 1 的 t 分佈", "t"),
    3: ("依 F_q 有理三切面數的分佈", "三切面數"),
    4: ("依 #UConf^2 S(F_q) 的分佈", "#UConf^2 S(F_q)"),
}


# ---- 建構 ----


def _key_text(key) -> Tuple[str, Optional[List[int]]]:
    if isinstance(key, QPoly):
        return key.to_str(), key.high_to_low()
    return str(key), None


def poly_row(row: CountRow, atlas_names: bool = False, with_exceptions: bool = False) -> PolyRow:
    key, key_poly = _key_text(row.key)
    atlas = None
    if atlas_names and isinstance(row.key, str):
        atlas = class_record(row.key).atlas
    return PolyRow(
        key=key,
        key_poly=key_poly,
        weight=row.weight,
        poly=row.value.high_to_low(),
        expanded=row.value.to_str(),
        factored=row.value.factored(),
        classes=list(row.classes),
        exceptions=list(row.exceptions) if with_exceptions else None,
        atlas=atlas,
    )


def build_table_report(which: int, context: Optional[WeylContext] = None, atlas_names: bool = False) -> TableReport:
    """重建表 1–4"""
    if which not in TABLE_TITLES:
        raise UsageError(f"未知的表格編號: {which}（可用 1–4）")
    context = context or get_weyl_context()
    title, key_label = TABLE_TITLES[which]
    identities = {}
    average = None
    if which == 1:
        rows = table1(context)
    elif which == 2:
        rows = table2(context)
        identities["t 的曲面平均為 1"] = average_identity_holds(rows, QPoly.constant(1))
        average = (Q ** 2 + Q + 1).to_str()
    elif which == 3:
        rows = table3(context)
        identities["三切面的曲面平均為 1"] = average_identity_holds(rows, QPoly.constant(1))
        average = "1"
    else:
        rows = table4(context)
        target = Q ** 2 * (Q ** 2 + Q + 2)
        identities["UConf^2 的曲面平均為 q^2(q^2 + q + 2)"] = average_identity_holds(rows, target)
        average = target.to_str()
    return TableReport(
        title=title,
        key_label=key_label,
        rows=[poly_row(r, atlas_names, with_exceptions=which == 1) for r in rows],
        identities=identities,
        average=average,
    )


def _marking_identities(action: str, rows: Sequence[CountRow], context: WeylContext) -> dict:
    perm = permutation_character(action, context)
    identities = {
        "Burnside 平均為 1": burnside_average(action, context) == 1,
        "Σ #c·poly·fix = #W·Σ(-1)^i q^(4-i)⟨H^i, perm⟩": weighted_total(rows) == expected_weighted_total(perm),
    }
    if action == "double_sixes":
        identities["曲面平均為 1 - 1/q"] = Q * weighted_total(rows) == (Q - 1) * row_total(rows)
    else:
        identities["曲面平均為 1"] = average_identity_holds(rows, QPoly.constant(1))
    return identities


def build_distribution_report(
    marking: str,
    fiber: Optional[Tuple[str, int]] = None,
    context: Optional[WeylContext] = None,
) -> TableReport:
    """標記的分佈表；points 與 uconf2 分別即為表 2 與表 4"""
    if marking not in MARKINGS:
        raise UsageError(f"未知的標記: {marking}（可用 {', '.join(MARKINGS)}）")
    context = context or get_weyl_context()
    if marking in ("points", "uconf2"):
        if fiber is not None:
            raise UsageError(f"{marking} 不接受 --fiber")
        return build_table_report(2 if marking == "points" else 4, context)

    action = marking.replace("-", "_")
    rows = marking_distribution(action, fiber, context)
    if fiber is None:
        identities = _marking_identities(action, rows, context)
        average = "1 - 1/q" if action == "double_sixes" else "1"
        key_label = f"不動{marking}數"
        title = f"依 F_q 有理 {marking} 數的分佈"
    else:
        identities = {}
        average = None
        flavor, n = fiber
        key_label = f"fix·#{flavor}^{n}"
        title = f"{marking} 標記配上 {flavor}^{n} 纖維的點數分佈"
    return TableReport(
        title=title,
        key_label=key_label,
        rows=[poly_row(r) for r in rows],
        identities=identities,
        average=average,
    )


def build_class_table(context: Optional[WeylContext] = None) -> ClassTable:
    context = context or get_weyl_context()
    classes = []
    for c in context.classes:
        record = c.record
        classes.append(ClassInfo(
            name=c.name,
            atlas=record.atlas,
            swinnerton_dyer=record.swinnerton_dyer,
            size=c.size,
            order=c.order,
            centralizer=record.centralizer,
            parity=c.parity,
            trace_v6=c.trace_v6,
            char_poly=c.char_poly.high_to_low(),
            fixed_lines=context.fixed_points(c, "lines"),
            fixed_tritangents=context.fixed_points(c, "tritangents"),
            fixed_double_sixes=context.fixed_points(c, "double_sixes"),
        ))
    return ClassTable(classes=classes)


def build_character_report(context: Optional[WeylContext] = None, atlas_names: bool = False) -> CharacterReport:
    context = context or get_weyl_context()
    table = load_character_table()
    rows = []
    for name in table.names:
        chi = table[name]
        rows.append(CharacterRow(
            name=name,
            aliases=list(a for a in IRREP_ALIASES.get(name, ()) if a),
            degree=int(chi.degree),
            values=[int(v) for v in chi.values],
        ))
    columns = [c.record.atlas if atlas_names else c.name for c in context.classes]
    return CharacterReport(classes=columns, rows=rows)


def build_classify_report(form: CubicForm, smooth_depth: int = 6, context: Optional[WeylContext] = None) -> ClassifyReport:
    """單一三次型的光滑性與 Frobenius 類"""
    smooth, counts, lines = examine_form(form.bits, smooth_depth)
    if not smooth:
        return ClassifyReport(form=form.to_hex(), monomials=str(form), smooth=False, verdict="singular")
    context = context or get_weyl_context()
    try:
        c = classify_frobenius(counts, context=context)
    except CubicStatsError as exc:
        logger.error(f"{form.to_hex()} 的點數無法分類: {exc}")
        raise
    return ClassifyReport(
        form=form.to_hex(),
        monomials=str(form),
        smooth=True,
        verdict="smooth",
        class_name=c.name,
        atlas=c.record.atlas,
        size=c.size,
        order=c.order,
        point_counts=list(counts),
        rational_lines=lines,
    )


def build_census_report(result: CensusResult) -> CensusReport:
    return CensusReport(
        q=result.q,
        smooth_depth=result.smooth_depth,
        orbit_count=result.orbit_count,
        total_forms=result.total_forms,
        smooth_forms=result.smooth_forms,
        expected_total=result.expected_total,
        classes=[
            CensusClassRow(
                name=t.name,
                expected=t.expected,
                observed=t.observed,
                orbits=list(t.orbits),
                orbit_sizes=list(t.orbit_sizes),
                matched=t.matched,
            )
            for t in result.tallies
        ],
        matched_classes=result.matched_classes,
        mismatches=list(result.mismatches),
        sampled_members=result.sampled_members,
        status="PASS" if result.passed else "FAIL",
    )


def evaluate_report(report: TableReport, q: int) -> TableReport:
    """在每列加上多項式於 q 的取值"""
    if not is_prime_power(q):
        raise UsageError(f"q = {q} 不是質數冪")
    rows = [r.model_copy(update={"value": QPoly.from_high(r.poly)(q)}) for r in report.rows]
    return report.model_copy(update={"rows": rows, "q": q})


# ---- 輸出 ----


def _tabulate(report: BaseModel) -> Tuple[List[str], List[List[str]], List[str]]:
    """(欄名, 資料列, 附註列)"""
    if isinstance(report, TableReport):
        with_weight = any(r.weight is not None for r in report.rows)
        with_exceptions = any(r.exceptions is not None for r in report.rows)
        with_atlas = any(r.atlas for r in report.rows)
        headers = [report.key_label]
        headers += ["#c"] if with_weight else []
        headers += ["factored", "coefficients", "classes"]
        headers += ["exceptions"] if with_exceptions else []
        headers += ["atlas"] if with_atlas else []
        headers += [f"q={report.q}"] if report.q is not None else []
        rows = []
        for r in report.rows:
            line = [r.key]
            line += [str(r.weight)] if with_weight else []
            line += [r.factored, " ".join(str(a) for a in r.poly), " ".join(r.classes)]
            line += [" ".join(str(q) for q in r.exceptions or [])] if with_exceptions else []
            line += [r.atlas or ""] if with_atlas else []
            line += [str(r.value)] if report.q is not None else []
            rows.append(line)
        notes = [f"{name}: {'PASS' if ok else 'FAIL'}" for name, ok in report.identities.items()]
        if report.average is not None:
            notes.append(f"average: {report.average}")
        return headers, rows, notes
    if isinstance(report, ClassTable):
        headers = ["class", "atlas", "sd", "#c", "order", "centralizer", "parity", "trace_v6",
                   "char_poly", "lines", "tritangents", "double_sixes"]
        rows = [
            [c.name, c.atlas, c.swinnerton_dyer, str(c.size), str(c.order), str(c.centralizer), c.parity,
             str(c.trace_v6), " ".join(str(a) for a in c.char_poly), str(c.fixed_lines),
             str(c.fixed_tritangents), str(c.fixed_double_sixes)]
            for c in report.classes
        ]
        return headers, rows, []
    if isinstance(report, CharacterReport):
        headers = ["irrep", "aliases", "degree"] + report.classes
        rows = [[r.name, " ".join(r.aliases), str(r.degree)] + [str(v) for v in r.values] for r in report.rows]
        return headers, rows, []
    if isinstance(report, ClassifyReport):
        data = report.model_dump()
        rows = [
            [key, " ".join(str(v) for v in value) if isinstance(value, list) else str(value)]
            for key, value in data.items()
            if value is not None
        ]
        return ["field", "value"], rows, []
    if isinstance(report, CensusReport):
        headers = ["class", "expected", "observed", "orbits", "matched"]
        rows = [[c.name, str(c.expected), str(c.observed), str(len(c.orbits)), "yes" if c.matched else "NO"]
                for c in report.classes]
        notes = [f"orbits: {report.orbit_count}", f"smooth forms: {report.smooth_forms} (expected {report.expected_total})"]
        notes += report.mismatches
        notes.append(f"CENSUS {report.status} {report.matched_classes}/{len(report.classes)}")
        return headers, rows, notes
    if isinstance(report, VerifyReport):
        headers = ["id", "check", "status", "detail"]
        rows = [[c.id, c.description, "PASS" if c.passed else "FAIL", c.detail] for c in report.checks]
        notes = [f"VERIFY {report.status} {report.passed}/{report.passed + report.failed}"]
        return headers, rows, notes
    raise TypeError(f"無法輸出的報表型別: {type(report).__name__}")


def _escape_md(cell: str) -> str:
    return cell.replace("|", "\\|")


def to_markdown(report: BaseModel) -> str:
    headers, rows, notes = _tabulate(report)
    lines = []
    title = getattr(report, "title", None)
    if title:
        lines += [f"## {title}", ""]
    lines.append("| " + " | ".join(headers) + " |")
    lines.append("|" + "|".join("---" for _ in headers) + "|")
    for row in rows:
        lines.append("| " + " | ".join(_escape_md(cell) for cell in row) + " |")
    if notes:
        lines.append("")
        lines += notes
    return "\n".join(lines) + "\n"


def to_csv(report: BaseModel) -> str:
    headers, rows, notes = _tabulate(report)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(rows)
    for note in notes:
        writer.writerow([f"# {note}"])
    return buffer.getvalue()


def to_json(report: BaseModel) -> str:
    return report.model_dump_json(indent=2) + "\n"


def render(report: BaseModel, fmt: str = "md") -> str:
    if fmt == "md":
        return to_markdown(report)
    if fmt == "csv":
        return to_csv(report)
    if fmt == "json":
        return to_json(report)
    raise UsageError(f"未知的輸出格式: {fmt}（可用 {', '.join(FORMATS)}）")
