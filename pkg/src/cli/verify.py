"""
不變量檢查套件

每一項檢查都有固定的 id，報表中逐項列出 PASS / FAIL。
檢查函式回傳 (是否通過, 說明)；拋出 CubicStatsError 視為失敗並保留錯誤訊息。
"""

import logging
import random
from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..core.chars import build_character_table, load_character_table, permutation_character
from ..core.cohomology import marked_cohomology, uconf2_cohomology, uconf2_count_from_cohomology
from ..core.counting import (
    average_identity_holds,
    burnside_average,
    config_count_poly,
    exceptions,
    expected_weighted_total,
    marking_distribution,
    mobius_identity_holds,
    negative_counts,
    row_total,
    surface_point_count_poly,
    table1,
    table2,
    table3,
    table4,
    weighted_total,
    y_pgl_cohomology,
)
from ..core.errors import CubicStatsError
from ..core.poly import Q, QPoly
from ..core.schlafli import build_incidence
from ..core.tables import (
    CHARACTER_ROWS,
    CLASS_RECORDS,
    GROUP_ORDER,
    TABLE1,
    TABLE1_EXCEPTIONS,
    TABLE2,
    TABLE3,
    TABLE4,
    UNPRIMED_IRREPS,
)
from ..core.weyl import (
    CANONICAL_CLASS,
    FORM,
    WeylContext,
    element_matrix_on_picard,
    get_weyl_context,
    picard_lines_consistent,
    power,
)
from .models import CheckResult, VerifyReport

logger = logging.getLogger(__name__)

CheckOutcome = Tuple[bool, str]

RANDOM_SEED = 0
NONNEGATIVE_BOUND = 997


@dataclass(frozen=True)
class Check:
    id: str
    description: str
    run: Callable[["Verifier"], CheckOutcome]


class Verifier:
    """執行所有不變量檢查

    Args:
        context: 共用的 WeylContext；預設為單例
        character_rows: 特徵標表資料列，可替換成故意損壞的版本做故障注入
    """

    def __init__(
        self,
        context: Optional[WeylContext] = None,
        character_rows: Optional[Mapping[str, Sequence[int]]] = None,
    ):
        self.context = context or get_weyl_context()
        self.character_rows = character_rows

    # ---- Schläfli 圖 ----

    def check_srg(self) -> CheckOutcome:
        params = build_incidence().srg_parameters()
        return params == (27, 10, 1, 5), f"參數 {params}"

    def check_tritangents(self) -> CheckOutcome:
        count = len(self.context.tritangents)
        return count == 45, f"{count} 個三切面"

    def check_double_sixes(self) -> CheckOutcome:
        count = len(self.context.double_sixes)
        return count == 36, f"{count} 個雙六"

    def check_vertex_transitive(self) -> CheckOutcome:
        orbit = self.context.group.orbit(0)
        return len(orbit) == 27, f"E1 在 W 下的軌道大小 {len(orbit)}"

    # ---- 群與共軛類 ----

    def check_group_order(self) -> CheckOutcome:
        order = self.context.group.order
        return order == GROUP_ORDER, f"|W| = {order}"

    def check_class_records(self) -> CheckOutcome:
        classes = self.context.classes
        if len(classes) != len(CLASS_RECORDS):
            return False, f"{len(classes)} 個共軛類"
        bad = [
            c.name for c, r in zip(classes, CLASS_RECORDS)
            if (c.name, c.size, c.order, c.is_even) != (r.name, r.size, r.order, r.even)
        ]
        return not bad, f"{len(classes) - len(bad)}/{len(classes)} 類的大小、階與奇偶一致" + (f"，不符: {bad}" if bad else "")

    def check_v6_traces(self) -> CheckOutcome:
        bad = [c.name for c in self.context.classes if CHARACTER_ROWS[c.name][1] != c.trace_v6]
        return not bad, "V6 跡與特徵標表一致" if not bad else f"不符: {bad}"

    def check_picard(self) -> CheckOutcome:
        return picard_lines_consistent(), "直線的 Picard 向量與相交圖一致"

    def check_form_preserved(self) -> CheckOutcome:
        rng = random.Random(RANDOM_SEED)
        elements = list(self.context.group.generators) + [self.context.group.random_element(rng) for _ in range(100)]
        bad = 0
        for g in elements:
            m = element_matrix_on_picard(g, check=False)
            if not (np.array_equal(m.T @ FORM @ m, FORM) and np.array_equal(m @ CANONICAL_CLASS, CANONICAL_CLASS)):
                bad += 1
        return bad == 0, f"{len(elements) - bad}/{len(elements)} 個元素保持相交形式與 K"

    def check_power_maps(self) -> CheckOutcome:
        bad = []
        for c in self.context.classes:
            for k in range(1, c.order + 1):
                image = self.context.identify_class(power(c.representative, k))
                if image.index != c.power_class(k):
                    bad.append(f"{c.name}^{k}")
            if c.power_class(c.order) != 0:
                bad.append(f"{c.name}^{c.order} 不是單位類")
        return not bad, "rep^k 的類與冪映射一致" if not bad else f"不符: {bad}"

    def check_stabilizers(self) -> CheckOutcome:
        orders = {
            action: len(self.context.subgroup_elements(self.context.stabilizer_generators(action)))
            for action in ("lines", "tritangents", "double_sixes")
        }
        expected = {"lines": 1920, "tritangents": 1152, "double_sixes": 1440}
        return orders == expected, f"穩定子階數 {orders}"

    # ---- 特徵標 ----

    def check_character_table(self) -> CheckOutcome:
        table = build_character_table(self.context.classes, self.character_rows)
        return len(table.names) == 25, f"{len(table.names)} 個不可約表示，正交性成立"

    def check_tritangent_character(self) -> CheckOutcome:
        decomposition = load_character_table().decompose(permutation_character("tritangents", self.context))
        ok = decomposition.is_character and decomposition.multiplicity("V1") == 1
        return ok, f"三切面置換特徵標 = {decomposition}"

    def check_cohomology_data(self) -> CheckOutcome:
        dims = y_pgl_cohomology().dimensions()
        return dims == {0: 1, 1: 15, 2: 81, 3: 185, 4: 150}, f"H^i(Y/PGL) 維數 {dims}"

    # ---- 表 1–4 ----

    def check_table1(self) -> CheckOutcome:
        rows = table1(self.context)
        matched = sum(1 for r in rows if r.value == QPoly.from_expression(TABLE1[r.key]))
        return matched == len(TABLE1) == 25, f"{matched}/25 列一致"

    def check_exceptions(self) -> CheckOutcome:
        found = {c.name: exceptions(c) for c in self.context.classes if exceptions(c)}
        return found == TABLE1_EXCEPTIONS, f"例外 {found}"

    def _compare_rows(self, rows, published, parse_key) -> CheckOutcome:
        expected = [(parse_key(k), QPoly.from_expression(v)) for k, v in published]
        actual = [(r.key, r.value) for r in rows]
        matched = sum(1 for a, e in zip(actual, expected) if a == e)
        return len(actual) == len(expected) == matched, f"{matched}/{len(expected)} 列一致"

    def check_table2(self) -> CheckOutcome:
        return self._compare_rows(table2(self.context), TABLE2, int)

    def check_table3(self) -> CheckOutcome:
        return self._compare_rows(table3(self.context), TABLE3, int)

    def check_table4(self) -> CheckOutcome:
        return self._compare_rows(table4(self.context), TABLE4, QPoly.from_expression)

    def check_chebotarev(self) -> CheckOutcome:
        bad = [r.key for r in table1(self.context) if not (r.value.is_monic() and r.value.degree == 4)]
        total = row_total(table2(self.context))
        ok = not bad and total == Q ** 4 * GROUP_ORDER
        return ok, f"Σ#c·poly = {total.factored()}" + (f"，非首一四次: {bad}" if bad else "")

    def check_mobius(self) -> CheckOutcome:
        bad = [c.name for c in self.context.classes if not mobius_identity_holds(c, 12, self.context)]
        return not bad, "Σ_{d|k} d·a_d = n_k（k ≤ 12）" if not bad else f"不符: {bad}"

    def check_nonnegative(self) -> CheckOutcome:
        bad = negative_counts(NONNEGATIVE_BOUND, self.context)
        return not bad, f"質數冪 q ≤ {NONNEGATIVE_BOUND} 的計數皆非負" if not bad else f"負值: {bad[:5]}"

    # ---- 平均恆等式 ----

    def check_average_points(self) -> CheckOutcome:
        return average_identity_holds(table2(self.context), QPoly.constant(1)), "t 的平均為 1（點數平均 q^2 + q + 1）"

    def check_average_tritangents(self) -> CheckOutcome:
        return average_identity_holds(table3(self.context), QPoly.constant(1)), "三切面平均為 1"

    def check_average_uconf2(self) -> CheckOutcome:
        target = Q ** 2 * (Q ** 2 + Q + 2)
        return average_identity_holds(table4(self.context), target), f"UConf^2 平均為 {target.factored()}"

    def check_average_lines(self) -> CheckOutcome:
        rows = marking_distribution("lines", context=self.context)
        return average_identity_holds(rows, QPoly.constant(1)), "直線平均為 1"

    def check_average_double_sixes(self) -> CheckOutcome:
        rows = marking_distribution("double_sixes", context=self.context)
        ok = Q * weighted_total(rows) == (Q - 1) * row_total(rows)
        return ok, "雙六的曲面平均為 1 - 1/q"

    def check_burnside(self) -> CheckOutcome:
        averages = {a: burnside_average(a, self.context) for a in ("lines", "tritangents", "double_sixes")}
        return all(v == 1 for v in averages.values()), f"群上平均 {dict((k, str(v)) for k, v in averages.items())}"

    def check_trace_identity(self) -> CheckOutcome:
        bad = []
        for action in ("lines", "tritangents", "double_sixes"):
            rows = marking_distribution(action, context=self.context)
            if weighted_total(rows) != expected_weighted_total(permutation_character(action, self.context)):
                bad.append(action)
        return not bad, "Σ #c·poly·fix = #W·Σ(-1)^i q^(4-i)⟨H^i, perm⟩" + (f"，不符: {bad}" if bad else "")

    # ---- 組態空間 ----

    def check_uconf2_cohomology(self) -> CheckOutcome:
        graded = uconf2_cohomology(self.context)
        bad = [
            c.name for c in self.context.classes
            if uconf2_count_from_cohomology(c.index, graded) != config_count_poly(c, "uconf", 2)
        ]
        return not bad, "上同調分解與點數一致" if not bad else f"不符: {bad}"

    def check_config_counts(self) -> CheckOutcome:
        bad = []
        for c in self.context.classes:
            surface = surface_point_count_poly(c, 1, self.context)
            if config_count_poly(c, "product", 1) != surface or config_count_poly(c, "sym", 1) != surface:
                bad.append(f"{c.name}: n = 1")
            if config_count_poly(c, "sym", 2) != config_count_poly(c, "uconf", 2) + surface:
                bad.append(f"{c.name}: Sym^2 ≠ UConf^2 + S")
            if config_count_poly(c, "pconf", 2) != surface * surface - surface:
                bad.append(f"{c.name}: PConf^2 ≠ S^2 - S")
        return not bad, "S^n、Sym^n、PConf^n、UConf^n 交叉檢查" + (f"，不符: {bad}" if bad else "")

    def check_marked_cohomology(self) -> CheckOutcome:
        dims = marked_cohomology(self.context.group.generators, "product", 0, self.context)
        return dims == [1, 0, 0, 0, 0], f"(H*(Y/PGL))^W 維數 {dims}"

    # ---- 執行 ----

    def checks(self) -> List[Check]:
        return [
            Check("SCH-1", "Schläfli 圖為 (27,10,1,5) 強正則圖", Verifier.check_srg),
            Check("SCH-2", "三角形恰為 45 個三切面", Verifier.check_tritangents),
            Check("SCH-3", "雙六恰為 36 個", Verifier.check_double_sixes),
            Check("SCH-4", "Schläfli 圖在 W 下點傳遞", Verifier.check_vertex_transitive),
            Check("WEY-1", "自同構群階數 51840", Verifier.check_group_order),
            Check("WEY-2", "25 個共軛類的大小與階", Verifier.check_class_records),
            Check("WEY-3", "V6 上的跡", Verifier.check_v6_traces),
            Check("WEY-4", "Picard 格嵌入", Verifier.check_picard),
            Check("WEY-5", "直線 / 三切面 / 雙六的穩定子", Verifier.check_stabilizers),
            Check("WEY-6", "生成元與 100 個隨機元素保持相交形式與 K", Verifier.check_form_preserved),
            Check("WEY-7", "冪映射與 identify_class 一致", Verifier.check_power_maps),
            Check("CHR-1", "特徵標表行列正交性", Verifier.check_character_table),
            Check("CHR-2", "H*(Y/PGL) 的表示資料", Verifier.check_cohomology_data),
            Check("CHR-3", "三切面置換特徵標恰含一次 V1", Verifier.check_tritangent_character),
            Check("CNT-1", "表 1 計數多項式", Verifier.check_table1),
            Check("CNT-2", "表 1 例外 q", Verifier.check_exceptions),
            Check("CNT-3", "表 2", Verifier.check_table2),
            Check("CNT-4", "表 3", Verifier.check_table3),
            Check("CNT-5", "表 4", Verifier.check_table4),
            Check("CNT-6", "計數多項式首一四次且總和為 #W·q^4", Verifier.check_chebotarev),
            Check("CNT-7", "閉點數的 Möbius 恆等式", Verifier.check_mobius),
            Check("CNT-8", "計數非負（q ≤ 997）", Verifier.check_nonnegative),
            Check("AVG-1", "點數平均", Verifier.check_average_points),
            Check("AVG-2", "三切面平均", Verifier.check_average_tritangents),
            Check("AVG-3", "UConf^2 平均", Verifier.check_average_uconf2),
            Check("AVG-4", "直線平均", Verifier.check_average_lines),
            Check("AVG-5", "雙六平均", Verifier.check_average_double_sixes),
            Check("AVG-6", "Burnside 平均", Verifier.check_burnside),
            Check("AVG-7", "置換特徵標的跡公式", Verifier.check_trace_identity),
            Check("CFG-1", "UConf^2 上同調", Verifier.check_uconf2_cohomology),
            Check("CFG-2", "組態空間點數交叉檢查", Verifier.check_config_counts),
            Check("CFG-3", "全群標記的上同調", Verifier.check_marked_cohomology),
        ]

    def run(self, only: Optional[Sequence[str]] = None) -> VerifyReport:
        results = []
        for check in self.checks():
            if only and check.id not in only:
                continue
            try:
                passed, detail = check.run(self)
            except CubicStatsError as exc:
                passed, detail = False, str(exc)
            level = logging.INFO if passed else logging.ERROR
            logger.log(level, f"[{check.id}] {check.description}: {'PASS' if passed else 'FAIL'} ({detail})")
            results.append(CheckResult(id=check.id, description=check.description, passed=passed, detail=detail))
        failed = sum(1 for r in results if not r.passed)
        return VerifyReport(
            checks=results,
            passed=len(results) - failed,
            failed=failed,
            status="PASS" if failed == 0 else "FAIL",
        )


def corrupted_rows(class_name: str = "(1,5)", irrep: str = "V24", delta: int = 1) -> Dict[str, Tuple[int, ...]]:
    """複製內建特徵標資料並改動一個值，用於故障注入"""
    rows = {name: tuple(values) for name, values in CHARACTER_ROWS.items()}
    position = (UNPRIMED_IRREPS + ("U10", "U20", "U60", "U80", "U90")).index(irrep)
    values = list(rows[class_name])
    values[position] += delta
    rows[class_name] = tuple(values)
    return rows


def run_verification(
    context: Optional[WeylContext] = None,
    character_rows: Optional[Mapping[str, Sequence[int]]] = None,
    only: Optional[Sequence[str]] = None,
) -> VerifyReport:
    return Verifier(context, character_rows).run(only)
