"""
計數多項式與分佈表單元測試

期望值直接取自已發表的表 1–4。
"""

from fractions import Fraction

import pytest

from src.core.chars import permutation_character
from src.core.counting import (
    FLAVORS,
    absolute_count,
    average_identity_holds,
    burnside_average,
    class_count_poly,
    closed_point_counts,
    config_count,
    config_count_poly,
    exceptions,
    expected_weighted_total,
    marking_distribution,
    mobius_identity_holds,
    negative_counts,
    pgl4_order,
    row_total,
    surface_point_count_poly,
    surface_point_counts,
    table1,
    table2,
    table3,
    table4,
    total_smooth_count,
    weighted_closed_point_polys,
    weighted_total,
    y_pgl_cohomology,
)
from src.core.poly import Q, QPoly, divisors
from src.core.tables import GROUP_ORDER, TABLE1, TABLE1_EXCEPTIONS, TABLE2, TABLE3, TABLE4


def _published(rows):
    return [(key, QPoly.from_expression(expr)) for key, expr in rows]


class TestTable1:
    """測試每個共軛類的計數多項式"""

    def test_all_rows(self, context):
        """25 列與表 1 逐係數相等"""
        for c in context.classes:
            assert class_count_poly(c) == QPoly.from_expression(TABLE1[c.name]), f"{c.name} 不符"

    def test_identity_row(self, classes):
        """(1^6) -> (q-2)(q-3)(q-5)^2"""
        assert class_count_poly(classes["(1^6)"]).high_to_low() == [1, -15, 81, -185, 150]

    def test_monic_quartic(self, context):
        """每個計數多項式首一四次：q → ∞ 時類分佈趨於 #c/#W"""
        for c in context.classes:
            poly = class_count_poly(c)
            assert poly.is_monic() and poly.degree == 4, c.name

    def test_cohomology_dimensions(self):
        """H^i(Y/PGL) 的維數"""
        assert y_pgl_cohomology().dimensions() == {0: 1, 1: 15, 2: 81, 3: 185, 4: 150}

    def test_table1_rows(self, context):
        rows = table1(context)
        assert len(rows) == 25
        assert rows[0].weight == 1 and rows[0].exceptions == (2, 3, 5)


class TestAbsoluteCounts:
    """測試 F_q 上的絕對計數"""

    def test_pgl4_order(self):
        assert pgl4_order(2) == 20160
        assert pgl4_order() == Q ** 6 * (Q ** 2 - 1) * (Q ** 3 - 1) * (Q ** 4 - 1)

    def test_known_value(self, classes):
        """(1^3,3) 在 q = 2 為 1680"""
        assert absolute_count(classes["(1^3,3)"], 2) == 1680

    def test_identity_absent(self, classes):
        """(1^6) 在 q = 2, 3, 5 不出現"""
        for q in (2, 3, 5):
            assert absolute_count(classes["(1^6)"], q) == 0
        assert absolute_count(classes["(1^6)"], 7) > 0

    def test_total(self, context):
        """總數 = #PGL(4, F_q)·q^4"""
        for q in (2, 3, 4):
            assert total_smooth_count(q, context) == pgl4_order(q) * q ** 4

    def test_non_prime_power(self, classes):
        with pytest.raises(ValueError):
            absolute_count(classes["(1^6)"], 6)


class TestExceptions:
    """測試例外 q"""

    def test_exceptions(self, context):
        found = {c.name: exceptions(c) for c in context.classes if exceptions(c)}
        assert found == TABLE1_EXCEPTIONS

    def test_q2_exception_class(self, classes):
        """q = 2 的例外落在 (1^2,2^-2,4^2)，(1^-2,2^2,4) 沒有例外"""
        assert exceptions(classes["(1^2,2^-2,4^2)"]) == (2,)
        assert exceptions(classes["(1^-2,2^2,4)"]) == ()

    def test_no_exceptions_for_five_cycle(self, classes):
        """(1,5) 的多項式 q^2(q^2+1) 在質數冪上恆正"""
        assert exceptions(classes["(1,5)"]) == ()


class TestNonNegativity:
    """所有質數冪 q ≤ 997 的計數非負"""

    def test_no_negative_counts(self, context):
        assert negative_counts(997, context) == []

    def test_small_bound(self, context):
        assert negative_counts(4, context) == []
        assert all(absolute_count(c, 4) >= 0 for c in context.classes)


class TestDistributionTables:
    """測試表 2–4"""

    def test_table2(self, context):
        rows = table2(context)
        assert len(rows) == 9
        assert [(r.key, r.value) for r in rows] == _published(TABLE2)

    def test_table3(self, context):
        rows = table3(context)
        assert len(rows) == 12
        assert [(r.key, r.value) for r in rows] == _published(TABLE3)

    def test_table4(self, context):
        rows = table4(context)
        assert len(rows) == 19
        expected = [(QPoly.from_expression(k), QPoly.from_expression(v)) for k, v in TABLE4]
        assert [(r.key, r.value) for r in rows] == expected

    def test_table2_row_zero(self, context):
        """t = 0 列為 432(27q^3 - 17q^2 + 5q + 10)(q + 1)"""
        row = next(r for r in table2(context) if r.key == 0)
        assert row.value == QPoly.from_expression("432*(27*q**3-17*q**2+5*q+10)*(q+1)")


class TestAverages:
    """測試平均恆等式"""

    def test_points(self, context):
        """t 的平均為 1，即點數平均 q^2 + q + 1"""
        assert average_identity_holds(table2(context), QPoly.constant(1))

    def test_tritangents(self, context):
        assert average_identity_holds(table3(context), QPoly.constant(1))

    def test_uconf2(self, context):
        assert average_identity_holds(table4(context), Q ** 2 * (Q ** 2 + Q + 2))

    def test_lines(self, context):
        assert average_identity_holds(marking_distribution("lines", context=context), QPoly.constant(1))

    def test_double_sixes(self, context):
        """雙六的曲面平均為 1 - 1/q"""
        rows = marking_distribution("double_sixes", context=context)
        assert Q * weighted_total(rows) == (Q - 1) * row_total(rows)
        assert rows[-1].key == 36

    @pytest.mark.parametrize("action", ["lines", "tritangents", "double_sixes"])
    def test_burnside(self, context, action):
        """可遷作用在群上的平均為 1"""
        assert burnside_average(action, context) == Fraction(1)

    @pytest.mark.parametrize("action", ["lines", "tritangents", "double_sixes"])
    def test_trace_identity(self, context, action):
        """Σ #c·poly·fix = #W·Σ(-1)^i q^{4-i}⟨H^i, perm⟩"""
        rows = marking_distribution(action, context=context)
        assert weighted_total(rows) == expected_weighted_total(permutation_character(action, context))

    def test_row_total(self, context):
        assert row_total(table2(context)) == GROUP_ORDER * Q ** 4


class TestPointCounts:
    """測試曲面與組態空間的點數"""

    def test_surface_counts(self, classes):
        """單位類：n_k = q^{2k} + 7q^k + 1"""
        identity = classes["(1^6)"]
        assert surface_point_count_poly(identity, 1) == Q ** 2 + 7 * Q + 1
        assert surface_point_counts(identity, 2, 2) == 16 + 28 + 1

    def test_closed_points(self, classes):
        """單位類在 q = 2：a_1 = 19，a_2 = (45 - 19)/2"""
        assert closed_point_counts(classes["(1^6)"], 2, max_degree=2) == [19, 13]

    def test_mobius_identity(self, context):
        """每個類在符號 q 下 Σ_{d|k} d·a_d = n_k，k ≤ 12"""
        for c in context.classes:
            assert mobius_identity_holds(c, 12, context), c.name

    def test_weighted_closed_points_match_values(self, classes):
        """d·a_d 在 q = 3 的取值與 closed_point_counts 一致"""
        c = classes["(1^-2,2^4)"]
        weighted = weighted_closed_point_polys(c, 6)
        values = closed_point_counts(c, 3, max_degree=6)
        assert [w(3) for w in weighted] == [d * a for d, a in zip(range(1, 7), values)]

    def test_divisor_sum_at_q2(self, classes):
        """單位類在 q = 2：Σ_{d|4} d·a_d = n_4"""
        identity = classes["(1^6)"]
        a = closed_point_counts(identity, 2, max_degree=4)
        assert sum(d * a[d - 1] for d in divisors(4)) == surface_point_counts(identity, 4, 2)

    def test_config_small_n(self, classes):
        c = classes["(1,5)"]
        for flavor in FLAVORS:
            assert config_count(c, flavor, 0, 3) == 1
            assert config_count(c, flavor, 1, 3) == surface_point_counts(c, 1, 3)

    def test_uconf2_identity(self, classes):
        """#UConf^2 S = q^4 + 7q^3 + 28q^2（單位類）"""
        assert config_count_poly(classes["(1^6)"], "uconf", 2) == Q ** 4 + 7 * Q ** 3 + 28 * Q ** 2

    def test_sym_and_pconf(self, context):
        """Sym^2 = UConf^2 + S，PConf^2 = S^2 - S"""
        for c in context.classes:
            s = surface_point_count_poly(c, 1, context)
            assert config_count_poly(c, "sym", 2) == config_count_poly(c, "uconf", 2) + s
            assert config_count_poly(c, "pconf", 2) == s * s - s

    def test_unknown_flavor(self, classes):
        with pytest.raises(ValueError):
            config_count_poly(classes["(1^6)"], "braid", 2)


class TestMarkingDistribution:
    """測試標記分佈"""

    def test_lines_identity_row(self, context):
        """不動 27 條線的列只含單位類"""
        rows = marking_distribution("lines", context=context)
        top = rows[-1]
        assert top.key == 27 and top.classes == ("(1^6)",)

    def test_subgroup_marking(self, context):
        """以 W(D5) 陪集標記等同直線標記"""
        gens = context.stabilizer_generators("lines")
        by_coset = marking_distribution(gens, context=context)
        by_lines = marking_distribution("lines", context=context)
        assert [(r.key, r.value) for r in by_coset] == [(r.key, r.value) for r in by_lines]

    def test_fiber(self, context):
        """直線標記配上 S^1 纖維：鍵為 fix·#S，列總和不變"""
        rows = marking_distribution("lines", ("product", 1), context=context)
        assert all(isinstance(r.key, QPoly) for r in rows)
        assert row_total(rows) == GROUP_ORDER * Q ** 4
        assert rows[-1].key == 27 * (Q ** 2 + 7 * Q + 1)
        assert rows[-1].classes == ("(1^6)",)
