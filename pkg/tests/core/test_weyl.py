"""
W(E6) 與共軛類單元測試
"""

import random

import numpy as np
import pytest

from src.core.poly import Q
from src.core.schlafli import C, E, L, LineLabel, build_incidence
from src.core.tables import CHARACTER_ROWS, CLASS_RECORDS, GROUP_ORDER
from src.core.weyl import (
    CANONICAL_CLASS,
    FORM,
    LINE_VECTORS,
    char_poly_v6,
    compose,
    cycle_type_from_charpoly,
    element_char_poly,
    element_matrix_on_picard,
    element_order,
    enumerate_elements,
    find_automorphism,
    fixed_points,
    format_cycle_type,
    identify_class,
    inverse,
    is_automorphism,
    line_to_picard,
    pairing,
    parity,
    picard_lines_consistent,
    power,
    reduce_generators,
    relabel_permutation,
    swap_permutation,
    virtual_cycle_type,
)


class TestPermutations:
    """測試置換基本運算"""

    def test_compose_and_inverse(self):
        """驗證 g∘g^{-1} 為單位"""
        g = relabel_permutation({1: 2, 2: 3, 3: 1, 4: 4, 5: 5, 6: 6})
        assert compose(g, inverse(g)) == tuple(range(27))
        assert element_order(g) == 3
        assert power(g, 3) == tuple(range(27))

    def test_seeds_are_automorphisms(self):
        """下標重標與 E↔C 交換保持相交關係"""
        incidence = build_incidence()
        swap = swap_permutation()
        assert is_automorphism(swap, incidence)
        assert swap[E(1)] == C(1) and swap[L(1, 2)] == L(1, 2)

    def test_compose_order(self):
        """compose(g, h) 先作用 h"""
        g = relabel_permutation({1: 2, 2: 1, 3: 3, 4: 4, 5: 5, 6: 6})
        h = swap_permutation()
        gh = compose(g, h)
        assert all(gh[i] == g[h[i]] for i in range(27))

    def test_find_automorphism(self):
        """VF2 比對找到把 E1 送到 L12 的自同構"""
        incidence = build_incidence()
        g = find_automorphism(incidence, E(1), L(1, 2))
        assert g is not None and g[E(1)] == L(1, 2)
        assert is_automorphism(g, incidence)

    def test_enumerate_elements(self):
        """S6 下標重標生成 720 個元素，單位元在最前"""
        transposition = relabel_permutation({1: 2, 2: 1, 3: 3, 4: 4, 5: 5, 6: 6})
        cycle = relabel_permutation({i: i % 6 + 1 for i in range(1, 7)})
        elements = enumerate_elements([transposition, cycle])
        assert len(elements) == len(set(elements)) == 720
        assert elements[0] == tuple(range(27))
        assert enumerate_elements([]) == [tuple(range(27))]

    def test_reduce_generators(self):
        """多餘的生成元與單位元被刪去"""
        cycle = relabel_permutation({i: i % 6 + 1 for i in range(1, 7)})
        reduced = reduce_generators([tuple(range(27)), cycle, power(cycle, 2), power(cycle, 3)])
        assert reduced == (cycle,)
        assert reduce_generators([]) == ()


class TestGroup:
    """測試自同構群"""

    def test_order(self, context):
        """驗證階數 51840"""
        assert context.group.order == GROUP_ORDER

    def test_vertex_transitive(self, context):
        """E1 的軌道為全部 27 條直線"""
        assert len(context.group.orbit(E(1))) == 27

    def test_membership(self, context):
        """Schreier-Sims 成員判定與列舉一致"""
        rng = random.Random(3)
        g = context.group.random_element(rng)
        assert context.group.contains(g) and g in context.group
        assert not context.group.contains(tuple([1, 0] + list(range(2, 27))))

    def test_elements_are_automorphisms(self, context):
        """抽樣檢查群元素保持相交關係"""
        rng = random.Random(0)
        for _ in range(50):
            g = context.group.random_element(rng)
            assert is_automorphism(g, context.incidence)


class TestPicard:
    """測試 Picard 格上的作用"""

    def test_line_vectors(self):
        """直線為 (-1)-類且與 K 配對為 -1"""
        assert picard_lines_consistent()
        assert pairing(LINE_VECTORS[:, E(1)], CANONICAL_CLASS) == -1

    def test_matrices_preserve_form(self, context):
        """生成元與 100 個隨機元素的矩陣保持相交形式與 K"""
        rng = random.Random(1)
        elements = list(context.group.generators) + [context.group.random_element(rng) for _ in range(100)]
        for g in elements:
            m = element_matrix_on_picard(g, check=False)
            assert np.array_equal(m.T @ FORM @ m, FORM)
            assert np.array_equal(m @ CANONICAL_CLASS, CANONICAL_CLASS)

    def test_identity_charpoly(self):
        """單位元的 V6 特徵多項式為 (x-1)^6"""
        assert element_char_poly(tuple(range(27))) == (Q - 1) ** 6

    def test_line_to_picard(self):
        """L12 = e0 - e1 - e2，C1 = 2e0 - e2 - ... - e6"""
        assert list(line_to_picard(L(1, 2))) == [1, -1, -1, 0, 0, 0, 0]
        assert list(line_to_picard(LineLabel.parse("C1"))) == [2, 0, -1, -1, -1, -1, -1]
        assert pairing(line_to_picard(E(1)), line_to_picard(C(1))) == 0
        assert pairing(line_to_picard(E(1)), line_to_picard(C(2))) == 1


class TestCycleTypes:
    """測試虛擬循環型"""

    def test_identity(self):
        assert format_cycle_type(cycle_type_from_charpoly((Q - 1) ** 6)) == "(1^6)"

    def test_negative_exponent(self):
        """(x^2-1)^4 / (x-1)^2 = (1^-2,2^4)"""
        poly = (Q ** 2 - 1) ** 4
        quotient, _ = poly.divmod_monic((Q - 1) ** 2)
        assert format_cycle_type(cycle_type_from_charpoly(quotient)) == "(1^-2,2^4)"


class TestConjugacyClasses:
    """測試 25 個共軛類"""

    def test_class_records(self, context):
        """大小與元素階與參考表一致"""
        assert len(context.classes) == 25
        for c, record in zip(context.classes, CLASS_RECORDS):
            assert c.name == record.name
            assert c.size == record.size, f"{c.name} 大小 {c.size} ≠ {record.size}"
            assert c.order == record.order
            assert GROUP_ORDER // c.size == record.centralizer
        assert sum(c.size for c in context.classes) == GROUP_ORDER

    def test_v6_traces(self, context):
        """V6 跡與特徵標表的 V6 列一致"""
        for c in context.classes:
            assert c.trace_v6 == CHARACTER_ROWS[c.name][1], f"{c.name} 的跡錯誤"

    def test_parity(self, context, classes):
        """前 15 類為偶類"""
        assert [c.is_even for c in context.classes] == [r.even for r in CLASS_RECORDS]
        assert classes["(1^4,2)"].parity == "odd"
        assert classes["(1,5)"].parity == "even"

    def test_power_maps(self, context, classes):
        """c^{ord} 為單位，(1,5) 的平方仍在 (1,5)"""
        for c in context.classes:
            assert c.power_class(c.order) == 0
            assert c.power_class(1) == c.index
        five = classes["(1,5)"]
        assert five.power_class(2) == five.index
        assert classes["(2,4)"].power_class(2) == classes["(1^2,2^2)"].index
        assert classes["(1^2,2^-2,4^2)"].power_class(2) == classes["(1^-2,2^4)"].index

    def test_power_maps_match_identification(self, context):
        """每個類與每個 k：identify_class(rep^k) 即為 power_class(k)"""
        for c in context.classes:
            for k in range(1, 2 * c.order + 1):
                image = context.identify_class(power(c.representative, k))
                assert image.index == c.power_class(k), f"{c.name}^{k}"

    def test_conjugation_invariance(self, context):
        """g 與 h g h^{-1} 落在同一類"""
        rng = random.Random(4)
        for _ in range(100):
            g = context.group.random_element(rng)
            h = context.group.random_element(rng)
            conjugate = compose(compose(h, g), inverse(h))
            assert context.identify_class(conjugate) is context.identify_class(g)

    def test_parity_homomorphism(self, context):
        """偶元素的乘積為偶，偶乘奇為奇"""
        rng = random.Random(5)
        even = [g for g in (context.group.random_element(rng) for _ in range(200)) if context.class_of(g).is_even]
        odd = [g for g in (context.group.random_element(rng) for _ in range(200)) if not context.class_of(g).is_even]
        assert even and odd
        for a, b in zip(even, even[1:]):
            assert context.identify_class(compose(a, b)).is_even
        for a, b in zip(even, odd):
            assert not context.identify_class(compose(a, b)).is_even

    def test_class_lookup(self, context):
        """class_of 與以特徵多項式辨識的結果一致"""
        rng = random.Random(2)
        for _ in range(100):
            g = context.group.random_element(rng)
            assert context.class_of(g) is context.identify_class(g)

    def test_class_accessors(self, classes):
        """特徵多項式、虛擬循環型與奇偶性"""
        reflection = classes["(1^4,2)"]
        assert char_poly_v6(reflection) == (Q - 1) ** 5 * (Q + 1)
        assert virtual_cycle_type(reflection) == ((1, 4), (2, 1))
        assert parity(reflection) == "odd"
        assert virtual_cycle_type(classes["(1^-3,3^3)"]) == ((1, -3), (3, 3))

    def test_module_level_lookups(self, context):
        """模組層級函式使用共享單例"""
        g = context.classes[8].representative
        assert identify_class(g).name == "(1,5)"
        assert fixed_points(context.classes[0], "lines") == 27

    def test_class_by_name(self, context):
        assert context.class_by_name("(1^-2, 2^4)").size == 45
        with pytest.raises(KeyError):
            context.class_by_name("(7)")


class TestFixedPoints:
    """測試直線 / 三切面 / 雙六的不動點"""

    def test_identity(self, classes, context):
        identity = classes["(1^6)"]
        assert context.fixed_points(identity, "lines") == 27
        assert context.fixed_points(identity, "tritangents") == 45
        assert context.fixed_points(identity, "double-sixes") == 36

    def test_reflection(self, classes, context):
        """鏡射固定 15 條線與 15 個三切面"""
        reflection = classes["(1^4,2)"]
        assert context.fixed_points(reflection, "lines") == 15
        assert context.fixed_points(reflection, "tritangents") == 15

    def test_no_rational_lines(self, classes, context):
        """(1^-3,3^3) 不固定任何直線"""
        assert context.fixed_points(classes["(1^-3,3^3)"], "lines") == 0

    def test_double_six_counts(self, classes, context):
        """(1^-2,2^4) 固定 12 個雙六，(1^2,2^2) 固定 8 個"""
        assert context.fixed_points(classes["(1^-2,2^4)"], "double_sixes") == 12
        assert context.fixed_points(classes["(1^2,2^2)"], "double_sixes") == 8


class TestSubgroups:
    """測試穩定子與陪集作用"""

    @pytest.mark.parametrize("action, order", [("lines", 1920), ("tritangents", 1152), ("double_sixes", 1440)])
    def test_stabilizer_orders(self, context, action, order):
        """W(D5)、W(F4) 與雙六穩定子"""
        gens = context.stabilizer_generators(action)
        assert len(context.subgroup_elements(gens)) == order

    @pytest.mark.parametrize("action, degree", [("tritangents", 72), ("double-sixes", 63)])
    def test_action_group(self, context, action, degree):
        """直線與作用集合的不交併上仍是 51840 階的忠實作用"""
        group = context.action_group(action)
        assert group.degree == degree
        assert group.order() == GROUP_ORDER
        assert len(group.orbit(27)) == degree - 27

    def test_coset_action_matches_lines(self, context):
        """W/W(D5) 上的不動點等於不動直線數"""
        gens = context.stabilizer_generators("lines")
        for c in context.classes:
            assert context.coset_fixed_points(c, gens) == context.fixed_points(c, "lines"), c.name

    def test_subgroup_class_counts(self, context):
        """全群的類計數即為類大小"""
        counts = context.subgroup_class_counts(context.group.generators)
        assert list(counts) == [c.size for c in context.classes]

    def test_foreign_generator(self, context):
        """非群元素被拒絕"""
        bad = tuple([1, 0] + list(range(2, 27)))
        with pytest.raises(ValueError):
            context.subgroup_elements([bad])
