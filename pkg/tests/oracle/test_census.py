"""
F_2 普查單元測試

完整普查需要數分鐘，標為 slow；其餘測試使用手工構造的小軌道表。
"""

import numpy as np
import pytest
import yaml

from src.cli.render import build_census_report, render
from src.core.counting import absolute_count, surface_point_counts
from src.core.errors import CensusMismatchError, InconsistentCountsError, UsageError
from src.oracle.census import (
    MAX_POINT_DEGREE,
    census,
    classify_frobenius,
    examine_form,
    expected_smooth_orbit_mass,
    write_fixtures,
)
from src.oracle.cubic import CubicForm
from src.oracle.orbits import OrbitTable


@pytest.fixture(scope="module")
def fermat():
    return CubicForm.from_monomials([(i, i, i) for i in range(4)])


@pytest.fixture
def tiny_table(fermat):
    """只含 Fermat 型與 x0^3 兩個「軌道」"""
    cube = CubicForm.from_monomials([(0, 0, 0)])
    reps = sorted([fermat.bits, cube.bits])
    return OrbitTable(
        labels=np.full(1, -1, dtype=np.int32),
        representatives=np.array(reps, dtype=np.int64),
        sizes=np.array([1, 1], dtype=np.int64),
    )


class TestClassifyFrobenius:
    """測試由點數還原共軛類"""

    def test_every_class(self, context):
        """每個類的理論點數都還原回自己"""
        for c in context.classes:
            counts = [surface_point_counts(c, k, 2, context) for k in range(1, MAX_POINT_DEGREE + 1)]
            assert classify_frobenius(counts, 2, context).name == c.name, f"{c.name} 還原失敗"

    def test_other_q(self, context, classes):
        counts = [surface_point_counts(classes["(1,5)"], k, 3, context) for k in range(1, 7)]
        assert classify_frobenius(counts, 3, context).name == "(1,5)"

    def test_not_of_surface_form(self, context):
        """n_1 = 8 不是 4 + 2t + 1"""
        with pytest.raises(InconsistentCountsError):
            classify_frobenius([8, 45, 1, 1, 1, 1], 2, context)

    def test_too_few_counts(self, context):
        with pytest.raises(InconsistentCountsError):
            classify_frobenius([7, 45], 2, context)

    def test_trace_out_of_range(self, context):
        """p_1 = 9 超出 V6 跡的範圍"""
        with pytest.raises(InconsistentCountsError):
            classify_frobenius([4 + 2 * 10 + 1] + [0] * 5, 2, context)


class TestExamineForm:
    """測試單一三次型的檢查"""

    def test_fermat(self, fermat, context):
        """光滑，且有理直線數等於其類固定的直線數"""
        smooth, counts, lines = examine_form(fermat.bits)
        assert smooth and len(counts) == MAX_POINT_DEGREE
        c = classify_frobenius(counts, 2, context)
        assert lines == context.fixed_points(c, "lines")

    def test_singular(self):
        assert examine_form(CubicForm.from_monomials([(0, 0, 0)]).bits) == (False, (), 0)


class TestCensusDriver:
    """以小軌道表測試普查流程"""

    def test_only_q2(self):
        with pytest.raises(UsageError):
            census(q=3)

    def test_tiny_table_fails(self, tiny_table, context):
        """只有兩個型時公式無法吻合"""
        result = census(context=context, orbit_table=tiny_table, progress_every=0)
        assert result.orbit_count == 2
        assert result.smooth_forms == 1
        assert not result.passed
        assert result.mismatches
        smooth = [o for o in result.orbits if o.smooth]
        assert len(smooth) == 1 and smooth[0].class_name is not None

    def test_strict_raises(self, tiny_table, context):
        with pytest.raises(CensusMismatchError) as info:
            census(context=context, orbit_table=tiny_table, progress_every=0, strict=True)
        assert info.value.offending_orbits

    def test_write_fixtures(self, tiny_table, context, tmp_path):
        """只寫出光滑且已分類的軌道"""
        result = census(context=context, orbit_table=tiny_table, progress_every=0)
        path = tmp_path / "census.yaml"
        assert write_fixtures(result, str(path)) == 1
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
        assert data["q"] == 2
        assert data["orbits"][0]["point_counts"][1] == 45


@pytest.mark.slow
class TestDeterminism:
    """輸出與工作行程數無關"""

    def test_jobs_do_not_change_output(self, tiny_table, context):
        """jobs=1 與 jobs=2 的 JSON 報表逐位元組相同"""
        outputs = []
        for jobs in (1, 2):
            result = census(context=context, orbit_table=tiny_table, jobs=jobs, progress_every=0)
            outputs.append(render(build_census_report(result), "json"))
        assert outputs[0] == outputs[1]


class TestExpectedMass:
    def test_total(self, context):
        """Σ_c #S_c(F_2) = #PGL(4, F_2)·2^4"""
        assert expected_smooth_orbit_mass(context) == 20160 * 16
        assert expected_smooth_orbit_mass(context) == sum(absolute_count(c, 2) for c in context.classes)


@pytest.mark.slow
class TestFullCensus:
    """完整普查與公式逐類吻合"""

    def test_census_passes(self, context):
        result = census(context=context, member_samples=50)
        assert result.passed, result.mismatches[:5]
        assert result.matched_classes == 25
        assert result.smooth_forms == 20160 * 16
        assert result.total_forms == 2 ** 20 - 1
