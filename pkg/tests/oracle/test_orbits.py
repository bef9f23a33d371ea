"""
GL(4, F_2) 軌道單元測試
"""

import pytest

from src.oracle.cubic import CubicForm
from src.oracle.orbits import (
    CYCLE,
    GL4_ORDER,
    N_FORMS,
    TRANSVECTION,
    compute_orbits,
    matrix_group_order,
    orbit_of,
)


class TestGenerators:
    """測試生成元"""

    def test_generate_gl4(self):
        """平移與循環置換生成整個 GL(4, F_2)"""
        assert matrix_group_order() == GL4_ORDER

    def test_cycle_alone(self):
        assert matrix_group_order([CYCLE]) == 4
        assert matrix_group_order([TRANSVECTION]) == 2


class TestSingleOrbit:
    """測試單一軌道的閉包"""

    def test_cubes_of_linear_forms(self):
        """x0^3 的軌道是 15 個非零線性型的立方"""
        orbit = orbit_of(CubicForm.from_monomials([(0, 0, 0)]))
        assert len(orbit) == 15

    def test_orbit_size_divides_group(self):
        fermat = CubicForm.from_monomials([(i, i, i) for i in range(4)])
        orbit = orbit_of(fermat)
        assert GL4_ORDER % len(orbit) == 0
        assert fermat.bits in orbit


@pytest.mark.slow
class TestOrbitPartition:
    """測試 2^20 - 1 個三次型的完整軌道分割"""

    @pytest.fixture(scope="class")
    def orbit_table(self):
        return compute_orbits()

    def test_partition(self, orbit_table):
        """軌道大小加總為非零型總數"""
        assert orbit_table.total_forms == N_FORMS - 1
        assert all(GL4_ORDER % int(s) == 0 for s in orbit_table.sizes)

    def test_representatives_are_minimal(self, orbit_table):
        cube = CubicForm.from_monomials([(0, 0, 0)])
        index = orbit_table.orbit_index(cube)
        assert orbit_table.sizes[index] == 15
        assert orbit_table.representative(cube).bits == min(orbit_of(cube))

    def test_members_match_closure(self, orbit_table):
        fermat = CubicForm.from_monomials([(i, i, i) for i in range(4)])
        members = set(int(b) for b in orbit_table.members(orbit_table.orbit_index(fermat)))
        assert members == orbit_of(fermat)
