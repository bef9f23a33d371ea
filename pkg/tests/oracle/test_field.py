"""
F_{2^k} 查表單元測試
"""

import numpy as np
import pytest

from src.oracle.field import CONWAY_POLYNOMIALS, MAX_DEGREE, BinaryField, get_field


class TestBinaryField:
    """測試有限體運算"""

    @pytest.mark.parametrize("k", sorted(CONWAY_POLYNOMIALS))
    def test_self_test(self, k):
        """每個次數都通過自我檢查"""
        field = get_field(k)
        assert field.order == 2 ** k
        field.self_test(samples=500)

    def test_f4_multiplication(self):
        """F_4：ω^2 = ω + 1，ω^3 = 1"""
        f4 = get_field(2)
        omega = 2
        assert f4.mul(omega, omega) == 3
        assert f4.power(omega, 3) == 1

    def test_inverse(self):
        f64 = get_field(6)
        for a in (1, 2, 37, 63):
            assert f64.mul(a, f64.inverse(a)) == 1
        with pytest.raises(ZeroDivisionError):
            f64.inverse(0)

    def test_vectorized(self):
        """陣列逐元素乘法"""
        f8 = get_field(3)
        a = np.arange(8)
        assert np.array_equal(f8.mul(a, np.ones(8, dtype=np.int64)), a)
        assert not f8.mul(a, np.zeros(8, dtype=np.int64)).any()

    def test_unsupported_degree(self):
        with pytest.raises(ValueError):
            BinaryField(MAX_DEGREE + 1)
