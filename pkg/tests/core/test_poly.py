"""
QPoly 與算術工具單元測試
"""

import pytest

from src.core.poly import (
    Q,
    QPoly,
    charpoly_from_power_sums,
    cyclotomic,
    cyclotomic_exponents,
    divisors,
    is_prime_power,
    mobius,
    prime_powers_up_to,
)


class TestQPolyConstruction:
    """測試建構方式"""

    def test_from_expression(self):
        """驗證 sympy 運算式解析為展開係數"""
        poly = QPoly.from_expression("(q-2)*(q-3)*(q-5)**2")
        assert poly.high_to_low() == [1, -15, 81, -185, 150], f"展開係數錯誤: {poly}"

    def test_trailing_zeros_removed(self):
        """驗證高次零係數被去除"""
        assert QPoly((1, 2, 0, 0)).degree == 1
        assert QPoly().is_zero()
        assert QPoly().high_to_low() == [0]

    def test_from_high_and_monomial(self):
        """驗證由高到低的係數與單項式"""
        assert QPoly.from_high([1, 0, 3]) == Q ** 2 + 3
        assert QPoly.monomial(3, 5) == 5 * Q ** 3

    def test_interpolate(self):
        """驗證整係數插值"""
        target = Q ** 4 + 7 * Q ** 3 + 28 * Q ** 2
        points = [(x, target(x)) for x in range(2, 7)]
        assert QPoly.interpolate(points) == target

    def test_interpolate_non_integer(self):
        """驗證非整係數插值拋出 ValueError"""
        with pytest.raises(ValueError):
            QPoly.interpolate([(0, 0), (2, 1)])

    def test_immutable(self):
        """驗證 QPoly 不可變"""
        with pytest.raises(AttributeError):
            Q.coeffs = (1,)


class TestQPolyArithmetic:
    """測試運算"""

    def test_ring_operations(self):
        """驗證加減乘冪"""
        assert (Q + 1) ** 2 == QPoly((1, 2, 1))
        assert (Q + 1) * (Q - 1) == Q ** 2 - 1
        assert 3 - Q == QPoly((3, -1))
        assert (Q ** 2 + Q) - (Q ** 2 + Q) == 0

    def test_evaluation(self):
        """驗證在整數點取值"""
        assert QPoly.from_expression("(q-2)*(q-3)*(q-5)**2")(2) == 0
        assert (Q ** 4)(3) == 81

    def test_divmod_monic(self):
        """驗證首一除法"""
        quotient, remainder = (Q ** 2 - 1).divmod_monic(Q - 1)
        assert quotient == Q + 1
        assert remainder.is_zero()
        _, remainder = (Q ** 2 + 1).divmod_monic(Q - 1)
        assert remainder == 2

    def test_divmod_requires_monic(self):
        """驗證非首一除式被拒絕"""
        with pytest.raises(ValueError):
            (Q ** 2).divmod_monic(2 * Q)

    def test_exact_div(self):
        """驗證整除"""
        assert (6 * Q + 4).exact_div(2) == 3 * Q + 2
        with pytest.raises(ArithmeticError):
            (3 * Q + 1).exact_div(2)

    def test_substitute_power(self):
        """驗證 p(q^k)"""
        assert (1 + 2 * Q).substitute_power(3) == 1 + 2 * Q ** 3
        assert QPoly.constant(5).substitute_power(4) == 5

    def test_sort_key(self):
        """驗證先比次數再由高次係數比較"""
        polys = [Q ** 4 + 2 * Q ** 2, Q ** 3, Q ** 4 - Q ** 3 + Q ** 2, Q ** 4 + Q ** 2]
        ordered = sorted(polys, key=QPoly.sort_key)
        assert ordered == [Q ** 3, Q ** 4 - Q ** 3 + Q ** 2, Q ** 4 + Q ** 2, Q ** 4 + 2 * Q ** 2]


class TestQPolyDisplay:
    """測試字串輸出"""

    def test_to_str(self):
        """驗證展開式輸出"""
        poly = QPoly.from_high([1, -15, 81, -185, 150])
        assert poly.to_str() == "q^4 - 15q^3 + 81q^2 - 185q + 150"
        assert (-Q).to_str() == "-q"
        assert QPoly().to_str() == "0"

    def test_factored(self):
        """驗證因式分解輸出"""
        poly = QPoly.from_expression("80*(q**2+q-3)*(q+1)**2")
        assert poly.factored() == "80(q + 1)^2(q^2 + q - 3)"
        assert QPoly.from_expression("(q-2)*(q-3)*(q-5)**2").factored() == "(q - 2)(q - 3)(q - 5)^2"
        assert (2880 * Q ** 4).factored() == "2880q^4"


class TestArithmeticHelpers:
    """測試數論小工具"""

    @pytest.mark.parametrize("n, expected", [(1, 1), (2, -1), (4, 0), (5, -1), (6, 1), (12, 0), (30, -1)])
    def test_mobius(self, n, expected):
        """驗證 Möbius 函數"""
        assert mobius(n) == expected

    def test_divisors(self):
        assert divisors(12) == [1, 2, 3, 4, 6, 12]

    def test_prime_powers(self):
        """驗證質數冪判斷"""
        assert is_prime_power(8) and is_prime_power(9) and is_prime_power(2)
        assert not is_prime_power(6) and not is_prime_power(1)
        assert prime_powers_up_to(10) == [2, 3, 4, 5, 7, 8, 9]

    def test_cyclotomic(self):
        """驗證分圓多項式"""
        assert cyclotomic(1) == Q - 1
        assert cyclotomic(3) == Q ** 2 + Q + 1
        assert cyclotomic(12) == Q ** 4 - Q ** 2 + 1


class TestNewtonIdentities:
    """測試由冪和還原特徵多項式"""

    def test_identity(self):
        """所有冪和為 6 時得到 (x-1)^6"""
        assert charpoly_from_power_sums([6] * 6, 6) == (Q - 1) ** 6

    def test_reflection(self):
        """特徵值 1^5, -1 的鏡射"""
        sums = [5 + (-1) ** k for k in range(1, 7)]
        assert charpoly_from_power_sums(sums, 6) == (Q - 1) ** 5 * (Q + 1)

    def test_non_integral(self):
        """不可能的冪和拋出 ValueError"""
        with pytest.raises(ValueError):
            charpoly_from_power_sums([1, 0, 0, 0, 0, 0], 6)

    def test_cyclotomic_exponents(self):
        """驗證分圓分解"""
        poly = (Q - 1) ** 2 * (Q ** 2 + Q + 1) * (Q + 1) ** 2
        assert cyclotomic_exponents(poly) == {1: 2, 2: 2, 3: 1}
        with pytest.raises(ValueError):
            cyclotomic_exponents(Q ** 2 + 3)

    def test_cyclotomic_exponents_high_order(self):
        """Φ_9、Φ_12 與 Φ_5·Φ_1^2 的辨識"""
        assert cyclotomic_exponents(Q ** 6 + Q ** 3 + 1) == {9: 1}
        assert cyclotomic_exponents(Q ** 4 - Q ** 2 + 1) == {12: 1}
        assert cyclotomic_exponents((Q ** 4 + Q ** 3 + Q ** 2 + Q + 1) * (Q - 1) ** 2) == {1: 2, 5: 1}
        assert cyclotomic_exponents(QPoly.constant(1)) == {}

    def test_cyclotomic_exponents_not_monic(self):
        with pytest.raises(ValueError):
            cyclotomic_exponents(2 * (Q - 1))
