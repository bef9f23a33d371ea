"""
QPoly - 以 q 為變數的整係數多項式

所有計數結果都是 QPoly：係數以低次到高次的 tuple 儲存，並去除高次的零。
另外提供 Möbius 函數、質數冪判斷、Newton 恆等式等算術小工具。
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import sympy

IntLike = Union[int, "QPoly"]


def _normalize(coeffs: Iterable[int]) -> Tuple[int, ...]:
    values = [int(c) for c in coeffs]
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


class QPoly:
    """整係數單變數多項式（不可變）"""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _normalize(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("QPoly 為不可變物件")

    # ---- 建構 ----

    @classmethod
    def q(cls) -> "QPoly":
        return cls((0, 1))

    @classmethod
    def constant(cls, value: int) -> "QPoly":
        return cls((value,))

    @classmethod
    def monomial(cls, degree: int, coefficient: int = 1) -> "QPoly":
        return cls([0] * degree + [coefficient])

    @classmethod
    def from_high(cls, coeffs: Sequence[int]) -> "QPoly":
        """由高次到低次的係數列建構"""
        return cls(reversed(list(coeffs)))

    @classmethod
    def from_expression(cls, text: str, var: str = "q") -> "QPoly":
        """解析如 "(q-2)*(q-3)*(q-5)**2" 的整係數運算式"""
        symbol = sympy.Symbol(var)
        poly = sympy.Poly(sympy.sympify(text, locals={var: symbol}), symbol)
        coeffs = poly.all_coeffs()
        if any(not c.is_integer for c in coeffs):
            raise ValueError(f"非整係數多項式: {text}")
        return cls.from_high([int(c) for c in coeffs])

    @classmethod
    def interpolate(cls, points: Sequence[Tuple[int, int]]) -> "QPoly":
        """Lagrange 插值；結果必須是整係數，否則拋出 ValueError"""
        result: List[Fraction] = [Fraction(0)] * len(points)
        for i, (xi, yi) in enumerate(points):
            basis = [Fraction(1)]
            denom = Fraction(1)
            for j, (xj, _) in enumerate(points):
                if i == j:
                    continue
                # basis *= (x - xj)
                shifted = [Fraction(0)] + basis
                for k in range(len(basis)):
                    shifted[k] -= xj * basis[k]
                basis = shifted
                denom *= xi - xj
            for k, b in enumerate(basis):
                result[k] += yi * b / denom
        if any(c.denominator != 1 for c in result):
            raise ValueError("插值結果不是整係數多項式")
        return cls(int(c) for c in result)

    # ---- 基本性質 ----

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def coefficient(self, degree: int) -> int:
        return self.coeffs[degree] if 0 <= degree < len(self.coeffs) else 0

    def high_to_low(self) -> List[int]:
        """輸出用：由高次到低次"""
        return list(reversed(self.coeffs)) or [0]

    def padded(self, length: int) -> List[int]:
        """低次到高次補零到指定長度"""
        return list(self.coeffs) + [0] * max(0, length - len(self.coeffs))

    def content(self) -> int:
        value = 0
        for c in self.coeffs:
            value = sympy.igcd(value, c)
        return int(value)

    def __call__(self, x):
        result = 0
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    # ---- 運算 ----

    @staticmethod
    def _coerce(other: IntLike) -> "QPoly":
        if isinstance(other, QPoly):
            return other
        if isinstance(other, int):
            return QPoly((other,))
        return NotImplemented

    def __add__(self, other: IntLike) -> "QPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return QPoly(a + b for a, b in zip(self.padded(n), other.padded(n)))

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly(-c for c in self.coeffs)

    def __sub__(self, other: IntLike) -> "QPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other: IntLike) -> "QPoly":
        return (-self) + other

    def __mul__(self, other: IntLike) -> "QPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return QPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "QPoly":
        if exponent < 0:
            raise ValueError("QPoly 不支援負次方")
        result = QPoly((1,))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def divmod_monic(self, divisor: "QPoly") -> Tuple["QPoly", "QPoly"]:
        """除以首一多項式，回傳 (商, 餘式)"""
        if not divisor.is_monic():
            raise ValueError("除式必須為首一多項式")
        remainder = list(self.coeffs)
        dd = divisor.degree
        if len(remainder) - 1 < dd:
            return QPoly(), QPoly(remainder)
        quotient = [0] * (len(remainder) - dd)
        for k in range(len(remainder) - 1, dd - 1, -1):
            factor = remainder[k]
            if factor == 0:
                continue
            quotient[k - dd] = factor
            for i, c in enumerate(divisor.coeffs):
                remainder[k - dd + i] -= factor * c
        return QPoly(quotient), QPoly(remainder)

    def exact_div(self, other: int) -> "QPoly":
        if any(c % other for c in self.coeffs):
            raise ArithmeticError(f"{self} 無法被 {other} 整除")
        return QPoly(c // other for c in self.coeffs)

    def substitute_power(self, k: int) -> "QPoly":
        """回傳 p(q^k)"""
        out = [0] * (k * max(self.degree, 0) + 1)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return QPoly(out)

    # ---- 比較與顯示 ----

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QPoly((other,))
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("QPoly", self.coeffs))

    def sort_key(self) -> Tuple[int, ...]:
        """由高次係數開始比較的排序鍵（先比次數）"""
        return (self.degree,) + tuple(self.high_to_low())

    def to_str(self, var: str = "q") -> str:
        if self.is_zero():
            return "0"
        parts: List[str] = []
        for degree in range(self.degree, -1, -1):
            c = self.coeffs[degree]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            if degree == 0:
                body = str(magnitude)
            else:
                power = var if degree == 1 else f"{var}^{degree}"
                body = power if magnitude == 1 else f"{magnitude}{power}"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def factored(self, var: str = "q") -> str:
        """以 sympy 因式分解後的字串，例如 80(q + 1)^2(q^2 + q - 3)"""
        if self.is_zero():
            return "0"
        symbol = sympy.Symbol(var)
        content, factors = sympy.factor_list(sympy.Poly(self.high_to_low(), symbol).as_expr())
        pieces: List[str] = []
        for factor, multiplicity in sorted(factors, key=lambda item: (sympy.degree(item[0], symbol), str(item[0]))):
            text = str(sympy.expand(factor)).replace("**", "^").replace("*", "")
            if factor != symbol:
                text = f"({text})"
            if multiplicity > 1:
                text = f"{text}^{multiplicity}"
            pieces.append(text)
        content = int(content)
        if not pieces:
            return str(content)
        prefix = "" if content == 1 else ("-" if content == -1 else str(content))
        return prefix + "".join(pieces)

    def __repr__(self) -> str:
        return f"QPoly({self.to_str()})"

    def __str__(self) -> str:
        return self.to_str()


Q = QPoly.q()


# ---- 算術工具 ----


@lru_cache(maxsize=None)
def mobius(n: int) -> int:
    """Möbius 函數 μ(n)"""
    if n < 1:
        raise ValueError("μ(n) 只定義於正整數")
    factors = sympy.factorint(n)
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


def divisors(n: int) -> List[int]:
    return [int(d) for d in sympy.divisors(n)]


def is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    return len(sympy.factorint(n)) == 1


def prime_powers_up_to(bound: int) -> List[int]:
    return [n for n in range(2, bound + 1) if is_prime_power(n)]


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> QPoly:
    """第 m 個分圓多項式 Φ_m(x)"""
    x = sympy.Symbol("x")
    coeffs = sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs()
    return QPoly.from_high([int(c) for c in coeffs])


def charpoly_from_power_sums(power_sums: Sequence[int], dimension: int) -> QPoly:
    """由冪和 p_1..p_n 以 Newton 恆等式求特徵多項式 det(x - g)

    Args:
        power_sums: p_k = tr(g^k)，k = 1..dimension
        dimension: 表示空間維度

    Returns:
        首一、次數為 dimension 的整係數多項式；e_k 非整數時拋出 ValueError
    """
    if len(power_sums) < dimension:
        raise ValueError("冪和數量不足")
    elementary: List[Fraction] = [Fraction(1)]
    for k in range(1, dimension + 1):
        total = Fraction(0)
        for i in range(1, k + 1):
            total += (-1) ** (i - 1) * elementary[k - i] * power_sums[i - 1]
        elementary.append(total / k)
    if any(e.denominator != 1 for e in elementary):
        raise ValueError(f"Newton 恆等式得到非整數基本對稱式: {elementary}")
    # det(x - g) = Σ (-1)^k e_k x^{n-k}
    high = [(-1) ** k * int(e) for k, e in enumerate(elementary)]
    return QPoly.from_high(high)


def cyclotomic_exponents(poly: QPoly) -> Dict[int, int]:
    """把首一多項式分解為分圓多項式的乘積，回傳 {m: a_m}

    無法完全分解時拋出 ValueError。
    """
    if poly.is_zero() or not poly.is_monic():
        raise ValueError(f"{poly} 不是首一多項式")
    x = sympy.Symbol("x")
    content, factors = sympy.factor_list(sympy.Poly(poly.high_to_low(), x))
    if content != 1:
        raise ValueError(f"{poly} 的容量 {content} ≠ 1")
    exponents: Dict[int, int] = {}
    for factor, multiplicity in factors:
        if not factor.is_cyclotomic:
            raise ValueError(f"{poly} 不是分圓多項式的乘積（因式 {factor.as_expr()}）")
        coeffs = [int(c) for c in factor.all_coeffs()]
        m = next(
            m for m in range(1, 2 * factor.degree() ** 2 + 3)
            if sympy.totient(m) == factor.degree() and cyclotomic(m).high_to_low() == coeffs
        )
        exponents[m] = exponents.get(m, 0) + multiplicity
    return dict(sorted(exponents.items()))
