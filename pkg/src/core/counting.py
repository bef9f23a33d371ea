"""
算術統計引擎

- 以扭曲跡公式計算每個共軛類的正規化計數多項式（表 1）
- 依 t、不動三切面數、UConf² 點數彙整（表 2–4）
- 任意標記（直線 / 三切面 / 雙六 / 子群陪集）加上纖維（S^n、Sym^n、PConf^n、UConf^n）的分佈
- 曲面與組態空間的點數
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .chars import CharacterTable, ClassFunction, load_character_table
from .errors import DataIntegrityError
from .poly import Q, QPoly, divisors, is_prime_power, mobius, prime_powers_up_to
from .tables import GROUP_ORDER, Y_PGL_COHOMOLOGY
from .weyl import ConjugacyClass, Perm, WeylContext, get_weyl_context

logger = logging.getLogger(__name__)

FLAVORS = ("product", "sym", "pconf", "uconf")

RowKey = Union[int, str, QPoly]


@dataclass(frozen=True)
class CohomologyDatum:
    """分級特徵標：次數 i -> χ_{H^i}"""
    degrees: Dict[int, ClassFunction]
    labels: Dict[int, Tuple[str, ...]] = field(default_factory=dict)

    @classmethod
    def from_irreducibles(cls, table: CharacterTable, data: Dict[int, Tuple[str, ...]]) -> "CohomologyDatum":
        degrees = {i: table.combination(names) for i, names in data.items()}
        datum = cls(degrees, dict(data))
        datum.validate(table)
        return datum

    def validate(self, table: CharacterTable) -> None:
        if self.degrees.get(0) != table["V1"]:
            raise DataIntegrityError("H^0 必須是平凡表示")
        for i, chi in self.degrees.items():
            if not table.decompose(chi).is_character:
                raise DataIntegrityError(f"H^{i} 的分解出現負重數")

    def dimensions(self) -> Dict[int, int]:
        return {i: int(chi.degree) for i, chi in sorted(self.degrees.items())}


@dataclass(frozen=True)
class CountRow:
    """計數表的一列：key 可為類名稱、整數或點數多項式"""
    key: RowKey
    value: QPoly
    weight: Optional[int] = None
    classes: Tuple[str, ...] = ()
    exceptions: Tuple[int, ...] = ()


@lru_cache(maxsize=None)
def y_pgl_cohomology() -> CohomologyDatum:
    return CohomologyDatum.from_irreducibles(load_character_table(), Y_PGL_COHOMOLOGY)


def class_count_poly(c: ConjugacyClass, datum: Optional[CohomologyDatum] = None) -> QPoly:
    """Σ_i (-1)^i q^{4-i} χ_{H^i}(c)：表 1 第二欄的首一四次多項式"""
    datum = datum or y_pgl_cohomology()
    coeffs = [0] * 5
    for i, chi in datum.degrees.items():
        value = chi[c.index]
        if value.denominator != 1:
            raise DataIntegrityError(f"χ_H^{i}({c.name}) 不是整數")
        coeffs[4 - i] += (-1) ** i * int(value)
    return QPoly(coeffs)


PGL4_ORDER = Q ** 6 * (Q ** 2 - 1) * (Q ** 3 - 1) * (Q ** 4 - 1)


def pgl4_order(q: Optional[int] = None) -> Union[QPoly, int]:
    """#PGL(4, F_q) = q^6 (q^2-1)(q^3-1)(q^4-1)"""
    return PGL4_ORDER if q is None else PGL4_ORDER(q)


def absolute_count(c: ConjugacyClass, q: int) -> int:
    """F_q 上 Frobenius 落在 c 的光滑立方曲面個數"""
    if not is_prime_power(q):
        raise ValueError(f"{q} 不是質數冪")
    numerator = pgl4_order(q) * c.size * class_count_poly(c)(q)
    if numerator % GROUP_ORDER:
        raise DataIntegrityError(f"{c.name} 在 q={q} 的計數不是整數")
    value = numerator // GROUP_ORDER
    if value < 0:
        raise DataIntegrityError(f"{c.name} 在 q={q} 的計數為負")
    return value


def total_smooth_count(q: int, context: Optional[WeylContext] = None) -> int:
    context = context or get_weyl_context()
    return sum(absolute_count(c, q) for c in context.classes)


def exceptions(c: ConjugacyClass) -> Tuple[int, ...]:
    """計數多項式在質數冪 q 上為零的所有 q"""
    poly = class_count_poly(c)
    bound = 1 + max(abs(a) for a in poly.coeffs)
    return tuple(q for q in prime_powers_up_to(bound) if poly(q) == 0)


# ---- 點數 ----


def _t(context: WeylContext, c: ConjugacyClass, k: int) -> int:
    return 1 + context.classes[c.power_class(k)].trace_v6


def surface_point_count_poly(c: ConjugacyClass, k: int, context: Optional[WeylContext] = None) -> QPoly:
    """n_k = q^{2k} + t_k q^k + 1，t_k = 1 + χ_V6(c^k)"""
    if k < 1:
        raise ValueError("k 必須 ≥ 1")
    context = context or get_weyl_context()
    return QPoly.monomial(2 * k) + QPoly.monomial(k, _t(context, c, k)) + 1


def surface_point_counts(c: ConjugacyClass, k: int, q: int, context: Optional[WeylContext] = None) -> int:
    return surface_point_count_poly(c, k, context)(q)


def closed_point_counts(
    c: ConjugacyClass,
    q: int,
    max_degree: int = 6,
    context: Optional[WeylContext] = None,
) -> List[int]:
    """a_d = (1/d) Σ_{e|d} μ(d/e) n_e，d = 1..max_degree"""
    n = [surface_point_counts(c, k, q, context) for k in range(1, max_degree + 1)]
    result = []
    for d in range(1, max_degree + 1):
        value = Fraction(sum(mobius(d // e) * n[e - 1] for e in divisors(d)), d)
        if value.denominator != 1 or value < 0:
            raise DataIntegrityError(f"{c.name} 的 {d} 次閉點數 {value} 不是非負整數")
        result.append(int(value))
    return result


def weighted_closed_point_polys(
    c: ConjugacyClass,
    max_degree: int = 12,
    context: Optional[WeylContext] = None,
) -> List[QPoly]:
    """d·a_d = Σ_{e|d} μ(d/e) n_e 作為 q 的多項式，d = 1..max_degree"""
    n = [surface_point_count_poly(c, k, context) for k in range(1, max_degree + 1)]
    result = []
    for d in range(1, max_degree + 1):
        total = QPoly()
        for e in divisors(d):
            total = total + n[e - 1] * mobius(d // e)
        result.append(total)
    return result


def mobius_identity_holds(c: ConjugacyClass, max_degree: int = 12, context: Optional[WeylContext] = None) -> bool:
    """Σ_{d|k} d·a_d = n_k（符號 q），k = 1..max_degree"""
    weighted = weighted_closed_point_polys(c, max_degree, context)
    for k in range(1, max_degree + 1):
        total = QPoly()
        for d in divisors(k):
            total = total + weighted[d - 1]
        if total != surface_point_count_poly(c, k, context):
            return False
    return True


def negative_counts(bound: int = 997, context: Optional[WeylContext] = None) -> List[Tuple[str, int]]:
    """質數冪 q ≤ bound 中計數為負的 (類, q)"""
    context = context or get_weyl_context()
    bad = []
    for q in prime_powers_up_to(bound):
        for c in context.classes:
            try:
                absolute_count(c, q)
            except DataIntegrityError:
                bad.append((c.name, q))
    return bad


def _truncated_product(factors: List[List[int]], n: int) -> List[int]:
    out = [1] + [0] * n
    for factor in factors:
        new = [0] * (n + 1)
        for i, a in enumerate(out):
            if a == 0:
                continue
            for j, b in enumerate(factor):
                if i + j > n:
                    break
                new[i + j] += a * b
        out = new
    return out


def config_count(
    c: ConjugacyClass,
    flavor: str,
    n: int,
    q: int,
    context: Optional[WeylContext] = None,
) -> int:
    """S^n / Sym^n S / PConf^n S / UConf^n S 的 F_q 點數"""
    if flavor not in FLAVORS:
        raise ValueError(f"未知的組態類型: {flavor}")
    if n < 0:
        raise ValueError("n 必須 ≥ 0")
    if n == 0:
        return 1
    n1 = surface_point_counts(c, 1, q, context)
    if flavor == "product":
        return n1 ** n
    if flavor == "pconf":
        value = 1
        for i in range(n):
            value *= n1 - i
        return value
    a = closed_point_counts(c, q, max_degree=n, context=context)
    factors = []
    for d, ad in enumerate(a, start=1):
        series = [0] * (n + 1)
        for k in range(0, n // d + 1):
            # (1 + x^d)^a 或 (1 - x^d)^{-a}
            series[d * k] = comb(ad, k) if flavor == "uconf" else comb(ad + k - 1, k)
        factors.append(series)
    return _truncated_product(factors, n)[n]


@lru_cache(maxsize=None)
def _config_count_poly(class_index: int, flavor: str, n: int) -> QPoly:
    context = get_weyl_context()
    c = context.classes[class_index]
    points = [(q, config_count(c, flavor, n, q, context)) for q in range(2, 2 * n + 3)]
    return QPoly.interpolate(points)


def config_count_poly(c: ConjugacyClass, flavor: str, n: int) -> QPoly:
    """組態空間點數作為 q 的多項式（次數 ≤ 2n，以 2n+1 點插值）"""
    if flavor not in FLAVORS:
        raise ValueError(f"未知的組態類型: {flavor}")
    return _config_count_poly(c.index, flavor, n)


# ---- 分佈表 ----


def _aggregate(
    key_of: Callable[[ConjugacyClass], RowKey],
    context: WeylContext,
    sort_key: Callable[[RowKey], object],
) -> List[CountRow]:
    groups: Dict[RowKey, List[ConjugacyClass]] = {}
    for c in context.classes:
        groups.setdefault(key_of(c), []).append(c)
    rows = []
    for key, members in groups.items():
        value = QPoly()
        for c in members:
            value = value + class_count_poly(c) * c.size
        rows.append(CountRow(key=key, value=value, classes=tuple(c.name for c in members)))
    rows.sort(key=lambda row: sort_key(row.key))
    return rows


def table1(context: Optional[WeylContext] = None) -> List[CountRow]:
    """每個共軛類一列，含權重 #c 與例外 q"""
    context = context or get_weyl_context()
    return [
        CountRow(
            key=c.name,
            value=class_count_poly(c),
            weight=c.size,
            classes=(c.name,),
            exceptions=exceptions(c),
        )
        for c in context.classes
    ]


def table2(context: Optional[WeylContext] = None) -> List[CountRow]:
    """依 t = 1 + χ_V6(c) 彙整"""
    context = context or get_weyl_context()
    return _aggregate(lambda c: 1 + c.trace_v6, context, lambda key: key)


def table3(context: Optional[WeylContext] = None) -> List[CountRow]:
    """依不動三切面數彙整"""
    context = context or get_weyl_context()
    return _aggregate(lambda c: context.fixed_points(c, "tritangents"), context, lambda key: key)


def table4(context: Optional[WeylContext] = None) -> List[CountRow]:
    """依 #UConf²(S) 多項式彙整"""
    context = context or get_weyl_context()
    return _aggregate(lambda c: config_count_poly(c, "uconf", 2), context, lambda key: key.sort_key())


def marking_distribution(
    marking: Union[str, Sequence[Perm]],
    fiber: Optional[Tuple[str, int]] = None,
    context: Optional[WeylContext] = None,
) -> List[CountRow]:
    """標記的分佈：d 為不動標記數（或子群陪集不動點數），有纖維時為 d·#F

    Args:
        marking: "lines" / "tritangents" / "double_sixes"，或子群生成元列表
        fiber: (flavor, n)，flavor 為 product / sym / pconf / uconf
    """
    context = context or get_weyl_context()

    if isinstance(marking, str):
        def fixed(c: ConjugacyClass) -> int:
            return context.fixed_points(c, marking)
    else:
        generators = [tuple(g) for g in marking]

        def fixed(c: ConjugacyClass) -> int:
            return context.coset_fixed_points(c, generators)

    if fiber is None:
        return _aggregate(fixed, context, lambda key: key)
    flavor, n = fiber
    return _aggregate(
        lambda c: config_count_poly(c, flavor, n) * fixed(c),
        context,
        lambda key: key.sort_key(),
    )


def weighted_total(rows: Sequence[CountRow]) -> QPoly:
    """Σ key·value（key 為整數或多項式）"""
    total = QPoly()
    for row in rows:
        key = row.key
        if isinstance(key, str):
            raise ValueError("以類名稱為鍵的列沒有數值")
        total = total + row.value * key
    return total


def row_total(rows: Sequence[CountRow]) -> QPoly:
    total = QPoly()
    for row in rows:
        total = total + row.value
    return total


def expected_weighted_total(perm: ClassFunction, table: Optional[CharacterTable] = None) -> QPoly:
    """#W · Σ_i (-1)^i q^{4-i} ⟨H^i, perm⟩"""
    table = table or load_character_table()
    datum = y_pgl_cohomology()
    coeffs = [0] * 5
    for i, chi in datum.degrees.items():
        value = table.inner_product(chi, perm)
        if value.denominator != 1:
            raise DataIntegrityError(f"⟨H^{i}, perm⟩ = {value} 不是整數")
        coeffs[4 - i] += (-1) ** i * int(value)
    return QPoly(coeffs) * GROUP_ORDER


def average_identity_holds(rows: Sequence[CountRow], average: QPoly) -> bool:
    """Σ key·value == average · Σ value（多項式恆等式）"""
    return weighted_total(rows) == average * row_total(rows)


def burnside_average(action: str, context: Optional[WeylContext] = None) -> Fraction:
    """群上均勻加權的平均不動點數（可遷作用時為 1）"""
    context = context or get_weyl_context()
    total = sum(c.size * context.fixed_points(c, action) for c in context.classes)
    return Fraction(total, GROUP_ORDER)
