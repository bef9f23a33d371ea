"""
類函數與 W(E6) 特徵標表

特徵標表的 15 個非撇號 / U 列逐字取自參考資料，10 個撇號列以符號特徵標扭轉重建。
載入時檢查行列正交性、維數平方和與 U 列在奇類上為零，任何失敗都立即中止。
所有運算為精確有理數。
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import DataIntegrityError, NotAVirtualCharacterError
from .tables import CHARACTER_ROWS, GROUP_ORDER, IRREP_NAMES, SPLIT_IRREPS, UNPRIMED_IRREPS
from .weyl import ConjugacyClass, Perm, WeylContext, get_weyl_context

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


class ClassFunction:
    """定義在 25 個共軛類上的有理值函數（依標準類順序）"""

    __slots__ = ("values",)

    def __init__(self, values: Iterable[Scalar]):
        self.values: Tuple[Fraction, ...] = tuple(Fraction(v) for v in values)

    @classmethod
    def zero(cls, n: int = 25) -> "ClassFunction":
        return cls([0] * n)

    @classmethod
    def constant(cls, value: Scalar, n: int = 25) -> "ClassFunction":
        return cls([value] * n)

    @classmethod
    def indicator(cls, c: ConjugacyClass, n: int = 25) -> "ClassFunction":
        return cls([1 if i == c.index else 0 for i in range(n)])

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, key) -> Fraction:
        if isinstance(key, ConjugacyClass):
            key = key.index
        return self.values[key]

    @property
    def degree(self) -> Fraction:
        """在單位類上的值"""
        return self.values[0]

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)

    def _combine(self, other, op) -> "ClassFunction":
        if isinstance(other, ClassFunction):
            if len(other) != len(self):
                raise ValueError("類函數長度不一致")
            return ClassFunction(op(a, b) for a, b in zip(self.values, other.values))
        if isinstance(other, (int, Fraction)):
            return ClassFunction(op(a, other) for a in self.values)
        return NotImplemented

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __mul__(self, other):
        return self._combine(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __neg__(self) -> "ClassFunction":
        return ClassFunction(-v for v in self.values)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.values == other.values

    def __repr__(self) -> str:
        return f"ClassFunction({[str(v) for v in self.values]})"


@dataclass(frozen=True)
class Decomposition:
    """類函數在不可約特徵標下的分解"""
    terms: Tuple[Tuple[str, int], ...]
    residual: ClassFunction

    @property
    def is_character(self) -> bool:
        return all(m >= 0 for _, m in self.terms)

    def multiplicity(self, name: str) -> int:
        return dict(self.terms).get(name, 0)

    def as_dict(self) -> Dict[str, int]:
        return dict(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for name, m in self.terms:
            parts.append(name if m == 1 else f"{m}{name}")
        return " + ".join(parts)


class CharacterTable:
    """25 個不可約特徵標，依 V、V'、U 的順序"""

    def __init__(self, classes: Sequence[ConjugacyClass], irreducibles: Mapping[str, ClassFunction]):
        self.classes = list(classes)
        self.sizes = [c.size for c in self.classes]
        self.irreducibles: Dict[str, ClassFunction] = dict(irreducibles)

    @property
    def names(self) -> List[str]:
        return list(self.irreducibles)

    def __getitem__(self, name: str) -> ClassFunction:
        if name not in self.irreducibles:
            raise KeyError(f"未知的不可約表示: {name}")
        return self.irreducibles[name]

    def inner_product(self, f: ClassFunction, g: ClassFunction) -> Fraction:
        total = sum((s * a * b for s, a, b in zip(self.sizes, f.values, g.values)), Fraction(0))
        return total / GROUP_ORDER

    def decompose(self, f: ClassFunction) -> Decomposition:
        terms: List[Tuple[str, int]] = []
        residual = f
        for name, chi in self.irreducibles.items():
            m = self.inner_product(f, chi)
            if m.denominator != 1:
                raise NotAVirtualCharacterError(f"⟨f, {name}⟩ = {m} 不是整數，f 不是虛擬特徵標")
            if m:
                terms.append((name, int(m)))
                residual = residual - chi * int(m)
        return Decomposition(tuple(terms), residual)

    def combination(self, names: Iterable[str]) -> ClassFunction:
        """不可約特徵標的直和（名稱重複代表重數）"""
        total = ClassFunction.zero(len(self.classes))
        for name in names:
            total = total + self[name]
        return total

    def sign(self) -> ClassFunction:
        return self["V1'"]


def _check_table(table: CharacterTable) -> None:
    names = table.names
    for i, a in enumerate(names):
        for b in names[i:]:
            value = table.inner_product(table[a], table[b])
            expected = 1 if a == b else 0
            if value != expected:
                logger.error(f"行正交性失敗 ⟨{a},{b}⟩ = {value}")
                raise DataIntegrityError(f"row orthogonality ⟨{a},{b}⟩ = {value}，應為 {expected}")
    for i, c in enumerate(table.classes):
        for j, d in enumerate(table.classes[i:], start=i):
            value = sum(table[n][i] * table[n][j] for n in names)
            expected = Fraction(GROUP_ORDER, c.size) if i == j else 0
            if value != expected:
                logger.error(f"列正交性失敗 {c.name},{d.name} = {value}")
                raise DataIntegrityError(
                    f"column orthogonality Σχ({c.name})χ({d.name}) = {value}，應為 {expected}"
                )
    total = sum(table[n].degree ** 2 for n in names)
    if total != GROUP_ORDER:
        raise DataIntegrityError(f"維數平方和 {total} ≠ {GROUP_ORDER}")
    for name in SPLIT_IRREPS:
        for c in table.classes:
            if not c.is_even and table[name][c] != 0:
                raise DataIntegrityError(f"{name} 在奇類 {c.name} 上不為零")


def build_character_table(
    classes: Sequence[ConjugacyClass],
    rows: Optional[Mapping[str, Sequence[int]]] = None,
) -> CharacterTable:
    """由逐類資料列建立並驗證特徵標表

    Args:
        classes: 依標準順序排列的共軛類
        rows: 類名稱 -> (V1..V81[, U10..U90]) 的值；預設為內建參考資料

    Returns:
        驗證過的 CharacterTable；任何不一致拋出 DataIntegrityError
    """
    rows = CHARACTER_ROWS if rows is None else rows
    missing = [c.name for c in classes if c.name not in rows]
    if missing:
        raise DataIntegrityError(f"特徵標表缺少類: {missing}")

    columns: Dict[str, List[int]] = {name: [] for name in IRREP_NAMES}
    for c in classes:
        row = list(rows[c.name])
        if c.is_even and len(row) != len(UNPRIMED_IRREPS) + len(SPLIT_IRREPS):
            raise DataIntegrityError(f"偶類 {c.name} 的資料列長度 {len(row)} 錯誤")
        if not c.is_even and len(row) == len(UNPRIMED_IRREPS):
            row += [0] * len(SPLIT_IRREPS)
        sign = 1 if c.is_even else -1
        for k, name in enumerate(UNPRIMED_IRREPS):
            columns[name].append(row[k])
            columns[f"{name}'"].append(sign * row[k])
        for k, name in enumerate(SPLIT_IRREPS):
            columns[name].append(row[len(UNPRIMED_IRREPS) + k])

    table = CharacterTable(classes, {name: ClassFunction(vals) for name, vals in columns.items()})
    _check_table(table)
    traces = [c.trace_v6 for c in classes]
    if [int(v) for v in table["V6"].values] != traces:
        raise DataIntegrityError("V6 列與 Picard 格上計算的跡不一致")
    logger.info(f"特徵標表載入完成：{len(table.names)} 個不可約表示，正交性檢查通過")
    return table


_table_instance: Optional[CharacterTable] = None


def load_character_table(context: Optional[WeylContext] = None) -> CharacterTable:
    """取得（並快取）以內建資料建立的特徵標表"""
    global _table_instance
    if context is not None:
        return build_character_table(context.classes)
    if _table_instance is None:
        _table_instance = build_character_table(get_weyl_context().classes)
    return _table_instance


def inner_product(f: ClassFunction, g: ClassFunction) -> Fraction:
    return load_character_table().inner_product(f, g)


def decompose(f: ClassFunction) -> Decomposition:
    return load_character_table().decompose(f)


def permutation_character(action: str, context: Optional[WeylContext] = None) -> ClassFunction:
    """直線 / 三切面 / 雙六上的置換特徵標"""
    context = context or get_weyl_context()
    return ClassFunction(context.fixed_points(c, action) for c in context.classes)


def coset_character(generators: Sequence[Perm], context: Optional[WeylContext] = None) -> ClassFunction:
    """W/H 上的置換特徵標"""
    context = context or get_weyl_context()
    return ClassFunction(context.coset_fixed_points(c, generators) for c in context.classes)


def invariant_dim(
    f: ClassFunction,
    generators: Sequence[Perm],
    context: Optional[WeylContext] = None,
) -> Fraction:
    """(1/|H|) Σ_{h∈H} f(h)；f 為真特徵標時即 H 不變子空間的維數"""
    context = context or get_weyl_context()
    counts = context.subgroup_class_counts(generators)
    order = sum(counts)
    value = sum((n * f[i] for i, n in enumerate(counts)), Fraction(0)) / order
    if value.denominator != 1:
        try:
            is_character = load_character_table().decompose(f).is_character
        except NotAVirtualCharacterError:
            is_character = False
        if is_character:
            raise DataIntegrityError(f"真特徵標的不變維數 {value} 不是整數")
    return value
