"""
分級特徵標與標記上同調

- H*(S) 作為 W(E6) 表示：H^0 = V1，H^2 = V1 ⊕ V6，H^4 = V1
- H*(Sym^n S) 的分級特徵標（對 S_n 的循環型平均）
- (H*(Y/PGL) ⊗ H*(F))^G 的維數
- UConf² S 的上同調：兩點 Totaro 複形，外生成元 G(3 次) 映到對角類 [Δ]
"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Optional, Sequence

import numpy as np
from sympy.utilities.iterables import partitions

from .chars import CharacterTable, ClassFunction, invariant_dim, load_character_table
from .counting import y_pgl_cohomology
from .errors import DataIntegrityError
from .poly import QPoly
from .tables import UCONF2_COHOMOLOGY
from .weyl import FORM, Perm, WeylContext, element_matrix_on_picard, get_weyl_context

logger = logging.getLogger(__name__)

GradedCharacter = Dict[int, ClassFunction]

SURFACE_DEGREES = (0, 2, 2, 2, 2, 2, 2, 2, 4)


def _surface_poly(context: WeylContext, class_index: int) -> QPoly:
    """H*(S) 的分級跡 1 + (1 + χ_V6) y^2 + y^4"""
    t = 1 + context.classes[class_index].trace_v6
    return QPoly((1, 0, t, 0, 1))


def surface_character(context: Optional[WeylContext] = None) -> GradedCharacter:
    context = context or get_weyl_context()
    polys = [_surface_poly(context, c.index) for c in context.classes]
    return {k: ClassFunction(p.coefficient(k) for p in polys) for k in range(5)}


def _graded(polys_by_class: Sequence[Sequence[Fraction]], top: int) -> GradedCharacter:
    return {
        k: ClassFunction(coeffs[k] if k < len(coeffs) else 0 for coeffs in polys_by_class)
        for k in range(top + 1)
    }


@lru_cache(maxsize=None)
def _sym_class_poly(class_index: int, n: int) -> tuple:
    context = get_weyl_context()
    c = context.classes[class_index]
    total: List[Fraction] = [Fraction(0)] * (4 * n + 1)
    for partition in partitions(n):
        parts = dict(partition)
        z = 1
        product = QPoly.constant(1)
        for length, mult in parts.items():
            z *= length ** mult * factorial(mult)
            term = _surface_poly(context, c.power_class(length)).substitute_power(length)
            product = product * term ** mult
        for k, coeff in enumerate(product.coeffs):
            total[k] += Fraction(coeff, z)
    if any(v.denominator != 1 for v in total):
        raise DataIntegrityError(f"Sym^{n} 在類 {c.name} 的分級跡不是整數")
    return tuple(total)


def graded_sym_character(n: int, context: Optional[WeylContext] = None) -> GradedCharacter:
    """H*(Sym^n S) 的分級特徵標，以實次數 0..4n 為鍵"""
    if n < 0:
        raise ValueError("n 必須 ≥ 0")
    context = context or get_weyl_context()
    if n == 0:
        return {0: ClassFunction.constant(1, len(context.classes))}
    return _graded([_sym_class_poly(c.index, n) for c in context.classes], 4 * n)


def graded_product_character(n: int, context: Optional[WeylContext] = None) -> GradedCharacter:
    """H*(S^n) 的分級特徵標（Künneth）"""
    context = context or get_weyl_context()
    polys = [_surface_poly(context, c.index) ** n for c in context.classes]
    return _graded([p.padded(4 * n + 1) for p in polys], 4 * n)


def marked_cohomology(
    generators: Sequence[Perm],
    flavor: str = "product",
    n: int = 0,
    context: Optional[WeylContext] = None,
) -> List[int]:
    """(H*(Y/PGL) ⊗ H*(F))^G 各次數的維數，F = S^n 或 Sym^n S

    不含 H*(PGL(4, C)) 因子。
    """
    context = context or get_weyl_context()
    if flavor == "product":
        fiber = graded_product_character(n, context)
    elif flavor == "sym":
        fiber = graded_sym_character(n, context)
    else:
        raise ValueError(f"marked_cohomology 只支援 product / sym，收到 {flavor}")
    base = y_pgl_cohomology().degrees
    top = max(base) + max(fiber)
    dims = []
    for degree in range(top + 1):
        total = ClassFunction.zero(len(context.classes))
        for i, chi in base.items():
            j = degree - i
            if j in fiber:
                total = total + chi * fiber[j]
        value = invariant_dim(total, generators, context)
        if value.denominator != 1:
            raise DataIntegrityError(f"{degree} 次不變維數 {value} 不是整數")
        dims.append(int(value))
    return dims


# ---- UConf² S 的 Totaro 複形 ----


def _surface_multiplication() -> np.ndarray:
    """H*(S) 的乘法張量 m[i, k, p]：基底 1, e0..e6, pt"""
    m = np.zeros((9, 9, 9), dtype=np.int64)
    for k in range(9):
        m[0, k, k] = 1
        m[k, 0, k] = 1
    for a in range(7):
        for b in range(7):
            m[1 + a, 1 + b, 8] = FORM[a, b]
    return m


MULTIPLICATION = _surface_multiplication()


def _product(u: np.ndarray, w: np.ndarray) -> np.ndarray:
    """H*(S×S) 中的乘積，元素以 9x9 係數矩陣表示"""
    return np.einsum("ij,kl,ikp,jlr->pr", u, w, MULTIPLICATION, MULTIPLICATION)


def diagonal_class() -> np.ndarray:
    """[Δ] = pt⊗1 + 1⊗pt + Σ (Q^{-1})_{ab} e_a⊗e_b"""
    delta = np.zeros((9, 9), dtype=np.int64)
    delta[0, 8] = 1
    delta[8, 0] = 1
    inverse_form = np.round(np.linalg.inv(FORM)).astype(np.int64)
    delta[1:8, 1:8] = inverse_form
    return delta


def _left(x: int) -> np.ndarray:
    u = np.zeros((9, 9), dtype=np.int64)
    u[x, 0] = 1
    return u


def _right(x: int) -> np.ndarray:
    u = np.zeros((9, 9), dtype=np.int64)
    u[0, x] = 1
    return u


def _gysin_images(degree: int) -> np.ndarray:
    """G·H^{degree-4}(S) 在 H^degree(S×S) 的像，每欄一個向量（81 維）"""
    delta = diagonal_class()
    columns = [
        _product(delta, _left(x)).reshape(-1)
        for x in range(9)
        if SURFACE_DEGREES[x] == degree - 4
    ]
    if not columns:
        return np.zeros((81, 0))
    return np.stack(columns, axis=1).astype(float)


def _check_diagonal() -> None:
    delta = diagonal_class()
    for x in range(9):
        if not np.array_equal(_product(delta, _left(x)), _product(delta, _right(x))):
            raise DataIntegrityError("對角類不滿足 Δ·(x⊗1) = Δ·(1⊗x)")


_SWAP = np.zeros((81, 81))
for _i in range(9):
    for _j in range(9):
        _SWAP[_j * 9 + _i, _i * 9 + _j] = 1.0


def _pair_degrees() -> np.ndarray:
    return np.array([SURFACE_DEGREES[i] + SURFACE_DEGREES[j] for i in range(9) for j in range(9)])


def _invariant_trace(action: np.ndarray, degree: int) -> float:
    """S2 不變部分在商空間 H^degree(S×S) / 像 上的跡"""
    selected = np.flatnonzero(_pair_degrees() == degree)
    a = action[np.ix_(selected, selected)]
    swap = _SWAP[np.ix_(selected, selected)]
    trace = (np.trace(a) + np.trace(a @ swap)) / 2

    images = _gysin_images(degree)[selected]
    if images.shape[1]:
        coords, *_ = np.linalg.lstsq(images, a @ images, rcond=None)
        swap_coords, *_ = np.linalg.lstsq(images, swap @ images, rcond=None)
        if not np.allclose(images @ coords, a @ images, atol=1e-9):
            raise DataIntegrityError(f"{degree} 次的 Gysin 像不是 W(E6) 不變子空間")
        trace -= (np.trace(coords) + np.trace(coords @ swap_coords)) / 2
    return trace


def _totaro_differential_injective() -> bool:
    for degree in (4, 6, 8):
        images = _gysin_images(degree)
        if np.linalg.matrix_rank(images) != images.shape[1]:
            return False
    return True


@lru_cache(maxsize=None)
def _uconf2_values() -> tuple:
    context = get_weyl_context()
    _check_diagonal()
    if not _totaro_differential_injective():
        raise DataIntegrityError("Totaro 微分不是單射，奇數次上同調非零")
    rows = []
    for c in context.classes:
        g9 = np.zeros((9, 9))
        g9[0, 0] = 1
        g9[8, 8] = 1
        g9[1:8, 1:8] = element_matrix_on_picard(c.representative)
        action = np.kron(g9, g9)
        values = []
        for degree in range(9):
            trace = _invariant_trace(action, degree) if degree % 2 == 0 else 0.0
            rounded = int(round(trace))
            if abs(trace - rounded) > 1e-6:
                raise DataIntegrityError(f"類 {c.name} 在 {degree} 次的跡 {trace} 不是整數")
            values.append(rounded)
        rows.append(values)
    return tuple(tuple(r) for r in rows)


def uconf2_cohomology(
    context: Optional[WeylContext] = None,
    table: Optional[CharacterTable] = None,
) -> GradedCharacter:
    """H*(UConf² S) 的分級特徵標（實次數 0..8），並與已知分解比對"""
    context = context or get_weyl_context()
    table = table or load_character_table()
    values = _uconf2_values()
    graded = {
        degree: ClassFunction(values[c.index][degree] for c in context.classes)
        for degree in range(9)
    }
    for degree, chi in graded.items():
        expected = table.combination(UCONF2_COHOMOLOGY.get(degree, ()))
        if chi != expected:
            found = table.decompose(chi)
            logger.error(f"UConf² H^{degree} = {found}，與預期不符")
            raise DataIntegrityError(f"UConf² 的 H^{degree} 分解為 {found}，預期 {UCONF2_COHOMOLOGY.get(degree, ())}")
    logger.info("UConf² 上同調計算完成，與已知分解一致")
    return graded


def uconf2_count_from_cohomology(class_index: int, graded: Optional[GradedCharacter] = None) -> QPoly:
    """Σ_k χ_{H^{2k}}(c) q^{4-k}"""
    graded = graded or uconf2_cohomology()
    coeffs = [0] * 5
    for degree, chi in graded.items():
        if degree % 2:
            if chi[class_index] != 0:
                raise DataIntegrityError("奇數次上同調非零")
            continue
        coeffs[4 - degree // 2] += int(chi[class_index])
    return QPoly(coeffs)
