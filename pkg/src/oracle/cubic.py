"""
F_2 上的四元三次型

CubicForm 以 20 位元整數表示（bit i 為第 i 個三次單項式的係數，單項式依
combinations_with_replacement(range(4), 3) 的順序）。本模組提供：
- 線性代換在係數上的作用（20x20 矩陣與批次查表）
- 在 F_{2^k} 上的求值、點數、光滑性判斷
- F_2 有理直線計數
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from ..core.errors import DataIntegrityError
from .field import MAX_DEGREE, get_field

logger = logging.getLogger(__name__)

N_VARS = 4
MONOMIALS: Tuple[Tuple[int, int, int], ...] = tuple(combinations_with_replacement(range(N_VARS), 3))
MONOMIAL_INDEX = {m: i for i, m in enumerate(MONOMIALS)}
QUADRATICS: Tuple[Tuple[int, int], ...] = tuple(combinations_with_replacement(range(N_VARS), 2))
QUADRATIC_INDEX = {m: i for i, m in enumerate(QUADRATICS)}
N_MONOMIALS = len(MONOMIALS)
FULL_MASK = (1 << N_MONOMIALS) - 1


def _monomial_text(monomial: Sequence[int]) -> str:
    parts = []
    for v in sorted(set(monomial)):
        e = monomial.count(v)
        parts.append(f"x{v}" if e == 1 else f"x{v}^{e}")
    return "*".join(parts)


def _partial_map() -> Tuple[Tuple[int, ...], ...]:
    """∂/∂x_v 在特徵 2 下把三次單項式送到的二次單項式索引（-1 表示為零）"""
    table = []
    for v in range(N_VARS):
        row = []
        for m in MONOMIALS:
            if m.count(v) % 2 == 1:
                rest = list(m)
                rest.remove(v)
                row.append(QUADRATIC_INDEX[tuple(rest)])
            else:
                row.append(-1)
        table.append(tuple(row))
    return tuple(table)


PARTIAL_MAP = _partial_map()


@dataclass(frozen=True)
class CubicForm:
    """F_2 上的非零四元三次型"""
    bits: int

    def __post_init__(self):
        if not 0 < self.bits <= FULL_MASK:
            raise ValueError(f"三次型係數必須為非零的 20 位元向量，收到 {self.bits}")

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[int]) -> "CubicForm":
        if len(coeffs) != N_MONOMIALS:
            raise ValueError(f"需要 {N_MONOMIALS} 個係數，收到 {len(coeffs)}")
        bits = 0
        for i, c in enumerate(coeffs):
            if c not in (0, 1):
                raise ValueError(f"F_2 係數只能是 0 或 1，第 {i} 個為 {c}")
            bits |= c << i
        return cls(bits)

    @classmethod
    def from_monomials(cls, monomials: Iterable[Sequence[int]]) -> "CubicForm":
        bits = 0
        for m in monomials:
            bits ^= 1 << MONOMIAL_INDEX[tuple(sorted(m))]
        return cls(bits)

    @classmethod
    def from_hex(cls, text: str) -> "CubicForm":
        return cls(int(text, 16))

    def coefficients(self) -> Tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(N_MONOMIALS))

    def to_hex(self) -> str:
        return f"{self.bits:05x}"

    def partial_bits(self, v: int) -> int:
        """∂F/∂x_v 的 10 位元係數向量"""
        out = 0
        for i, target in enumerate(PARTIAL_MAP[v]):
            if target >= 0 and (self.bits >> i) & 1:
                out ^= 1 << target
        return out

    def __str__(self) -> str:
        terms = [_monomial_text(m) for i, m in enumerate(MONOMIALS) if (self.bits >> i) & 1]
        return " + ".join(terms)


# ---- 線性代換 ----


def gf2_rank(rows: Sequence[int]) -> int:
    """以位元列表示的 F_2 矩陣秩"""
    pivots: List[int] = []
    for row in rows:
        for p in pivots:
            row = min(row, row ^ p)
        if row:
            pivots.append(row)
    return len(pivots)


def matrix_rows(g) -> Tuple[Tuple[int, ...], ...]:
    rows = tuple(tuple(int(x) % 2 for x in row) for row in g)
    if len(rows) != N_VARS or any(len(r) != N_VARS for r in rows):
        raise ValueError("代換矩陣必須為 4x4")
    return rows


def is_invertible(g) -> bool:
    rows = matrix_rows(g)
    return gf2_rank([sum(bit << j for j, bit in enumerate(r)) for r in rows]) == N_VARS


def substitution_matrix(g) -> np.ndarray:
    """x_i -> Σ_j g[i][j] x_j 在三次型係數上的 20x20 矩陣：coeffs(F∘g) = S·coeffs(F)"""
    rows = matrix_rows(g)
    if not is_invertible(rows):
        raise ValueError("代換矩陣在 F_2 上不可逆")
    matrix = np.zeros((N_MONOMIALS, N_MONOMIALS), dtype=np.uint8)
    for col, (a, b, c) in enumerate(MONOMIALS):
        supports = [[j for j in range(N_VARS) if rows[i][j]] for i in (a, b, c)]
        for j1, j2, j3 in product(*supports):
            matrix[MONOMIAL_INDEX[tuple(sorted((j1, j2, j3)))], col] ^= 1
    return matrix


def apply_matrix(matrix: np.ndarray, form: CubicForm) -> CubicForm:
    image = (matrix.astype(np.int64) @ np.array(form.coefficients(), dtype=np.int64)) % 2
    return CubicForm.from_coefficients([int(v) for v in image])


def substitution_tables(matrix: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """把 20 位元的像拆成低 / 高 10 位元兩張查表，供整批 numpy 代換使用"""
    columns = [
        sum(int(matrix[i, m]) << i for i in range(N_MONOMIALS)) for m in range(N_MONOMIALS)
    ]
    low = np.zeros(1024, dtype=np.int64)
    high = np.zeros(1024, dtype=np.int64)
    for v in range(1, 1024):
        lowest = (v & -v).bit_length() - 1
        low[v] = low[v & (v - 1)] ^ columns[lowest]
        high[v] = high[v & (v - 1)] ^ columns[lowest + 10]
    return low, high


def apply_tables(tables: Tuple[np.ndarray, np.ndarray], bits: np.ndarray) -> np.ndarray:
    low, high = tables
    return low[bits & 1023] ^ high[bits >> 10]


# ---- 在 F_{2^k} 上求值 ----


class PointSet:
    """P^3(F_{2^k}) 的全部點（第一個非零座標為 1）與單項式值"""

    def __init__(self, k: int):
        field = get_field(k)
        self.k = k
        self.field = field
        q = field.order
        blocks = []
        for pivot in range(N_VARS):
            free = N_VARS - pivot - 1
            if free:
                grid = np.array(list(product(range(q), repeat=free)), dtype=np.int64)
            else:
                grid = np.zeros((1, 0), dtype=np.int64)
            block = np.zeros((grid.shape[0], N_VARS), dtype=np.int64)
            block[:, pivot] = 1
            block[:, pivot + 1:] = grid
            blocks.append(block)
        self.points = np.concatenate(blocks)
        expected = (q ** 4 - 1) // (q - 1)
        if len(self.points) != expected:
            raise DataIntegrityError(f"P^3(F_{q}) 點數 {len(self.points)} ≠ {expected}")
        x = [self.points[:, v] for v in range(N_VARS)]
        self.quadratic_values = np.stack(
            [field.mul(x[a], x[b]) for a, b in QUADRATICS]
        )
        self.cubic_values = np.stack(
            [field.mul(self.quadratic_values[QUADRATIC_INDEX[(a, b)]], x[c]) for a, b, c in MONOMIALS]
        )

    def __len__(self) -> int:
        return len(self.points)

    @staticmethod
    def _reduce(values: np.ndarray, bits: int, width: int) -> np.ndarray:
        selected = [i for i in range(width) if (bits >> i) & 1]
        if not selected:
            return np.zeros(values.shape[1], dtype=values.dtype)
        return np.bitwise_xor.reduce(values[selected], axis=0)

    def evaluate(self, form: CubicForm) -> np.ndarray:
        return self._reduce(self.cubic_values, form.bits, N_MONOMIALS)

    def evaluate_partial(self, form: CubicForm, v: int) -> np.ndarray:
        return self._reduce(self.quadratic_values, form.partial_bits(v), len(QUADRATICS))


@lru_cache(maxsize=None)
def get_point_set(k: int) -> PointSet:
    return PointSet(k)


def point_count(form: CubicForm, k: int) -> int:
    """P^3(F_{2^k}) 中 F = 0 的點數"""
    if not 1 <= k <= MAX_DEGREE:
        raise ValueError(f"k 必須介於 1 與 {MAX_DEGREE}")
    return int(np.count_nonzero(get_point_set(k).evaluate(form) == 0))


def point_counts(form: CubicForm, max_k: int = 6) -> Tuple[int, ...]:
    return tuple(point_count(form, k) for k in range(1, max_k + 1))


def maximal_degrees(depth: int) -> Tuple[int, ...]:
    """1..depth 中沒有其他倍數落在範圍內的 k（F_{2^k} 的點已涵蓋所有因數次數）"""
    return tuple(k for k in range(1, depth + 1) if 2 * k > depth)


def singular_points(form: CubicForm, k: int) -> np.ndarray:
    """四個偏導數在 P^3(F_{2^k}) 的共同零點"""
    points = get_point_set(k)
    common = np.ones(len(points), dtype=bool)
    for v in range(N_VARS):
        common &= points.evaluate_partial(form, v) == 0
    if common.any():
        # 特徵 2 的 Euler 關係：Σ x_i ∂_i F = 3F = F
        if np.any(points.evaluate(form)[common] != 0):
            raise DataIntegrityError(f"{form} 的偏導數共同零點不在曲面上")
    return points.points[common]


def is_smooth(form: CubicForm, depth: int = 6) -> bool:
    """偏導數在 F_{2^k}（k ≤ depth）上沒有共同射影零點"""
    if not 1 <= depth <= MAX_DEGREE:
        raise ValueError(f"depth 必須介於 1 與 {MAX_DEGREE}")
    return all(len(singular_points(form, k)) == 0 for k in maximal_degrees(depth))


# ---- 有理直線 ----


@lru_cache(maxsize=None)
def rational_lines() -> Tuple[Tuple[Tuple[int, ...], ...], ...]:
    """P^3(F_2) 的 35 條直線，每條以 F_4 上的 5 個點表示"""
    omega = 2
    f4 = get_field(2)
    vectors = [v for v in product((0, 1), repeat=N_VARS) if any(v)]
    seen = set()
    lines = []
    for u, w in combinations(vectors, 2):
        s = tuple(a ^ b for a, b in zip(u, w))
        key = frozenset((u, w, s))
        if key in seen:
            continue
        seen.add(key)
        pts = [u, w, s]
        for scalar in (omega, f4.mul(omega, omega)):
            pts.append(tuple(int(a) ^ int(f4.mul(scalar, b)) for a, b in zip(u, w)))
        lines.append(tuple(pts))
    if len(lines) != 35:
        raise DataIntegrityError(f"P^3(F_2) 直線數 {len(lines)} ≠ 35")
    return tuple(lines)


@lru_cache(maxsize=None)
def _line_monomial_values() -> np.ndarray:
    f4 = get_field(2)
    pts = np.array([p for line in rational_lines() for p in line], dtype=np.int64)
    x = [pts[:, v] for v in range(N_VARS)]
    return np.stack([f4.mul(f4.mul(x[a], x[b]), x[c]) for a, b, c in MONOMIALS])


def count_rational_lines(form: CubicForm) -> int:
    """包含在曲面內的 F_2 直線數（每條檢查其在 F_4 上的 5 個點）"""
    values = PointSet._reduce(_line_monomial_values(), form.bits, N_MONOMIALS)
    on_surface = (values == 0).reshape(35, 5)
    return int(np.count_nonzero(on_surface.all(axis=1)))
